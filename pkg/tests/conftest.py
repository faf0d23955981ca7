"""
Shared fixtures: small catalog groups, their class tables, and an
exhaustive enumeration of p-subgroups used as an oracle.
"""
import numpy as np
import pytest

from PLocalChi import config
from PLocalChi.groups.catalog import build
from PLocalChi.groups.groupcore import PermGroup, Subgroup
from PLocalChi.psub import enumerate_classes
from PLocalChi.utils import is_p_power


@pytest.fixture(autouse=True)
def no_progress_bars():
    config.SHOW_PROGRESS = False
    yield


@pytest.fixture(scope="session")
def s3() -> PermGroup:
    return build("S3")


@pytest.fixture(scope="session")
def a4() -> PermGroup:
    return build("A4")


@pytest.fixture(scope="session")
def a5() -> PermGroup:
    return build("A5")


@pytest.fixture(scope="session")
def c2cube() -> PermGroup:
    return build("C2cubeByC3")


@pytest.fixture
def a4_table(a4):
    return enumerate_classes(a4, 2, "nonidentity")


@pytest.fixture
def s3_table(s3):
    return enumerate_classes(s3, 2, "nonidentity")


def closure_p_subgroups(group: PermGroup, p: int) -> list[Subgroup]:
    """
    Every p-subgroup, found by adjoining p-elements one at a time and
    closing under multiplication; independent of the Sylow lattice.
    """
    p_elements = np.flatnonzero(group.p_element_mask(p))
    found = {group.trivial.key: group.trivial}
    queue = [group.trivial]
    while queue:
        H = queue.pop()
        for x in p_elements:
            if H.mask[x]:
                continue
            K = group.generate(list(H.generators) + [int(x)])
            if is_p_power(K.order, p) and K.key not in found:
                found[K.key] = K
                queue.append(K)
    return sorted(found.values(), key=lambda H: (H.order, tuple(H.indices)))
