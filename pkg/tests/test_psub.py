import pytest

from PLocalChi.exceptions import InputError, ResourceLimitError
from PLocalChi.groups.catalog import build
from PLocalChi.groups.groupcore import conjugates, p_core, sylow
from PLocalChi.psub import (SubgroupLattice, all_p_subgroups,
                            centric_by_sylow_criterion, chi_poset, classify,
                            enumerate_classes, is_p_radical_direct,
                            subgroup_lattice, sylow_centric_closure)

from conftest import closure_p_subgroups


def test_a4_classes(a4_table):
    assert [(c.order, c.class_size, c.normalizer_order)
            for c in a4_table] == [(2, 3, 4), (4, 1, 12)]
    C2, V4 = a4_table
    assert C2.mu == -1 and V4.mu == 2
    assert C2.is_cyclic and not V4.is_cyclic
    assert C2.centralizer_order == 4
    assert V4.residual.is_trivial()


def test_representative_is_smallest_member(a4_table):
    lattice = a4_table.lattice
    for cls in a4_table:
        members = [tuple(lattice.subgroups[m].indices) for m in cls.members]
        assert tuple(cls.representative.indices) == min(members)


def test_classes_ordered_by_order_then_indices(a5):
    table = enumerate_classes(a5, 2, "all")
    keys = [(c.order, tuple(c.representative.indices)) for c in table]
    assert keys == sorted(keys)
    assert table[0].is_identity


@pytest.mark.parametrize("text, p", [
    ("S3", 2), ("A4", 2), ("S4", 2), ("S4", 3), ("Dih:4", 2), ("Q8", 2),
    ("A5", 2), ("C2cubeByC3", 2), ("SL2:3", 2), ("S3xS3", 3),
])
def test_enumeration_matches_closure_oracle(text, p):
    group = build(text)
    oracle = closure_p_subgroups(group, p)
    found = all_p_subgroups(group, p)
    assert [H.key for H in found] == [H.key for H in oracle]
    table = enumerate_classes(group, p, "all")
    assert sum(c.class_size for c in table) == len(oracle)


def test_lattice_covers_sylow(a5):
    lattice = subgroup_lattice(a5, 2)
    P = lattice.sylow
    assert len(lattice) == 5
    assert all(H.is_subgroup_of(P) for H in lattice.subgroups)
    top = lattice.lattice_id(P)
    assert lattice.below[top] == frozenset(range(5))


def test_subgroup_cap(a5):
    with pytest.raises(ResourceLimitError):
        SubgroupLattice(a5, 2, limit=3)


def test_transporter_counts_agree_with_conjugates(a4_table):
    lattice = a4_table.lattice
    C2, V4 = a4_table
    assert lattice.transporter_count(C2.cid, V4.cid) == 12
    assert lattice.transporter_count(C2.cid, C2.cid) == 4
    assert lattice.transporter_count(V4.cid, V4.cid) == 12
    assert lattice.mu_transporter_count(C2.cid, V4.cid) == 12
    assert lattice.burnside_sum(C2.cid, V4.cid) == 48


def test_flags_a4(a4, a4_table):
    C2, V4 = a4_table
    assert C2.flags.elementary_abelian
    assert not C2.flags.p_selfcentralizing
    assert not C2.flags.p_radical
    assert V4.flags.p_selfcentralizing and V4.flags.p_radical
    assert V4.flags.f_radical
    for cls in a4_table:
        assert cls.flags.p_radical == is_p_radical_direct(
            a4, 2, cls.representative)


def test_classify_preconditions(a4):
    with pytest.raises(InputError):
        classify(a4, 2, a4.trivial)
    with pytest.raises(InputError):
        classify(a4, 2, a4.whole)


@pytest.mark.parametrize("text, p", [("A5", 2), ("S4", 2), ("SL2:3", 2),
                                     ("S3xS3", 3), ("Dih:6", 2)])
def test_centric_flag_matches_sylow_criterion(text, p):
    group = build(text)
    for cls in enumerate_classes(group, p, "nonidentity"):
        assert cls.flags.p_selfcentralizing == centric_by_sylow_criterion(cls)
    for cls in enumerate_classes(group, p, "radical"):
        assert cls.flags.p_radical
        assert is_p_radical_direct(group, p, cls.representative)


def test_sylow_centric_closure(a4):
    lattice = subgroup_lattice(a4, 2)
    C2 = lattice.classes[1].representative
    closure = sylow_centric_closure(lattice, C2)
    assert closure == lattice.sylow


def test_scopes(a4, a5):
    assert len(enumerate_classes(a4, 2, "all")) == 3
    assert len(enumerate_classes(a4, 2, "elementary-abelian")) == 2
    assert len(enumerate_classes(a4, 2, "centric")) == 1
    assert len(enumerate_classes(a4, 2, "radical")) == 1
    assert len(enumerate_classes(a4, 3, "nonidentity")) == 1
    assert len(enumerate_classes(build("C7"), 2, "nonidentity")) == 0
    with pytest.raises(InputError):
        enumerate_classes(a4, 2, "abelian")
    with pytest.raises(InputError):
        enumerate_classes(a4, 4)


@pytest.mark.parametrize("text, p, expected", [
    ("A4", 2, 1),
    ("A5", 2, 5),
    ("A5", 5, 6),
    ("A5", 3, 10),
    ("S3", 2, 3),
    ("SL2:3", 3, 4),
    ("S3xS3", 2, -3),
    ("C7", 2, 0),
])
def test_chi_poset(text, p, expected):
    assert chi_poset(build(text), p) == expected


def test_class_sizes_are_conjugacy_classes(a5):
    for cls in enumerate_classes(a5, 2, "nonidentity"):
        assert len(conjugates(a5, cls.representative)) == cls.class_size
        assert cls.normalizer.order == cls.normalizer_order


def test_sylow_is_a_class(a5):
    table = enumerate_classes(a5, 2, "nonidentity")
    assert table[len(table) - 1].representative == sylow(a5, 2)


def test_dihedral_core_is_radical_but_not_f_radical():
    group = build("Dih:12")
    core = p_core(group, 2)
    assert core.order == 4
    flags = classify(group, 2, core)
    assert flags.cyclic and flags.p_selfcentralizing and flags.p_radical
    assert not flags.f_radical
    table = enumerate_classes(group, 2)
    (cls,) = [c for c in table if c.representative == core]
    assert cls.flags == flags


@pytest.mark.parametrize("text, p", [("S4", 2), ("A5", 2), ("SL2:3", 2),
                                     ("S3xS3", 3), ("Dih:12", 2)])
def test_centric_is_closed_upwards(text, p):
    lattice = subgroup_lattice(build(text), p)
    centric = [not H.is_trivial() and
               lattice.classes[lattice.class_of[h]].flags.p_selfcentralizing
               for h, H in enumerate(lattice.subgroups)]
    for k, below in enumerate(lattice.below):
        if any(centric[h] for h in below):
            assert centric[k]


@pytest.mark.parametrize("text, p", [("S4", 2), ("A5", 2), ("SL2:3", 2),
                                     ("S3xS3", 3), ("Dih:12", 2)])
def test_sylow_centric_closure_is_centric(text, p):
    group = build(text)
    lattice = subgroup_lattice(group, p)
    closures = 0
    for Q in lattice.subgroups[1:]:
        closure = sylow_centric_closure(lattice, Q)
        if closure is None:
            continue
        closures += 1
        assert Q.is_subgroup_of(closure)
        assert classify(group, p, closure).p_selfcentralizing
    assert closures > 0


def test_conjugates_share_flags():
    group = build("S4")
    for cls in enumerate_classes(group, 2):
        for H in conjugates(group, cls.representative):
            assert classify(group, 2, H) == cls.flags


def test_describe(a4_table):
    C2, V4 = a4_table
    assert C2.describe().count("(") == 2
    assert V4.describe().startswith("<") and V4.describe().endswith(">")
