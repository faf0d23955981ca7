"""
Conjugacy classes of p-subgroups.

All subgroups of one fixed Sylow p-subgroup P are enumerated bottom-up,
each subgroup K being H<x> for a maximal subgroup H and an element x of
N_P(H) with x^p in H. Two subgroups of P are fused into one class when
they are G-conjugate; the class representative is the member of P with the
smallest element indices (the smallest conjugate inside P, which need not be
the smallest conjugate in all of G), and classes are ordered by (order,
representative), which extends the subconjugation order.

The class-level morphism counts are read off the lattice: for class
representatives H and K (both inside P),
    |N_G(H, K)| = |N_G(H)| * #{L <= K : L in [H]}.
"""
import dataclasses
import logging
from contextlib import contextmanager
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from tqdm import tqdm

from . import config
from .exceptions import InputError, InvariantError, ResourceLimitError
from .groups.groupcore import (PermGroup, Subgroup, centralizer, centre,
                               conjugates, frattini, normalizer, p_core,
                               p_residual, quotient_group, sylow,
                               transporter)
from .utils import check_prime, elementary_mu, is_p_power, p_log, p_part

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassFlags:
    """Conjugation-invariant properties of a p-subgroup."""

    elementary_abelian: bool
    cyclic: bool
    p_selfcentralizing: bool
    p_radical: bool
    f_radical: bool

    def as_dict(self) -> dict[str, bool]:
        return dataclasses.asdict(self)


def _identity_flags(group: PermGroup, p: int) -> ClassFlags:
    return ClassFlags(elementary_abelian=True,
                      cyclic=True,
                      p_selfcentralizing=group.order % p != 0,
                      p_radical=p_core(group, p).is_trivial(),
                      f_radical=True)


def classify(group: PermGroup, p: int, H: Subgroup) -> ClassFlags:
    """
    Computes the classification flags of a nonidentity p-subgroup.

    Parameters
    ----------
    group : PermGroup
        The ambient group G.
    p : int
        The prime.
    H : Subgroup
        A nonidentity p-subgroup of G.

    Returns
    -------
    ClassFlags
        elementary_abelian: Phi(H) = 1; cyclic: some element has order |H|;
        p_selfcentralizing: |C_G(H)|_p = |Z(H)|; p_radical:
        O_p(N_G(H)/H) = 1; f_radical: O_p(N_G(H)/C_G(H)H) = 1.

    Raises
    ------
    InputError
        If H is the identity, not a p-group, or not a subgroup of G.
    """
    check_prime(p)
    if H.parent is not group:
        raise InputError(f"{H!r} is not a subgroup of {group.name}")
    if H.is_trivial():
        raise InputError("the identity subgroup has no classification")
    if not is_p_power(H.order, p):
        raise InputError(f"subgroup of order {H.order} is not a {p}-group")

    elementary = frattini(H, p).is_trivial()
    cyclic = bool((group.element_orders[H.indices] == H.order).any())
    C = centralizer(group, H)
    selfcentralizing = p_part(C.order, p) == centre(H).order
    N = normalizer(group, H)
    p_radical = p_core(quotient_group(N, H), p).is_trivial()
    CH = group.generate(list(C.generators) + list(H.generators))
    f_radical = p_core(quotient_group(N, CH), p).is_trivial()
    return ClassFlags(elementary, cyclic, selfcentralizing, p_radical,
                      f_radical)


def is_p_radical_direct(group: PermGroup, p: int, H: Subgroup) -> bool:
    """p-radical test without quotients: O_p(N_G(H)) = H."""
    return p_core(group, p, within=normalizer(group, H)) == H


def _fuse(group: PermGroup, K: Subgroup,
          P: Subgroup) -> tuple[list[bytes], int]:
    """
    The keys of the G-conjugates of K lying in P, and |N_G(K)|.

    Every g in the transporter N_G(K, P) gives the member K^g; each member
    is reached by a coset of N_G(K).
    """
    witnesses = transporter(group, K, P)
    images = np.stack([group.conjugate_by_each(int(k), witnesses)
                       for k in K.indices])
    members = np.unique(np.sort(images, axis=0).T, axis=0)
    keys = [np.ascontiguousarray(row).tobytes() for row in members]
    return keys, len(witnesses) // len(keys)


class SubgroupClass:
    """
    A G-conjugacy class of p-subgroups.

    Attributes
    ----------
    cid : int
        Position of the class in its lattice.
    representative : Subgroup
        The member inside the fixed Sylow subgroup with the smallest
        indices. Conjugates outside that Sylow subgroup are not considered,
        so this is not always the smallest conjugate in G.
    members : tuple[int, ...]
        Lattice ids of the members inside the Sylow subgroup.
    class_size : int
        Number of G-conjugates, |G| / |N_G(H)|.
    normalizer_order : int
        |N_G(H)|.
    """

    def __init__(self, lattice: "SubgroupLattice", cid: int,
                 lattice_id: int, members: list[int],
                 normalizer_order: int) -> None:
        self.lattice = lattice
        self.group = lattice.group
        self.prime = lattice.prime
        self.cid = cid
        self.lattice_id = lattice_id
        self.members = tuple(members)
        self.representative = lattice.subgroups[lattice_id]
        self.order = self.representative.order
        self.normalizer_order = normalizer_order
        self.class_size = self.group.order // normalizer_order
        # derived quantities owned by later stages (quotient posets etc.)
        self.cache: dict = {}

    def __repr__(self) -> str:
        return (f"SubgroupClass(order={self.order}, "
                f"size={self.class_size})")

    def describe(self) -> str:
        """The representative by its generators in cycle notation."""
        gens = self.representative.generators
        if not gens:
            return "1"
        return "<" + ", ".join(str(self.group.permutation(g))
                               for g in gens) + ">"

    @property
    def is_identity(self) -> bool:
        return self.order == 1

    @cached_property
    def normalizer(self) -> Subgroup:
        N = normalizer(self.group, self.representative)
        if N.order != self.normalizer_order:
            raise InvariantError(
                f"normalizer of order {N.order} disagrees with the "
                f"class fusion count {self.normalizer_order}")
        return N

    @cached_property
    def centralizer(self) -> Subgroup:
        return centralizer(self.group, self.representative)

    @property
    def centralizer_order(self) -> int:
        return self.centralizer.order

    @cached_property
    def residual(self) -> Subgroup:
        """O^p C_G(H)."""
        return p_residual(self.centralizer, self.prime)

    @cached_property
    def frattini(self) -> Subgroup:
        return frattini(self.representative, self.prime)

    @cached_property
    def is_elementary_abelian(self) -> bool:
        return self.frattini.is_trivial()

    @cached_property
    def is_cyclic(self) -> bool:
        orders = self.group.element_orders[self.representative.indices]
        return bool((orders == self.order).any())

    @cached_property
    def centre_order(self) -> int:
        return centre(self.representative).order

    @property
    def rank(self) -> int:
        return p_log(self.order, self.prime)

    @property
    def mu(self) -> int:
        """mu(1, H)."""
        return elementary_mu(self.rank, self.prime) \
            if self.is_elementary_abelian else 0

    @cached_property
    def flags(self) -> ClassFlags:
        if self.is_identity:
            return _identity_flags(self.group, self.prime)
        return classify(self.group, self.prime, self.representative)

    def in_scope(self, scope: str) -> bool:
        if scope == "all":
            return True
        if self.is_identity:
            return False
        if scope == "nonidentity":
            return True
        if scope == "elementary-abelian":
            return self.is_elementary_abelian
        if scope == "centric":
            return self.flags.p_selfcentralizing
        if scope == "radical":
            return self.flags.p_radical
        raise InputError(f"unknown scope {scope!r}; expected one of "
                         f"{config.SCOPES}")


class SubgroupLattice:
    """
    Every subgroup of a fixed Sylow p-subgroup, with its maximal subgroups,
    its down-set and its G-class.

    Parameters
    ----------
    group : PermGroup
        The ambient group.
    p : int
        The prime.
    elementary_only : bool
        Restrict to the elementary abelian subgroups.
    limit : int | None
        Subgroup cap, defaults to config.MAX_SUBGROUPS.
    """

    def __init__(self, group: PermGroup, p: int,
                 elementary_only: bool = False,
                 limit: int | None = None) -> None:
        check_prime(p)
        self.group = group
        self.prime = p
        self.elementary_only = elementary_only
        self.limit = config.MAX_SUBGROUPS if limit is None else limit
        self.sylow = sylow(group, p)
        self.subgroups: list[Subgroup] = [group.trivial]
        self.index: dict[bytes, int] = {group.trivial.key: 0}
        self.maximal: list[list[int]] = [[]]
        self._grow()
        self.below = self._down_sets()
        self.below_array = [np.fromiter(sorted(b), dtype=np.int64)
                            for b in self.below]
        self.class_of = np.full(len(self.subgroups), -1, dtype=np.int64)
        self.classes: list[SubgroupClass] = []
        self._fuse_classes()
        self._sylow_centralizers: dict[int, np.ndarray] = {}
        logger.info(f"{group.name}, p={p}: {len(self.subgroups)} subgroups "
                    f"of the Sylow subgroup in {len(self.classes)} classes")

    def _extensions(self, H: Subgroup) -> np.ndarray:
        G, P = self.group, self.sylow
        if self.elementary_only:
            C = centralizer(G, H, within=P).indices
            return C[(G.element_orders[C] == self.prime) & ~H.mask[C]]
        N = normalizer(G, H, within=P).indices
        outside = N[~H.mask[N]]
        return outside[H.mask[G.power(outside, self.prime)]]

    def _grow(self) -> None:
        level = [0]
        while level:
            fresh = []
            for h in tqdm(level, leave=False, disable=not config.SHOW_PROGRESS,
                          desc="subgroups"):
                H = self.subgroups[h]
                covered = H.mask.copy()
                for x in self._extensions(H):
                    if covered[x]:
                        continue
                    K = self.group.generate(list(H.generators) + [int(x)])
                    covered[K.indices] = True
                    k = self.index.get(K.key)
                    if k is None:
                        k = len(self.subgroups)
                        self.subgroups.append(K)
                        self.index[K.key] = k
                        self.maximal.append([])
                        fresh.append(k)
                        if len(self.subgroups) > self.limit:
                            raise ResourceLimitError(
                                f"more than {self.limit} subgroups in the "
                                f"Sylow {self.prime}-subgroup",
                                limit=self.limit,
                                reached=len(self.subgroups))
                    self.maximal[k].append(h)
            level = fresh

    def _down_sets(self) -> list[frozenset[int]]:
        below = []
        for k, maximal in enumerate(self.maximal):
            down = {k}
            for h in maximal:
                down |= below[h]
            below.append(frozenset(down))
        return below

    def _fuse_classes(self) -> None:
        order = sorted(range(len(self.subgroups)),
                       key=lambda i: (self.subgroups[i].order,
                                      tuple(self.subgroups[i].indices)))
        for i in tqdm(order, leave=False, disable=not config.SHOW_PROGRESS,
                      desc="classes"):
            if self.class_of[i] >= 0:
                continue
            keys, normalizer_order = _fuse(self.group, self.subgroups[i],
                                           self.sylow)
            try:
                members = sorted(self.index[key] for key in keys)
            except KeyError as e:
                raise InvariantError("a conjugate inside the Sylow subgroup "
                                     "is missing from the lattice") from e
            cid = len(self.classes)
            self.class_of[members] = cid
            self.classes.append(SubgroupClass(self, cid, i, members,
                                              normalizer_order))

    def __len__(self) -> int:
        return len(self.subgroups)

    def lattice_id(self, H: Subgroup) -> int:
        try:
            return self.index[H.key]
        except KeyError as e:
            raise InputError("subgroup is not contained in the fixed Sylow "
                             "subgroup") from e

    def sylow_centralizer(self, lattice_id: int) -> np.ndarray:
        """Element indices of C_P(L) for the lattice subgroup L."""
        if lattice_id not in self._sylow_centralizers:
            self._sylow_centralizers[lattice_id] = centralizer(
                self.group, self.subgroups[lattice_id],
                within=self.sylow).indices
        return self._sylow_centralizers[lattice_id]

    def members_below(self, h: int, k: int) -> np.ndarray:
        """Lattice ids of the members of class h inside the representative
        of class k."""
        below = self.below_array[self.classes[k].lattice_id]
        return below[self.class_of[below] == h]

    def transporter_count(self, h: int, k: int) -> int:
        """|N_G(H, K)| for the representatives of classes h and k."""
        return self.classes[h].normalizer_order * \
            len(self.members_below(h, k))

    def mu_transporter_count(self, h: int, k: int) -> int:
        """|{g : Phi(K) <= H^g <= K}| for the representatives H, K."""
        K = self.classes[k]
        phi = self.index[K.frattini.key]
        count = sum(1 for L in self.members_below(h, k)
                    if phi in self.below[L])
        return self.classes[h].normalizer_order * count

    def burnside_sum(self, h: int, k: int) -> int:
        """Sum of |C_K(H^n)| over n in N_G(H, K)."""
        K = self.classes[k].representative
        total = sum(int(np.count_nonzero(K.mask[self.sylow_centralizer(L)]))
                    for L in self.members_below(h, k))
        return self.classes[h].normalizer_order * total


@lru_cache(maxsize=8)
def subgroup_lattice(group: PermGroup, p: int) -> SubgroupLattice:
    """The cached full lattice of a group at a prime."""
    return SubgroupLattice(group, p)


@contextmanager
def subgroup_cap(limit: int):
    """
    Lowers config.MAX_SUBGROUPS for the lattices built inside the block.
    Lattices already cached keep the cap they were built under.
    """
    previous = config.MAX_SUBGROUPS
    config.MAX_SUBGROUPS = limit
    try:
        yield limit
    finally:
        config.MAX_SUBGROUPS = previous


@dataclass
class SubgroupClassTable:
    """
    Ordered conjugacy classes of p-subgroups in one scope.

    Attributes
    ----------
    group : PermGroup
        The ambient group.
    prime : int
        The prime p.
    scope : str
        One of config.SCOPES.
    classes : list[SubgroupClass]
        The classes in scope, in lattice order.
    lattice : SubgroupLattice
        The lattice the classes come from.
    """

    group: PermGroup
    prime: int
    scope: str
    classes: list[SubgroupClass]
    lattice: SubgroupLattice

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, position: int) -> SubgroupClass:
        return self.classes[position]

    @property
    def cids(self) -> list[int]:
        return [c.cid for c in self.classes]

    def restrict(self, scope: str) -> "SubgroupClassTable":
        """The table of the same lattice in another scope."""
        return enumerate_classes(self.group, self.prime, scope)


def enumerate_classes(group: PermGroup, p: int,
                      scope: str = "nonidentity") -> SubgroupClassTable:
    """
    Conjugacy classes of p-subgroups in a scope.

    Parameters
    ----------
    group : PermGroup
        The group G.
    p : int
        The prime.
    scope : str
        all, nonidentity, centric, elementary-abelian or radical.

    Returns
    -------
    SubgroupClassTable
        Classes ordered by (order, representative).

    Raises
    ------
    InputError
        On an unknown scope or a non-prime p.
    ResourceLimitError
        If the Sylow subgroup has more than config.MAX_SUBGROUPS subgroups.
    """
    check_prime(p)
    if scope not in config.SCOPES:
        raise InputError(f"unknown scope {scope!r}; expected one of "
                         f"{config.SCOPES}")
    lattice = subgroup_lattice(group, p)
    classes = [c for c in lattice.classes if c.in_scope(scope)]
    logger.info(f"{group.name}, p={p}, scope {scope}: {len(classes)} "
                f"classes")
    return SubgroupClassTable(group, p, scope, classes, lattice)


def all_p_subgroups(group: PermGroup, p: int) -> list[Subgroup]:
    """
    Every p-subgroup of a small group, identity included, ordered by
    (order, element indices).

    Raises
    ------
    ResourceLimitError
        If |G| exceeds config.ORACLE_MAX_ORDER.
    """
    if group.order > config.ORACLE_MAX_ORDER:
        raise ResourceLimitError(f"{group.name} has order {group.order}, "
                                 f"above the oracle cap "
                                 f"{config.ORACLE_MAX_ORDER}",
                                 limit=config.ORACLE_MAX_ORDER,
                                 reached=group.order)
    lattice = subgroup_lattice(group, p)
    subgroups = []
    for cls in lattice.classes:
        subgroups += conjugates(group, cls.representative)
    subgroups.sort(key=lambda H: (H.order, tuple(H.indices)))
    return subgroups


@lru_cache(maxsize=256)
def elementary_lattice(group: PermGroup, p: int) -> SubgroupLattice:
    return SubgroupLattice(group, p, elementary_only=True)


def chi_poset(group: PermGroup, p: int) -> int:
    """
    Euler characteristic of the poset of nonidentity p-subgroups, as the
    sum of -mu(K) over its elementary abelian members K.
    """
    check_prime(p)
    if group.order % p:
        return 0
    lattice = elementary_lattice(group, p)
    return -sum(c.mu * c.class_size for c in lattice.classes
                if not c.is_identity)


def centric_by_sylow_criterion(cls: SubgroupClass) -> bool:
    """Selfcentralizing test through the Sylow subgroup: C_P(L) <= L for
    every conjugate L of H inside P."""
    lattice = cls.lattice
    return all(lattice.subgroups[L].mask[lattice.sylow_centralizer(L)].all()
               for L in cls.members)


def sylow_centric_closure(lattice: SubgroupLattice,
                          Q: Subgroup) -> Subgroup | None:
    """Q C_P(Q) when C_P(Q) is a Sylow subgroup of C_G(Q), else None."""
    G, p = lattice.group, lattice.prime
    C_P = Subgroup(G, lattice.sylow_centralizer(lattice.lattice_id(Q)))
    if C_P.order != p_part(centralizer(G, Q).order, p):
        return None
    return G.generate(list(Q.generators) + list(C_P.generators))
