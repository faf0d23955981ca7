"""
Euler characteristics of the p-subgroup categories.

The class zeta-matrix of every kind is derived from the class transporter
counts T([H],[K]) = |N_G(H, K)| of fixed representatives:

    S = T / |G|            L = T / |O^p C_G(H)|      F = T / |C_G(H)|
    O = T / |K|            Ftilde = (sum of |C_K(H^n)| over n in N_G(H, K))
                                    / (|C_G(H)| |K|)

A class weighting solves zeta k = 1 with k^[b] = |[b]| k^b, so the class
values add up to the Euler characteristic. Each characteristic is also
evaluated by a closed formula and, where one exists, by a local weighting
built from the quotients N_G(H)/H; `chi_report` runs all routes and fails
on any disagreement.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import config
from .exceptions import InputError, InvariantError, ResourceLimitError
from .groups.groupcore import (PermGroup, Subgroup, centralizer, conjugates,
                               conjugation_orbits, element_classes,
                               intersection, is_normal, normalizer,
                               p_residual, quotient_group, sylow, transporter)
from .moebius import (class_mobius, class_transporter_matrix, solve_row,
                      solve_upper, zeros)
from .psub import (SubgroupClass, SubgroupClassTable, chi_poset,
                   elementary_lattice, enumerate_classes, subgroup_lattice)
from .utils import check_prime, format_rational, p_part

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CategoryKind:
    """A category of p-subgroups: its kind and the scope of its objects."""

    kind: str
    scope: str = "nonidentity"

    def __post_init__(self) -> None:
        if self.kind not in config.KINDS:
            raise InputError(f"unknown kind {self.kind!r}; expected one of "
                             f"{config.KINDS}")
        if self.scope not in config.SCOPES:
            raise InputError(f"unknown scope {self.scope!r}; expected one "
                             f"of {config.SCOPES}")


@dataclass
class ZetaMatrix:
    table: SubgroupClassTable
    kind: CategoryKind
    entries: np.ndarray

    def __len__(self) -> int:
        return len(self.table)


@dataclass
class WeightVector:
    """
    Class-level weighting or coweighting values, aligned with the classes
    of a table.
    """

    side: str
    table: SubgroupClassTable
    values: list[Fraction]

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def support(self) -> list[SubgroupClass]:
        return [c for c, v in zip(self.table.classes, self.values) if v != 0]

    def element_values(self) -> list[Fraction]:
        """The value k^H on each single subgroup of the class."""
        return [v / c.class_size
                for c, v in zip(self.table.classes, self.values)]

    def by_class(self) -> dict[int, Fraction]:
        return {c.cid: v for c, v in zip(self.table.classes, self.values)}


def _exact(numerator: int | Fraction, denominator: int,
           what: str) -> Fraction:
    value = Fraction(numerator, denominator)
    if value.denominator != 1:
        raise InvariantError(f"{what}: {numerator} is not divisible by "
                             f"{denominator}")
    return value


def morphism_count(kind: str, H: Subgroup, K: Subgroup, p: int) -> Fraction:
    """
    Number of morphisms H -> K in the category of the given kind, computed
    from the element-level transporter.

    Raises
    ------
    InvariantError
        If one of the defining quotients is not an integer.
    """
    CategoryKind(kind)
    check_prime(p)
    G = H.parent
    if kind == "S":
        return Fraction(int(H.is_subgroup_of(K)))
    witnesses = transporter(G, H, K)
    count = len(witnesses)
    if kind == "T":
        return Fraction(count)
    C = centralizer(G, H)
    if kind == "L":
        return _exact(count, p_residual(C, p).order, "linking morphisms")
    if kind == "F":
        return _exact(count, C.order, "Frobenius morphisms")
    if kind == "O":
        return _exact(count, K.order, "orbit morphisms")
    burnside = 0
    for n in witnesses:
        image = Subgroup(G, G.conjugate(H.indices, int(n)))
        burnside += centralizer(G, image, within=K).order
    return _exact(burnside, C.order * K.order, "exterior quotient morphisms")


def zeta_matrix(table: SubgroupClassTable, kind: str) -> ZetaMatrix:
    """
    Class zeta-matrix of a kind on the classes of a table.

    Raises
    ------
    InputError
        If the table is empty or the kind unknown.
    InvariantError
        If a morphism count is not an integer.
    """
    category = CategoryKind(kind, table.scope)
    if not len(table):
        raise InputError(f"no classes in scope {table.scope}")
    transport = class_transporter_matrix(table)
    lattice, classes = table.lattice, table.classes
    n = len(classes)
    entries = zeros(n)
    for i, H in enumerate(classes):
        for j in range(i, n):
            K, count = classes[j], transport[i, j]
            if count == 0:
                continue
            if kind == "S":
                entries[i, j] = count / table.group.order
            elif kind == "T":
                entries[i, j] = count
            elif kind == "L":
                entries[i, j] = _exact(count, H.residual.order, "L")
            elif kind == "F":
                entries[i, j] = _exact(count, H.centralizer_order, "F")
            elif kind == "O":
                entries[i, j] = _exact(count, K.order, "O")
            else:
                entries[i, j] = _exact(lattice.burnside_sum(H.cid, K.cid),
                                       H.centralizer_order * K.order,
                                       "Ftilde")
    return ZetaMatrix(table, category, entries)


def solve_weighting(zm: ZetaMatrix) -> WeightVector:
    return WeightVector("weighting", zm.table, solve_upper(zm.entries))


def solve_coweighting(zm: ZetaMatrix) -> WeightVector:
    return WeightVector("coweighting", zm.table, solve_row(zm.entries))


def chi(table: SubgroupClassTable, kind: str) -> Fraction:
    """
    Euler characteristic by the matrix route: the sum of the weighting,
    checked against the sum of the coweighting.
    """
    if not len(table):
        return Fraction(0)
    zm = zeta_matrix(table, kind)
    weighting = solve_weighting(zm).total()
    coweighting = solve_coweighting(zm).total()
    if weighting != coweighting:
        raise InvariantError(f"weighting and coweighting of {kind} disagree",
                             {f"{kind}:weighting-coweighting":
                              weighting - coweighting})
    return weighting


def centric_p_prime_part(cls: SubgroupClass) -> int:
    """
    |C_G(K)|_p' of a selfcentralizing class, as |C_G(K)| / |Z(K)|.

    Raises
    ------
    InvariantError
        If |C_G(K)|_p differs from |Z(K)|.
    """
    if p_part(cls.centralizer_order, cls.prime) != cls.centre_order:
        raise InvariantError(f"{cls!r}: |C_G(K)|_p is not |Z(K)|")
    return cls.centralizer_order // cls.centre_order


def _nonidentity_closed(table: SubgroupClassTable, kind: str) -> Fraction:
    lattice = table.lattice
    elementary = [c for c in lattice.classes
                  if not c.is_identity and c.is_elementary_abelian]
    if kind == "S":
        return Fraction(-sum(c.mu * c.class_size for c in elementary))
    if kind == "T":
        return sum((Fraction(-c.mu, c.normalizer_order) for c in elementary),
                   Fraction(0))
    if kind == "L":
        return sum((Fraction(-c.mu * c.residual.order, c.normalizer_order)
                    for c in elementary), Fraction(0))
    if kind in ("F", "Ftilde"):
        return sum((Fraction(-c.mu * c.centralizer_order,
                             c.normalizer_order) for c in elementary),
                   Fraction(0))
    nonidentity = enumerate_classes(table.group, table.prime, "nonidentity")
    return _orbit_sum(nonidentity, class_mobius(nonidentity))


def _orbit_sum(table: SubgroupClassTable, mobius: np.ndarray) -> Fraction:
    n = len(table)
    return sum((table[i].order * mobius[i, j]
                for i in range(n) for j in range(i, n)), Fraction(0))


def _centric_closed(table: SubgroupClassTable, kind: str) -> Fraction:
    mobius = class_mobius(table)
    classes = table.classes
    n = len(classes)
    total = Fraction(0)
    for i in range(n):
        for j in range(i, n):
            value = mobius[i, j]
            if value == 0:
                continue
            K = classes[j]
            if kind in ("L", "Ftilde"):
                value *= centric_p_prime_part(K)
            elif kind == "F":
                value *= K.centralizer_order
            if kind in ("O", "Ftilde"):
                value *= classes[i].order
            total += value
    if kind == "S":
        total *= table.group.order
    return total


def chi_closed(table: SubgroupClassTable, kind: str) -> Fraction | None:
    """
    Euler characteristic by the closed formulas.

    Nonidentity scope: -mu(K) summed with the weights 1 (S), 1/|N_G(K)| (T),
    |O^p C_G(K)|/|N_G(K)| (L), |C_G(K)|/|N_G(K)| (F and Ftilde) over the
    classes, and the sum of |H| [mu]([H],[K]) (O). The elementary-abelian
    scope shares the S, T, L, F, Ftilde values, the radical scope the S, T,
    O values. Centric scope: the class Moebius sums with the weights
    |C_G(K)|_p', |C_G(K)|, |H|. Scope all: the full-category values.

    Returns
    -------
    Fraction | None
        None where no closed formula applies (L, F, Ftilde on the radical
        scope).
    """
    CategoryKind(kind, table.scope)
    scope = table.scope
    if scope == "all":
        return chi_full_category(table.group, table.prime, kind)
    if not len(table):
        return Fraction(0)
    if scope == "centric":
        return _centric_closed(table, kind)
    if scope == "elementary-abelian" and kind == "O":
        return _orbit_sum(table, class_mobius(table))
    if scope == "radical" and kind not in ("S", "T", "O"):
        return None
    return _nonidentity_closed(table, kind)


def chi_orbit_cyclic(table: SubgroupClassTable) -> Fraction:
    """chi(T*) plus (p-1)/p times the sum of 1/|N_G(C)/C| over the
    nonidentity cyclic classes."""
    if table.scope != "nonidentity":
        raise InputError("the cyclic-sum formula needs the nonidentity scope")
    p = table.prime
    cyclic = sum((Fraction(c.order, c.normalizer_order)
                  for c in table if c.is_cyclic), Fraction(0))
    return chi(table, "T") + Fraction(p - 1, p) * cyclic


def chi_full_category(group: PermGroup, p: int, kind: str) -> Fraction:
    """Euler characteristic of the category of all p-subgroups, identity
    included."""
    CategoryKind(kind, "all")
    if kind in ("S", "F", "Ftilde"):
        return Fraction(1)
    if kind == "T":
        return Fraction(1, group.order)
    if kind == "L":
        return Fraction(p_residual(group.whole, p).order, group.order)
    lattice = subgroup_lattice(group, p)
    cyclic = sum((Fraction(c.order, c.normalizer_order)
                  for c in lattice.classes
                  if not c.is_identity and c.is_cyclic), Fraction(0))
    return Fraction(1, group.order) + Fraction(p - 1, p) * cyclic


def chi_F_via_centralizers(group: PermGroup, p: int) -> Fraction:
    """|G|^-1 times the sum over x in G of chi(S*) of C_G(x)."""
    check_prime(p)
    total = 0
    for x, size in element_classes(group):
        if x == 0:
            C = group
        else:
            C = centralizer(group, group.generate([x])).to_group()
        total += size * chi_poset(C, p)
    return Fraction(total, group.order)


def chi_F_normal_sylow(group: PermGroup,
                       p: int) -> tuple[Fraction, dict[Subgroup, Fraction]]:
    """
    chi(F*) for a normal Sylow subgroup P, with the weighting
    k^H = |{x : C_P(x) = H}| / |G| on the nonidentity subgroups H.

    Raises
    ------
    InputError
        If the Sylow subgroup is not normal.
    """
    P = sylow(group, p)
    if not is_normal(group.whole, P):
        raise InputError(f"the Sylow {p}-subgroup of {group.name} is not "
                         f"normal")
    everything = np.arange(group.order)
    fixed = np.stack([group.conjugate_by_each(int(y), everything) == y
                      for y in P.indices])
    patterns, counts = np.unique(fixed.T, axis=0, return_counts=True)
    weights = {}
    for pattern, count in zip(patterns, counts):
        H = Subgroup(group, P.indices[pattern])
        if H.order > 1:
            weights[H] = Fraction(int(count), group.order)
    return sum(weights.values(), Fraction(0)), weights


def chi_F_abelian_sylow(group: PermGroup, p: int) -> Fraction:
    """
    The share of automorphisms in F_G(P) = N_G(P)/C_G(P) fixing a
    nonidentity element of the abelian Sylow subgroup P.

    Raises
    ------
    InputError
        If the Sylow subgroup is not abelian.
    """
    P = sylow(group, p)
    if P.is_trivial():
        return Fraction(0)
    gens = np.asarray(P.generators, dtype=np.int64)
    if not group.commutes(gens[:, None], gens[None, :]).all():
        raise InputError(f"the Sylow {p}-subgroup of {group.name} is not "
                         f"abelian")
    N = normalizer(group, P)
    fixing = np.zeros(N.order, dtype=bool)
    for y in P.indices[1:]:
        fixing |= group.conjugate_by_each(int(y), N.indices) == y
    return Fraction(int(fixing.sum()), N.order)


def chi_sylow_restricted_F(group: PermGroup, p: int) -> Fraction:
    """Sum over the nonidentity K <= P of -mu(K) |C_G(K)| / |N_G(K, P)|."""
    lattice = subgroup_lattice(group, p)
    P = lattice.sylow
    total = Fraction(0)
    for k, K in enumerate(lattice.subgroups):
        cls = lattice.classes[lattice.class_of[k]]
        if K.is_trivial() or not cls.is_elementary_abelian:
            continue
        witnesses = len(transporter(group, K, P))
        total += Fraction(-cls.mu * centralizer(group, K).order, witnesses)
    return total


def normalizer_quotient(cls: SubgroupClass):
    """N_G(H)/H, cached on the class."""
    if "quotient" not in cls.cache:
        cls.cache["quotient"] = quotient_group(cls.normalizer,
                                               cls.representative)
    return cls.cache["quotient"]


def poset_defect(cls: SubgroupClass) -> int:
    """1 - chi(S*) of N_G(H)/H."""
    if "defect" not in cls.cache:
        if cls.is_identity:
            value = 1 - chi_poset(cls.group, cls.prime)
        else:
            value = 1 - chi_poset(normalizer_quotient(cls), cls.prime)
        cls.cache["defect"] = value
    return cls.cache["defect"]


def centralizer_defect_sum(cls: SubgroupClass) -> int:
    """Sum over x in C_G(H) of 1 - chi(S*) of C_{N_G(H)}(x)/H."""
    if "centralizer_defects" not in cls.cache:
        G, p, H = cls.group, cls.prime, cls.representative
        N = cls.normalizer
        total = 0
        for x, size in conjugation_orbits(G, cls.centralizer.indices,
                                          N.generators):
            local = centralizer(G, G.generate([x]), within=N)
            total += size * (1 - chi_poset(quotient_group(local, H), p))
        cls.cache["centralizer_defects"] = total
    return cls.cache["centralizer_defects"]


def _quotient_elementary_sum(cls: SubgroupClass, weight) -> int:
    """Sum of mu(H, K) weight(K) over H <= K <= N_G(H) with K/H elementary
    abelian."""
    Q = normalizer_quotient(cls)
    total = 0
    for section in elementary_lattice(Q, cls.prime).classes:
        K = Q.pull(section.representative)
        total += section.mu * section.class_size * weight(K)
    return total


def _local_value(cls: SubgroupClass, kind: str) -> Fraction:
    G, p = cls.group, cls.prime
    N = cls.normalizer_order
    if kind == "S":
        return Fraction(cls.class_size * poset_defect(cls))
    if kind == "T":
        return Fraction(poset_defect(cls), N)
    if kind == "O":
        return Fraction(cls.order * poset_defect(cls), N)
    if kind == "F":
        return Fraction(_quotient_elementary_sum(
            cls, lambda K: centralizer(G, K).order), N)
    if kind == "L":
        return Fraction(_quotient_elementary_sum(
            cls, lambda K: p_residual(centralizer(G, K), p).order), N)

    def p_prime_centralizer(K: Subgroup) -> int:
        C = centralizer(G, K).order
        Z = centralizer(G, K, within=K).order
        if p_part(C, p) != Z:
            raise InvariantError("overgroup of a selfcentralizing subgroup "
                                 "is not selfcentralizing")
        return C // Z
    return Fraction(cls.order * _quotient_elementary_sum(
        cls, p_prime_centralizer), N)


def local_weighting(table: SubgroupClassTable,
                    kind: str) -> WeightVector | None:
    """
    The weighting built from local data at each class H:
      S, T, O   1 - chi(S*) of N_G(H)/H, times |[H]|, 1/|N_G(H)|,
                |H|/|N_G(H)|
      F         |N_G(H)|^-1 sum of mu(H, K) |C_G(K)| over H <= K <= N_G(H)
      L         |N_G(H)|^-1 sum of mu(H, K) |O^p C_G(K)| over
                H <= K <= N_G(H)
      Ftilde    (centric) |H| |N_G(H)|^-1 sum of mu(H, K) |C_G(K)|_p'
    The centric and radical weightings of S, T, L, F, O are restrictions of
    the nonidentity ones.

    Returns
    -------
    WeightVector | None
        None where no local weighting is available for the kind and scope.
    """
    CategoryKind(kind, table.scope)
    scope = table.scope
    available = {
        "nonidentity": ("S", "T", "L", "F", "O"),
        "centric": ("S", "T", "L", "F", "O", "Ftilde"),
        "radical": ("S", "T", "O"),
    }
    if kind not in available.get(scope, ()):
        return None
    values = [_local_value(c, kind) for c in table]
    return WeightVector("weighting", table, values)


def centralizer_sum_work(table: SubgroupClassTable) -> int:
    """Number of centralizer elements the element-sum F weighting visits,
    before the reduction to orbits."""
    return sum(c.centralizer_order for c in table)


def frobenius_centralizer_weighting(
        table: SubgroupClassTable) -> WeightVector:
    """
    The F weighting in its element-sum form: at each class H,
    |N_G(H)|^-1 times the sum over x in C_G(H) of 1 - chi(S*) of
    C_{N_G(H)}(x)/H. It builds one quotient lattice per orbit of
    centralizer elements, so it serves as a cross-check on small tables.

    Raises
    ------
    InputError
        Outside the nonidentity and centric scopes.
    """
    if table.scope not in ("nonidentity", "centric"):
        raise InputError("the element-sum F weighting needs the nonidentity "
                         "or centric scope")
    values = [Fraction(centralizer_defect_sum(c), c.normalizer_order)
              for c in table]
    return WeightVector("weighting", table, values)


def ftilde_centric_poset_form(table: SubgroupClassTable) -> WeightVector:
    """
    Centric Ftilde weighting in its poset form, with the residual
    subgroups taken in G: |H| |N_G(H)|^-1 times the sum of
    mu(H, K) |O^p C_G(K) meet O^p C_G(H)| over H <= K <= N_G(H).
    """
    if table.scope != "centric":
        raise InputError("the poset form is defined on the centric scope")
    G, p = table.group, table.prime
    values = []
    for cls in table:
        residual = cls.residual
        total = _quotient_elementary_sum(
            cls, lambda K: intersection(
                p_residual(centralizer(G, K), p), residual).order)
        values.append(Fraction(cls.order * total, cls.normalizer_order))
    return WeightVector("weighting", table, values)


def element_zeta_matrix(group: PermGroup, p: int, kind: str,
                        scope: str = "nonidentity"
                        ) -> tuple[list[Subgroup], list[int], np.ndarray]:
    """
    Zeta-matrix with one row per subgroup (small groups only). Only the
    poset matrix is triangular: conjugate subgroups of one order have
    morphisms both ways in the other kinds.

    Returns
    -------
    tuple
        The subgroups ordered by (order, indices), the table position of
        the class of each subgroup, and the matrix.
    """
    if group.order > config.ORACLE_MAX_ORDER:
        raise ResourceLimitError(f"{group.name} has order {group.order}, "
                                 f"above the oracle cap "
                                 f"{config.ORACLE_MAX_ORDER}",
                                 limit=config.ORACLE_MAX_ORDER,
                                 reached=group.order)
    table = enumerate_classes(group, p, scope)
    rows = []
    for position, cls in enumerate(table):
        rows += [(H, position) for H in conjugates(group,
                                                   cls.representative)]
    rows.sort(key=lambda item: (item[0].order, tuple(item[0].indices)))
    subgroups = [H for H, _ in rows]
    positions = [position for _, position in rows]
    n = len(subgroups)
    matrix = zeros(n)
    for i, H in enumerate(subgroups):
        for j, K in enumerate(subgroups):
            if K.order % H.order == 0:
                matrix[i, j] = morphism_count(kind, H, K, p)
    return subgroups, positions, matrix


def element_poset_weighting(group: PermGroup, p: int,
                            scope: str = "nonidentity"
                            ) -> tuple[list[Subgroup], list[Fraction]]:
    """Solves the element-level poset zeta-matrix, which is triangular in
    (order, indices) order."""
    subgroups, _, matrix = element_zeta_matrix(group, p, "S", scope)
    if not subgroups:
        return [], []
    return subgroups, solve_upper(matrix)


@dataclass
class CategoryResult:
    """Results of one kind: the matrix route value, the closed and local
    route values, and both weight vectors."""

    kind: str
    chi: Fraction
    chi_alt: Fraction | None
    chi_local: Fraction | None
    weighting: WeightVector
    coweighting: WeightVector


@dataclass
class ChiReport:
    """Every route for one group, prime and scope."""

    group: str
    order: int
    prime: int
    scope: str
    table: SubgroupClassTable
    results: dict[str, CategoryResult]
    residuals: dict[str, Fraction] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


def chi_report(group: PermGroup, p: int, scope: str = "nonidentity",
               kinds: list[str] | None = None,
               cross_check: bool = True, strict: bool = True) -> ChiReport:
    """
    Computes each kind by every applicable route.

    Parameters
    ----------
    group : PermGroup
        The group G.
    p : int
        The prime.
    scope : str
        Scope of the objects.
    kinds : list[str] | None
        Kinds to compute, all by default.
    cross_check : bool
        Also evaluate the element-sum form of the F weighting on small
        tables (see config.CENTRALIZER_SUM_MAX_WORK) and the poset form of
        the centric Ftilde weighting; disagreement of the latter is only
        noted.
    strict : bool
        Raise on a nonzero residual. With False the residuals are left in
        the report for the caller to inspect.

    Returns
    -------
    ChiReport
        Values, weight vectors and residuals.

    Raises
    ------
    InvariantError
        If strict and any two routes disagree; the nonzero residuals are
        attached.
    """
    check_prime(p)
    kinds = list(config.KINDS) if kinds is None else kinds
    for kind in kinds:
        CategoryKind(kind, scope)
    table = enumerate_classes(group, p, scope)
    report = ChiReport(group.name, group.order, p, scope, table, {})
    if not len(table):
        report.notes.append(f"no {scope} {p}-subgroups")
    for kind in kinds:
        if len(table):
            zm = zeta_matrix(table, kind)
            weighting = solve_weighting(zm)
            coweighting = solve_coweighting(zm)
        else:
            weighting = WeightVector("weighting", table, [])
            coweighting = WeightVector("coweighting", table, [])
        value = weighting.total()
        alt = chi_closed(table, kind)
        local = local_weighting(table, kind) if len(table) else None
        result = CategoryResult(kind, value, alt,
                                local.total() if local else None,
                                weighting, coweighting)
        report.results[kind] = result
        report.residuals[f"{kind}:coweighting"] = value - coweighting.total()
        if alt is not None:
            report.residuals[f"{kind}:closed"] = value - alt
        if result.chi_local is not None:
            report.residuals[f"{kind}:local"] = value - result.chi_local
        if kind == "O" and scope == "nonidentity":
            report.residuals["O:cyclic"] = value - chi_orbit_cyclic(table)
        if kind == "F" and local is not None and cross_check and \
                centralizer_sum_work(table) <= \
                config.CENTRALIZER_SUM_MAX_WORK:
            element_sum = frobenius_centralizer_weighting(table)
            report.residuals["F:centralizer-sum"] = sum(
                (abs(a - b) for a, b in zip(element_sum.values,
                                            local.values)), Fraction(0))
        if kind == "Ftilde" and scope == "centric" and cross_check:
            poset_form = ftilde_centric_poset_form(table).total()
            if poset_form != value:
                report.notes.append(f"centric Ftilde poset form gives "
                                    f"{poset_form}, not {value}")
        logger.info(f"{group.name}, p={p}, {scope} {kind}: chi = {value}")
    failed = {k: v for k, v in report.residuals.items() if v != 0}
    if failed and strict:
        raise InvariantError(f"routes disagree for {group.name} at p={p}",
                             failed)
    return report


def report_document(report: ChiReport, spec: str | None = None,
                    timing: dict[str, int] | None = None) -> dict:
    """
    The JSON-ready document of a report, keys in a fixed order, every
    rational rendered by format_rational.
    """
    kinds = list(report.results)
    classes = []
    for position, cls in enumerate(report.table):
        classes.append({
            "order": cls.order,
            "class_size": cls.class_size,
            "representative": cls.describe(),
            "flags": cls.flags.as_dict(),
            "weighting": {k: format_rational(
                report.results[k].weighting.values[position]) for k in kinds},
            "coweighting": {k: format_rational(
                report.results[k].coweighting.values[position])
                for k in kinds},
        })
    document = {
        "group": report.group if spec is None else spec,
        "order": report.order,
        "prime": report.prime,
        "scope": report.scope,
        "categories": {k: format_rational(r.chi)
                       for k, r in report.results.items()},
        "classes": classes,
        "residuals": {k: format_rational(v)
                      for k, v in report.residuals.items()},
        "notes": list(report.notes),
    }
    if timing is not None:
        document["timing"] = timing
    return document
