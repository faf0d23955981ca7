"""
Identity verifiers, theorem checks and conjecture scans.

Each verifier returns exact residuals, which are zero whenever the
implementation is right: the identities checked here are theorems. The two
conjecture scans report what they see and never raise.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from tqdm import tqdm

from . import config
from .eulercat import (centralizer_defect_sum, centralizer_sum_work, chi,
                       chi_F_normal_sylow, chi_report, local_weighting,
                       poset_defect, report_document, solve_coweighting,
                       solve_weighting, zeta_matrix)
from .exceptions import (ChiError, InputError, InvariantError,
                         ResourceLimitError)
from .groups.catalog import GroupSpec, build, direct_product, parse_spec
from .groups.groupcore import (PermGroup, centre, is_normal, p_core,
                               p_residual, sylow, transporter)
from .moebius import weighted_mu_sum
from .psub import chi_poset, enumerate_classes, subgroup_cap
from .utils import check_prime, p_part, p_prime_part

logger = logging.getLogger(__name__)

SCAN_HEADER = ("only catalog-constructible groups are covered: the base "
               "families and their two-factor products")


@dataclass
class VerificationReport:
    """
    Outcome of `verify_group`.

    Attributes
    ----------
    residuals : dict[str, Fraction]
        Theorem-level residuals, all zero on success.
    checks : dict[str, bool]
        Theorem-level yes/no checks, all true on success.
    conjectural : dict[str, Fraction]
        Residuals of conjectured identities, reported only.
    witness : dict | None
        On failure, the document of the nonidentity chi_report, with every
        class, weighting and residual.
    """

    group: str
    order: int
    prime: int
    residuals: dict[str, Fraction] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    conjectural: dict[str, Fraction] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return all(v == 0 for v in self.residuals.values()) and \
            all(self.checks.values())

    def failures(self) -> list[str]:
        failed = [k for k, v in self.residuals.items() if v != 0]
        return failed + [k for k, v in self.checks.items() if not v]


@dataclass
class ScanReport:
    """
    Outcome of a conjecture scan. `rows` has one entry per scanned group,
    in input order; `counterexamples` holds the rows that contradict the
    conjecture.
    """

    conjecture: str
    prime: int
    header: str = SCAN_HEADER
    rows: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    chi_F_min: Fraction | None = None
    chi_F_max: Fraction | None = None

    def record_chi_F(self, value: Fraction) -> None:
        """Keeps the extremes of chi(F*) over the groups with p | |G|."""
        if self.chi_F_min is None or value < self.chi_F_min:
            self.chi_F_min = value
        if self.chi_F_max is None or value > self.chi_F_max:
            self.chi_F_max = value


def verify_combinatorial_identities(group: PermGroup,
                                    p: int) -> dict[str, Fraction]:
    """
    Residuals of the three sums over the nonidentity p-subgroups H:
        sum of 1 - chi(S* of N_G(H)/H) + mu(H)
        sum of mu(H, K) |C_G(K)| over H <= K <= N_G(H), plus |C_G(H)| mu(H)
        sum of |H| (1 - chi(S* of N_G(H)/H)) + mu(H), minus (p-1)/p times
        the sum of |C| over the nonidentity cyclic C
    On tables within config.CENTRALIZER_SUM_MAX_WORK the second sum is also
    taken in its element form, the sum over x in C_G(H) of
    1 - chi(S* of C_N(x)/H), as "identity:frobenius-elements".
    """
    check_prime(p)
    table = enumerate_classes(group, p, "nonidentity")
    elements = centralizer_sum_work(table) <= config.CENTRALIZER_SUM_MAX_WORK
    local = local_weighting(table, "F") if len(table) else None
    poset = frobenius = frobenius_elements = orbit = Fraction(0)
    for position, cls in enumerate(table):
        size = cls.class_size
        poset += size * (poset_defect(cls) + cls.mu)
        frobenius += size * (local.values[position] * cls.normalizer_order
                             + cls.centralizer_order * cls.mu)
        if elements:
            frobenius_elements += size * (centralizer_defect_sum(cls)
                                          + cls.centralizer_order * cls.mu)
        orbit += size * (cls.order * poset_defect(cls) + cls.mu)
        if cls.is_cyclic:
            orbit -= Fraction(p - 1, p) * size * cls.order
    residuals = {"identity:poset": poset, "identity:frobenius": frobenius,
                 "identity:orbit": orbit}
    if elements:
        residuals["identity:frobenius-elements"] = frobenius_elements
    return residuals


def chi_F(group: PermGroup, p: int) -> Fraction:
    return chi(enumerate_classes(group, p, "nonidentity"), "F")


def verify_products(first: PermGroup, second: PermGroup,
                    p: int) -> dict[str, Fraction]:
    """Residuals of the product formulas 1 - chi(G1 x G2) =
    (1 - chi(G1)) (1 - chi(G2)) for the poset S* and for F*."""
    check_prime(p)
    product = direct_product(first, second)
    residuals = {}
    for name, value in (("S", chi_poset), ("F", chi_F)):
        left = 1 - value(product, p)
        right = (1 - value(first, p)) * (1 - value(second, p))
        residuals[f"product:{name}"] = Fraction(left - right)
    logger.info(f"products {product.name}, p={p}: {residuals}")
    return residuals


def verify_integrality(group: PermGroup, p: int) -> dict[str, bool]:
    """|G|_p' chi(F*) and |G|_p' chi(O*) are integers and the denominator
    of chi(F*) is prime to p."""
    check_prime(p)
    table = enumerate_classes(group, p, "nonidentity")
    m = p_prime_part(group.order, p)
    frobenius, orbit = chi(table, "F"), chi(table, "O")
    return {"integral:F": (m * frobenius).denominator == 1,
            "integral:O": (m * orbit).denominator == 1,
            "p-local:F": frobenius.denominator % p != 0}


def verify_support(group: PermGroup, p: int) -> dict[str, bool]:
    """
    Support of the weightings and coweightings: the S, T, O weightings
    vanish off the p-radical classes, the S, T, L, F coweightings vanish off
    the elementary abelian classes, and the characteristics of the
    restricted scopes agree with the nonidentity ones. With a normal Sylow
    subgroup the F weighting is the centralizer count.
    """
    check_prime(p)
    table = enumerate_classes(group, p, "nonidentity")
    checks = {}
    if not len(table):
        return checks
    for kind in ("S", "T", "L", "F", "O"):
        zm = zeta_matrix(table, kind)
        if kind in ("S", "T", "O"):
            support = solve_weighting(zm).support()
            checks[f"support:{kind}:radical"] = all(
                c.flags.p_radical for c in support)
        if kind != "O":
            support = solve_coweighting(zm).support()
            checks[f"support:{kind}:elementary"] = all(
                c.is_elementary_abelian for c in support)
    for scope, kinds in (("elementary-abelian", ("S", "T", "L", "F")),
                         ("radical", ("S", "T", "O"))):
        restricted = enumerate_classes(group, p, scope)
        for kind in kinds:
            checks[f"scope:{scope}:{kind}"] = \
                chi(restricted, kind) == chi(table, kind)
    P = sylow(group, p)
    if is_normal(group.whole, P):
        _, weights = chi_F_normal_sylow(group, p)
        weighting = solve_weighting(zeta_matrix(table, "F"))
        checks["support:F:normal-sylow"] = all(
            value == cls.class_size * weights.get(cls.representative, 0)
            for cls, value in zip(table, weighting.values))
    return checks


def verify_theorems(group: PermGroup, p: int,
                    report: VerificationReport) -> None:
    """
    Theorem checks that need no second route: the central p-subgroup
    values, the divisibility of 1 - chi(S*) by |G|_p, the cyclic
    mu-sums, centric and F-radical implying p-radical, the element-level
    transporter counts and O_p(G) > 1 implying chi(S*) = 1.
    """
    table = enumerate_classes(group, p, "nonidentity")
    lattice = table.lattice
    poset = chi_poset(group, p)
    if p_part(centre(group.whole).order, p) > 1:
        report.residuals["central:F"] = chi(table, "F") - 1
        report.residuals["central:L"] = chi(table, "L") - Fraction(
            p_residual(group.whole, p).order, group.order)
    report.checks["divisibility:S"] = (1 - poset) % p_part(group.order,
                                                           p) == 0
    for cls in table:
        expected = p - 1 if cls.is_cyclic else 0
        report.residuals[f"cyclic-mu:{cls.cid}"] = \
            weighted_mu_sum(lattice, cls.lattice_id) - expected
        flags = cls.flags
        report.checks[f"centric-radical:{cls.cid}"] = \
            not (flags.p_selfcentralizing and flags.f_radical) or \
            flags.p_radical
    if group.order <= config.ORACLE_MAX_ORDER:
        for H in table:
            for K in table:
                if K.order % H.order or K.order < H.order:
                    continue
                direct = len(transporter(group, H.representative,
                                         K.representative))
                report.residuals[f"transporter:{H.cid},{K.cid}"] = Fraction(
                    direct - lattice.transporter_count(H.cid, K.cid))
    if not p_core(group, p).is_trivial():
        report.residuals["quillen:S"] = Fraction(poset - 1)


def verify_group(group: PermGroup, p: int,
                 partner: PermGroup | None = None) -> VerificationReport:
    """
    Runs every verifier on one group: all routes of `chi_report` on the
    nonidentity and centric scopes, the combinatorial identities,
    integrality, support, theorem checks and, with a partner group, the
    product formulas.

    Returns
    -------
    VerificationReport
        Residuals and checks; `ok` is false on any theorem violation, and
        then `witness` holds the full nonidentity report document.
    """
    check_prime(p)
    report = VerificationReport(group.name, group.order, p)
    reports = {}
    for scope in ("nonidentity", "centric"):
        try:
            chis = reports[scope] = chi_report(group, p, scope,
                                               strict=False)
        except InvariantError as e:
            report.residuals.update({f"{scope}:{k}": v
                                     for k, v in e.residuals.items()})
            report.notes.append(f"{scope}: {e}")
            continue
        report.residuals.update({f"{scope}:{k}": v
                                 for k, v in chis.residuals.items()})
        report.notes += chis.notes
        if scope == "nonidentity" and chis.results:
            report.residuals["F=Ftilde"] = chis.results["F"].chi - \
                chis.results["Ftilde"].chi
        if scope == "centric" and chis.results:
            report.conjectural["centric:F-Ftilde"] = \
                chis.results["F"].chi - chis.results["Ftilde"].chi
    report.residuals.update(verify_combinatorial_identities(group, p))
    report.checks.update(verify_integrality(group, p))
    report.checks.update(verify_support(group, p))
    verify_theorems(group, p, report)
    if partner is not None:
        report.residuals.update(verify_products(group, partner, p))
    if report.ok:
        logger.info(f"{group.name}, p={p}: every check passed")
    else:
        logger.warning(f"{group.name}, p={p}: failed {report.failures()}")
        if "nonidentity" in reports:
            report.witness = report_document(reports["nonidentity"])
    return report


def _witness(group: PermGroup, p: int, scope: str) -> dict:
    """The report document attached to a counterexample row."""
    try:
        return report_document(chi_report(group, p, scope, strict=False))
    except ChiError as e:
        return {"group": group.name, "error": str(e)}


def _scan_groups(specs, p: int, report: ScanReport, visit,
                 witness_scope: str) -> ScanReport:
    """
    Visits each group under the subgroup cap config.SCAN_MAX_SUBGROUPS;
    groups over that cap or config.max_elements() go to `skipped`.
    Counterexample rows carry the document of the chi_report of
    `witness_scope` under "report".
    """
    with subgroup_cap(config.SCAN_MAX_SUBGROUPS):
        for spec in tqdm(specs, desc=f"{report.conjecture} scan",
                         disable=not config.SHOW_PROGRESS):
            spec = parse_spec(spec) if isinstance(spec, str) else spec
            try:
                group = build(spec)
                if group.order % p:
                    row = {"group": str(spec), "order": group.order,
                           "consistent": True}
                else:
                    report.record_chi_F(chi_F(group, p))
                    row = visit(group)
            except ResourceLimitError as e:
                logger.warning(f"skipping {spec}: {e}")
                report.skipped.append(str(spec))
                continue
            report.rows.append(row)
            if not row["consistent"]:
                logger.warning(f"counterexample to the {report.conjecture} "
                               f"conjecture: {spec}")
                row["report"] = _witness(group, p, witness_scope)
                report.counterexamples.append(row)
    return report


def scan_quillen(specs: list[GroupSpec | str], p: int) -> ScanReport:
    """
    Checks chi(S*) != 1 exactly when O_p(G) = 1 on each group.

    Parameters
    ----------
    specs : list[GroupSpec | str]
        Groups to scan, in report order.
    p : int
        The prime.

    Returns
    -------
    ScanReport
        One row per group with chi(S*) and the order of O_p(G).
    """
    check_prime(p)

    def visit(group: PermGroup) -> dict:
        poset = chi_poset(group, p)
        core = p_core(group, p).order
        return {"group": group.name, "order": group.order,
                "chi_S": Fraction(poset), "O_p": core,
                "consistent": (poset != 1) == (core == 1)}
    return _scan_groups(specs, p, ScanReport("quillen", p), visit,
                        "nonidentity")


def scan_fradical_support(specs: list[GroupSpec | str],
                          p: int) -> ScanReport:
    """
    Checks, on each centric class, that the centric Ftilde weighting is
    nonzero exactly at the F-radical classes. Counterexample rows list the
    offending classes.
    """
    check_prime(p)

    def visit(group: PermGroup) -> dict:
        table = enumerate_classes(group, p, "centric")
        weighting = solve_weighting(zeta_matrix(table, "Ftilde"))
        offending = [{"order": cls.order, "class_size": cls.class_size,
                      "weighting": value, "f_radical": cls.flags.f_radical}
                     for cls, value in zip(table, weighting.values)
                     if (value != 0) != cls.flags.f_radical]
        return {"group": group.name, "order": group.order,
                "classes": len(table), "offending": offending,
                "consistent": not offending}
    return _scan_groups(specs, p, ScanReport("fradical", p), visit,
                        "centric")


def scan(conjecture: str, specs: list[GroupSpec | str],
         p: int) -> ScanReport:
    scans = {"quillen": scan_quillen, "fradical": scan_fradical_support}
    if conjecture not in scans:
        raise InputError(f"unknown conjecture {conjecture!r}; expected one "
                         f"of {sorted(scans)}")
    return scans[conjecture](specs, p)
