"""
Exact Moebius functions.

Rationals are `fractions.Fraction`; matrices are numpy object arrays of
Fractions and every solve is a triangular substitution. The class Moebius
function of a table is computed from mu-transporter counts and checked
against the inverse of the class transporter matrix.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import InputError, InvariantError
from .groups.groupcore import Subgroup, frattini
from .psub import SubgroupClassTable, SubgroupLattice
from .utils import check_prime, elementary_mu, is_p_power, p_log

logger = logging.getLogger(__name__)

Rational = Fraction

# scopes that are convex in the subconjugation order, where the class
# Moebius function restricts from the table of all p-subgroups
MOBIUS_SCOPES = ["all", "nonidentity", "centric", "elementary-abelian"]


def rational_matrix(rows) -> np.ndarray:
    """An object array of Fractions."""
    rows = [[Fraction(x) for x in row] for row in rows]
    matrix = np.empty((len(rows), len(rows[0]) if rows else 0),
                      dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            matrix[i, j] = x
    return matrix


def zeros(n: int) -> np.ndarray:
    return rational_matrix([[0] * n for _ in range(n)])


def _check_triangular(matrix: np.ndarray) -> None:
    n = matrix.shape[0]
    for i in range(n):
        if matrix[i, i] == 0:
            raise InvariantError(f"zero diagonal entry at position {i}")
        for j in range(i):
            if matrix[i, j] != 0:
                raise InvariantError(f"entry ({i}, {j}) below the diagonal "
                                     f"is {matrix[i, j]}")


def solve_upper(matrix: np.ndarray, rhs=None) -> list[Fraction]:
    """
    Solves matrix @ x = rhs by back substitution.

    Parameters
    ----------
    matrix : np.ndarray
        Square upper-triangular matrix of Fractions.
    rhs : Sequence | None
        Right-hand side; all ones by default.

    Returns
    -------
    list[Fraction]
        The exact solution.

    Raises
    ------
    InvariantError
        If the matrix is not triangular with a nonzero diagonal.
    """
    _check_triangular(matrix)
    n = matrix.shape[0]
    rhs = [Fraction(1)] * n if rhs is None else [Fraction(x) for x in rhs]
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        total = rhs[i] - sum((matrix[i, j] * x[j] for j in range(i + 1, n)),
                             Fraction(0))
        x[i] = total / matrix[i, i]
    return x


def solve_row(matrix: np.ndarray, rhs=None) -> list[Fraction]:
    """Solves the row equation x @ matrix = rhs by forward substitution."""
    _check_triangular(matrix)
    n = matrix.shape[0]
    rhs = [Fraction(1)] * n if rhs is None else [Fraction(x) for x in rhs]
    x = [Fraction(0)] * n
    for j in range(n):
        total = rhs[j] - sum((x[i] * matrix[i, j] for i in range(j)),
                             Fraction(0))
        x[j] = total / matrix[j, j]
    return x


def invert_upper_triangular(matrix: np.ndarray) -> np.ndarray:
    n = matrix.shape[0]
    inverse = zeros(n)
    for j in range(n):
        column = solve_upper(matrix, [1 if i == j else 0 for i in range(n)])
        for i in range(n):
            inverse[i, j] = column[i]
    return inverse


@dataclass(frozen=True, eq=False)
class FinitePoset:
    """
    A finite poset given by its order relation.

    Attributes
    ----------
    elements : tuple
        The elements, in any order.
    leq : np.ndarray
        Boolean matrix, leq[i, j] iff elements[i] <= elements[j].
    """

    elements: tuple
    leq: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.elements)
        if self.leq.shape != (n, n):
            raise InputError(f"relation of shape {self.leq.shape} for {n} "
                             f"elements")
        if not (self.is_reflexive() and self.is_antisymmetric()
                and self.is_transitive()):
            raise InputError("relation is not a partial order")

    @classmethod
    def from_relation(cls, elements, leq) -> "FinitePoset":
        elements = tuple(elements)
        matrix = np.array([[bool(leq(a, b)) for b in elements]
                           for a in elements], dtype=bool).reshape(
            len(elements), len(elements))
        return cls(elements, matrix)

    def is_reflexive(self) -> bool:
        return bool(np.diagonal(self.leq).all())

    def is_antisymmetric(self) -> bool:
        both = self.leq & self.leq.T
        return bool((both == np.eye(len(self.elements), dtype=bool)).all())

    def is_transitive(self) -> bool:
        relation = self.leq.astype(np.int64)
        return not ((relation @ relation > 0) & ~self.leq).any()

    def position(self, element) -> int:
        try:
            return self.elements.index(element)
        except ValueError as e:
            raise InputError(f"{element!r} is not in the poset") from e


def mu_poset_oracle(poset: FinitePoset, a, b) -> int:
    """
    The Moebius function of a finite poset by the defining recursion
    mu(a, a) = 1 and sum over a <= c <= b of mu(a, c) = 0.

    Raises
    ------
    InputError
        If a is not below b.
    """
    i, j = poset.position(a), poset.position(b)
    if not poset.leq[i, j]:
        raise InputError(f"{a!r} is not below {b!r}")
    interval = [c for c in range(len(poset.elements))
                if poset.leq[i, c] and poset.leq[c, j]]
    interval.sort(key=lambda c: int(poset.leq[:, c].sum()))
    mu = {}
    for c in interval:
        mu[c] = 1 if c == i else -sum(mu[d] for d in mu
                                      if poset.leq[d, c] and d != c)
    return mu[j]


def subgroup_poset(subgroups: list[Subgroup]) -> FinitePoset:
    return FinitePoset.from_relation(subgroups,
                                     lambda H, K: H.is_subgroup_of(K))


def mu_hall(H: Subgroup, K: Subgroup, p: int) -> int:
    """
    Moebius function of the subgroup poset of a p-group: (-1)^n p^C(n,2)
    when Phi(K) <= H, |K:H| = p^n, and 0 otherwise.

    Raises
    ------
    InputError
        If H is not a subgroup of K or K is not a p-group.
    """
    check_prime(p)
    if H.parent is not K.parent or not H.is_subgroup_of(K):
        raise InputError("mu(H, K) needs H <= K")
    if not is_p_power(K.order, p):
        raise InputError(f"subgroup of order {K.order} is not a {p}-group")
    if not frattini(K, p).is_subgroup_of(H):
        return 0
    return elementary_mu(p_log(K.order // H.order, p), p)


def mu(K: Subgroup, p: int) -> int:
    """mu(1, K)."""
    return mu_hall(K.parent.trivial, K, p)


def class_transporter_matrix(table: SubgroupClassTable) -> np.ndarray:
    """Class zeta-matrix of the transporter category, |N_G(H, K)|."""
    lattice, cids = table.lattice, table.cids
    n = len(cids)
    matrix = zeros(n)
    for i, h in enumerate(cids):
        for j in range(i, n):
            matrix[i, j] = Fraction(lattice.transporter_count(h, cids[j]))
    return matrix


def class_mobius(table: SubgroupClassTable, check: bool = True) -> np.ndarray:
    """
    The class Moebius function
        [mu]([H],[K]) = (-1)^n p^C(n,2) |N^mu_G(H,K)| / (|N_G(H)| |N_G(K)|),
    |K| = p^n |H|, from mu-transporter counts.

    Parameters
    ----------
    table : SubgroupClassTable
        A table in one of MOBIUS_SCOPES.
    check : bool
        Compare with the inverse of the class transporter matrix.

    Returns
    -------
    np.ndarray
        Upper-triangular object matrix of Fractions.

    Raises
    ------
    InputError
        For scopes that are not convex in the subconjugation order.
    InvariantError
        If the two computations disagree.
    """
    if table.scope not in MOBIUS_SCOPES:
        raise InputError(f"no mu-transporter route in scope {table.scope}")
    lattice, p, cids = table.lattice, table.prime, table.cids
    n = len(cids)
    matrix = zeros(n)
    for i, h in enumerate(cids):
        H = lattice.classes[h]
        for j in range(i, n):
            K = lattice.classes[cids[j]]
            if K.order % H.order:
                continue
            count = lattice.mu_transporter_count(h, cids[j])
            if count:
                rank = p_log(K.order // H.order, p)
                matrix[i, j] = Fraction(elementary_mu(rank, p) * count,
                                        H.normalizer_order
                                        * K.normalizer_order)
    if check and n:
        inverse = invert_upper_triangular(class_transporter_matrix(table))
        residuals = {f"[mu]({i},{j})": matrix[i, j] - inverse[i, j]
                     for i in range(n) for j in range(n)
                     if matrix[i, j] != inverse[i, j]}
        if residuals:
            raise InvariantError("class Moebius function disagrees with the "
                                 "inverse transporter matrix", residuals)
    return matrix


def class_mobius_by_inversion(table: SubgroupClassTable) -> np.ndarray:
    """Inverse of the class transporter matrix, valid in every scope."""
    if not len(table):
        return zeros(0)
    return invert_upper_triangular(class_transporter_matrix(table))


def gauss_binom(n: int, d: int, p: int) -> int:
    """
    Gaussian p-binomial coefficient, the number of d-dimensional subspaces
    of F_p^n.

    Raises
    ------
    InputError
        Unless 0 <= d <= n.
    """
    if not 0 <= d <= n:
        raise InputError(f"gauss_binom needs 0 <= d <= n, got n={n}, d={d}")
    numerator, denominator = 1, 1
    for i in range(d):
        numerator *= p ** (n - i) - 1
        denominator *= p ** (i + 1) - 1
    return numerator // denominator


def alternating_power_sum(n: int, p: int) -> int:
    """Sum over d of (-1)^d [n, d]_p p^C(d,2) p^(n-d): p-1 for n = 1 and 0
    for larger n."""
    if n < 1:
        raise InputError(f"alternating_power_sum needs n >= 1, got {n}")
    return sum((-1) ** d * gauss_binom(n, d, p) * p ** (d * (d - 1) // 2)
               * p ** (n - d) for d in range(n + 1))


def subspace_count(n: int, d: int, p: int) -> int:
    """Counts the d-dimensional subspaces of F_p^n by spanning them."""
    vectors = list(itertools.product(range(p), repeat=n))
    level = {frozenset([vectors[0]])}
    for _ in range(d):
        spans = set()
        for space in level:
            for v in vectors:
                if v in space:
                    continue
                spans.add(frozenset(
                    tuple((a + c * b) % p for a, b in zip(u, v))
                    for u in space for c in range(p)))
        level = spans
    return len(level)


def weighted_mu_sum(lattice: SubgroupLattice, lattice_id: int) -> Fraction:
    """|Phi(K)|^-1 sum over H <= K of |H| mu(H, K); p-1 for cyclic K > 1
    and 0 for the other nonidentity K."""
    p = lattice.prime
    K = lattice.subgroups[lattice_id]
    phi = frattini(K, p)
    phi_id = lattice.index[phi.key]
    total = 0
    for h in lattice.below[lattice_id]:
        if phi_id in lattice.below[h]:
            H = lattice.subgroups[h]
            total += H.order * elementary_mu(p_log(K.order // H.order, p), p)
    return Fraction(total, phi.order)
