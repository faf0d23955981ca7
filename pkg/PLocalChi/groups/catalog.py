"""
Named permutation groups and the textual group-spec grammar

    Sn | An | Cn | Dih:m | EA:p:k | Q8 | SL2:q | G288 | C2cubeByC3
       | <spec>x<spec> | perm:[<cycles>,...]

Products act on disjoint point sets, the left factor on the lowest points.
"""
import itertools
import logging
import math
import re
from dataclasses import dataclass

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (gf_add, gf_irreducible_p, gf_mul, gf_rem,
                                     gf_strip)

from ..config import (MAX_DEGREE, SCAN_FAMILIES, SCAN_PRODUCT_MAX_FACTOR,
                      max_elements)
from ..exceptions import InputError, ResourceLimitError
from ..utils import check_prime, prime_power
from .groupcore import Permutation, PermGroup

logger = logging.getLogger(__name__)

_LEAVES = [
    ("C2cubeByC3", re.compile(r"C2cubeByC3")),
    ("G288", re.compile(r"G288")),
    ("Q8", re.compile(r"Q8")),
    ("SL2", re.compile(r"SL2:(\d+)")),
    ("Dih", re.compile(r"Dih:(\d+)")),
    ("ElemAb", re.compile(r"EA:(\d+):(\d+)")),
    ("Sym", re.compile(r"S(\d+)")),
    ("Alt", re.compile(r"A(\d+)")),
    ("Cyc", re.compile(r"C(\d+)")),
]
_CYCLE = re.compile(r"\(\s*(\d+(?:\s+\d+)*)?\s*\)")

G288_CYCLES = [
    [(0, 1, 2)],
    [(0, 1), (2, 3)],
    [(4, 5, 6)],
    [(4, 5), (6, 7)],
    [(0, 4), (1, 5), (2, 6), (3, 7)],
]
C2CUBE_BY_C3_CYCLES = [
    [(0, 1)],
    [(2, 3)],
    [(4, 5)],
    [(0, 2, 4), (1, 3, 5)],
]
# regular representation: i and j acting on the eight quaternion units
Q8_CYCLES = [
    [(0, 1, 2, 3), (4, 5, 6, 7)],
    [(0, 4, 2, 6), (1, 7, 3, 5)],
]


@dataclass(frozen=True)
class GroupSpec:
    """
    Parsed group expression.

    Attributes
    ----------
    kind : str
        One of Sym, Alt, Cyc, Dih, ElemAb, Q8, SL2, G288, C2cubeByC3,
        Product, Perm.
    params : tuple[int, ...]
        Integer parameters of the constructor.
    children : tuple[GroupSpec, ...]
        Factors of a Product.
    cycles : tuple
        Generators of a Perm spec, each a tuple of cycles.
    """

    kind: str
    params: tuple[int, ...] = ()
    children: tuple["GroupSpec", ...] = ()
    cycles: tuple[tuple[tuple[int, ...], ...], ...] = ()

    def __str__(self) -> str:
        if self.kind == "Product":
            return "x".join(str(c) for c in self.children)
        if self.kind == "Perm":
            gens = ["".join("(" + " ".join(map(str, c)) + ")" for c in gen)
                    or "()" for gen in self.cycles]
            return "perm:[" + ",".join(gens) + "]"
        prefix = {"Sym": "S", "Alt": "A", "Cyc": "C", "Dih": "Dih:",
                  "ElemAb": "EA:", "SL2": "SL2:"}
        if self.kind in prefix:
            return prefix[self.kind] + ":".join(map(str, self.params))
        return self.kind


def _split_top_level(text: str, separator: str) -> list[tuple[int, str]]:
    """Splits at separators outside brackets, keeping start offsets."""
    parts, depth, start = [], 0, 0
    for i, char in enumerate(text):
        if char in "[(":
            depth += 1
        elif char in "])":
            depth -= 1
        elif char == separator and depth == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    parts.append((start, text[start:]))
    return parts


def _parse_perm(body: str, offset: int) -> GroupSpec:
    generators = []
    for start, item in _split_top_level(body, ","):
        item_offset = offset + start
        stripped = item.strip()
        if not stripped:
            raise InputError(f"empty generator at position {item_offset}")
        cycles, pos = [], 0
        for match in _CYCLE.finditer(stripped):
            if stripped[pos:match.start()].strip():
                break
            pos = match.end()
            if match.group(1):
                cycles.append(tuple(int(x) for x in match.group(1).split()))
        if stripped[pos:].strip() or pos == 0:
            raise InputError(f"malformed cycles {stripped!r} at position "
                             f"{item_offset}")
        generators.append(tuple(cycles))
    return GroupSpec("Perm", cycles=tuple(generators))


def _parse_leaf(text: str, offset: int) -> GroupSpec:
    if text.startswith("perm:"):
        if not (text.startswith("perm:[") and text.endswith("]")):
            raise InputError(f"expected perm:[...] at position {offset}")
        return _parse_perm(text[6:-1], offset + 6)
    for kind, pattern in _LEAVES:
        match = pattern.fullmatch(text)
        if match:
            params = tuple(int(g) for g in match.groups())
            if kind == "SL2":
                prime_power(params[0])
            if kind == "ElemAb":
                check_prime(params[0])
            return GroupSpec(kind, params)
    raise InputError(f"unknown group constructor {text!r} at position "
                     f"{offset}")


def parse_spec(text: str) -> GroupSpec:
    """
    Parses a group expression.

    Parameters
    ----------
    text : str
        Expression in the group-spec grammar, e.g. "S3xS3" or
        "perm:[(0 1 2),(0 1)(2 3)]".

    Returns
    -------
    GroupSpec
        The parsed tree; products are flattened into one node.

    Raises
    ------
    InputError
        On unknown constructors, malformed integers or cycles, and SL2
        fields whose size is not a prime power. The message carries the
        position of the offending token.
    """
    text = text.strip()
    if not text:
        raise InputError("empty group spec")
    factors = [_parse_leaf(part.strip(), start + len(part)
                           - len(part.lstrip()))
               for start, part in _split_top_level(text, "x")]
    if len(factors) == 1:
        return factors[0]
    return GroupSpec("Product", children=tuple(factors))


def _cycles(cycle_lists, degree: int) -> list[Permutation]:
    return [Permutation.from_cycles(c, degree) for c in cycle_lists]


class FiniteField:
    """
    Arithmetic in F_q, q = p^e. Elements are the integers 0..q-1 whose
    base-p digits are the polynomial coefficients, constant term lowest.
    The modulus is the first monic irreducible polynomial of degree e in
    lexicographic coefficient order.
    """

    def __init__(self, q: int) -> None:
        self.p, self.e = prime_power(q)
        self.q = q
        self.modulus = self._first_irreducible()
        self._add = [[self._from_poly(gf_add(self._to_poly(a),
                                             self._to_poly(b), self.p, ZZ))
                      for b in range(q)] for a in range(q)]
        self._mul = [[self._from_poly(gf_rem(gf_mul(self._to_poly(a),
                                                    self._to_poly(b),
                                                    self.p, ZZ),
                                             self.modulus, self.p, ZZ))
                      for b in range(q)] for a in range(q)]

    def _first_irreducible(self) -> list[int]:
        if self.e == 1:
            return [1, 0]
        for tail in itertools.product(range(self.p), repeat=self.e):
            candidate = [1, *tail]
            if gf_irreducible_p(candidate, self.p, ZZ):
                return candidate
        raise InputError(f"no irreducible polynomial of degree {self.e} "
                         f"over F_{self.p}")

    def _to_poly(self, a: int) -> list[int]:
        digits = []
        while a:
            digits.append(a % self.p)
            a //= self.p
        return gf_strip(digits[::-1])

    def _from_poly(self, f) -> int:
        value = 0
        for c in f:
            value = value * self.p + int(c)
        return value

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def basis(self) -> list[int]:
        """1, x, ..., x^(e-1): an additive basis over the prime field."""
        return [self.p ** i for i in range(self.e)]


def _sl2_generators(q: int) -> tuple[list[Permutation], int]:
    """Transvections over a prime-field basis of F_q, acting on the
    nonzero column vectors (a, b), point a*q + b - 1."""
    degree = q * q - 1
    if degree > MAX_DEGREE:
        raise ResourceLimitError(f"SL2({q}) needs {degree} points, more than "
                                 f"{MAX_DEGREE}", limit=MAX_DEGREE,
                                 reached=degree)
    field = FiniteField(q)

    def action(matrix) -> Permutation:
        (a, b), (c, d) = matrix
        images = []
        for point in range(1, q * q):
            x, y = divmod(point, q)
            u = field.add(field.mul(a, x), field.mul(b, y))
            v = field.add(field.mul(c, x), field.mul(d, y))
            images.append(u * q + v - 1)
        return Permutation(tuple(images))

    gens = [action(((1, w), (0, 1))) for w in field.basis()]
    gens += [action(((1, 0), (w, 1))) for w in field.basis()]
    return gens, degree


def _leaf_generators(spec: GroupSpec) -> tuple[list[Permutation], int]:
    kind, params = spec.kind, spec.params
    if kind in ("Sym", "Alt", "Cyc", "Dih") and params[0] < 1:
        raise InputError(f"{spec} needs a positive parameter")
    if kind == "Sym":
        n = params[0]
        if n == 1:
            return [], 1
        return _cycles([[(0, 1)], [tuple(range(n))]] if n > 2
                       else [[(0, 1)]], n), n
    if kind == "Alt":
        n = params[0]
        if n <= 2:
            return [], n
        if n == 3:
            return _cycles([[(0, 1, 2)]], 3), 3
        long_cycle = tuple(range(n)) if n % 2 else tuple(range(1, n))
        return _cycles([[(0, 1, 2)], [long_cycle]], n), n
    if kind == "Cyc":
        n = params[0]
        return (_cycles([[tuple(range(n))]], n) if n > 1 else []), n
    if kind == "Dih":
        m = params[0]
        if m == 1:
            return _cycles([[(0, 1)]], 2), 2
        if m == 2:
            return _cycles([[(0, 1)], [(2, 3)]], 4), 4
        reflection = [(i, m - i) for i in range(1, (m + 1) // 2)]
        return _cycles([[tuple(range(m))], reflection], m), m
    if kind == "ElemAb":
        p, k = params
        if k < 1:
            raise InputError(f"{spec} needs a positive rank")
        return _cycles([[tuple(range(i * p, (i + 1) * p))]
                        for i in range(k)], p * k), p * k
    if kind == "Q8":
        return _cycles(Q8_CYCLES, 8), 8
    if kind == "SL2":
        return _sl2_generators(params[0])
    if kind == "G288":
        return _cycles(G288_CYCLES, 8), 8
    if kind == "C2cubeByC3":
        return _cycles(C2CUBE_BY_C3_CYCLES, 6), 6
    if kind == "Perm":
        points = [x for gen in spec.cycles for c in gen for x in c]
        degree = max(points, default=0) + 1
        return [Permutation.from_cycles(gen, degree)
                for gen in spec.cycles], degree
    raise InputError(f"cannot build {spec.kind}")


def shift(perm: Permutation, offset: int, degree: int) -> Permutation:
    """Moves a permutation onto the points offset..offset+perm.degree-1 of
    a set of `degree` points."""
    images = list(range(degree))
    for i, j in enumerate(perm.images):
        images[offset + i] = offset + j
    return Permutation(tuple(images))


def _generators(spec: GroupSpec) -> tuple[list[Permutation], int]:
    if spec.kind != "Product":
        return _leaf_generators(spec)
    factors = [_generators(child) for child in spec.children]
    degree = sum(d for _, d in factors)
    gens, offset = [], 0
    for factor_gens, factor_degree in factors:
        gens += [shift(g, offset, degree) for g in factor_gens]
        offset += factor_degree
    return gens, degree


def spec_order(spec: GroupSpec) -> int:
    """The documented order of a spec, without building the group (raw
    generator specs are built)."""
    kind, params = spec.kind, spec.params
    if kind == "Sym":
        return math.factorial(params[0])
    if kind == "Alt":
        return max(math.factorial(params[0]) // 2, 1)
    if kind == "Cyc":
        return params[0]
    if kind == "Dih":
        return 2 * params[0]
    if kind == "ElemAb":
        return params[0] ** params[1]
    if kind == "SL2":
        q = params[0]
        return q * (q * q - 1)
    if kind == "Product":
        return math.prod(spec_order(c) for c in spec.children)
    fixed = {"Q8": 8, "G288": 288, "C2cubeByC3": 24}
    if kind in fixed:
        return fixed[kind]
    return build(spec).order


def build(spec: GroupSpec | str) -> PermGroup:
    """
    Realizes a spec as a permutation group.

    Parameters
    ----------
    spec : GroupSpec | str
        Parsed spec, or text that is parsed first.

    Returns
    -------
    PermGroup
        The group, named by the canonical spec text.

    Raises
    ------
    ResourceLimitError
        If the degree or the documented order exceeds its cap.
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if spec.kind != "Perm" and spec_order(spec) > max_elements():
        raise ResourceLimitError(f"{spec} has order {spec_order(spec)}, more "
                                 f"than {max_elements()} elements",
                                 limit=max_elements(),
                                 reached=spec_order(spec))
    gens, degree = _generators(spec)
    if degree > MAX_DEGREE:
        raise ResourceLimitError(f"{spec} acts on {degree} points, more "
                                 f"than {MAX_DEGREE}", limit=MAX_DEGREE,
                                 reached=degree)
    group = PermGroup(gens, degree=degree, name=str(spec))
    logger.info(f"built {spec}: order {group.order}, degree {degree}")
    return group


def direct_product(first: PermGroup, second: PermGroup,
                   name: str | None = None) -> PermGroup:
    """The direct product acting on the disjoint union of the point sets."""
    degree = first.degree + second.degree
    gens = [shift(g, 0, degree) for g in first.generators]
    gens += [shift(g, first.degree, degree) for g in second.generators]
    return PermGroup(gens, degree=degree,
                     name=name or f"{first.name}x{second.name}")


def catalog_specs(max_order: int) -> list[GroupSpec]:
    """
    Catalog-constructible groups of order at most `max_order`: the scan
    families and the two-factor products of their small members, each
    list sorted by (order, text).
    """
    bases = []
    for family in SCAN_FAMILIES.values():
        bases += [parse_spec(text) for text in family]
    bases = [s for s in bases if spec_order(s) <= max_order]
    bases = sorted(set(bases), key=lambda s: (spec_order(s), str(s)))
    factors = [s for s in bases if spec_order(s) <= SCAN_PRODUCT_MAX_FACTOR]
    products = []
    for i, left in enumerate(factors):
        for right in factors[i:]:
            if spec_order(left) * spec_order(right) <= max_order:
                products.append(GroupSpec("Product",
                                          children=(left, right)))
    products.sort(key=lambda s: (spec_order(s), str(s)))
    logger.debug(f"{len(bases)} base groups and {len(products)} products "
                 f"of order <= {max_order}")
    return bases + products
