"""
Permutation group kernel.

Groups are fully materialized: every element is a row of point images in a
numpy array, and the rows are sorted lexicographically so that the identity
always has index 0. A subgroup is a sorted array of element indices of its
parent group, and the bytes of that array are its canonical key.

Products compose from left to right, (a*b)[i] = b[a[i]], and conjugation is
x^g = g^-1 x g.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..config import max_elements
from ..exceptions import InputError, ResourceLimitError
from ..utils import check_prime, is_p_power, p_part

logger = logging.getLogger(__name__)

# rows multiplied per numpy call in the all-pairs loops
_CHUNK = 1 << 16


@dataclass(frozen=True)
class Permutation:
    """
    A bijection of {0, ..., degree-1} stored as its tuple of images.

    Attributes
    ----------
    images : tuple[int, ...]
        images[i] is the image of the point i.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(i) for i in self.images)
        if not images:
            raise InputError("a permutation needs at least one point")
        if sorted(images) != list(range(len(images))):
            raise InputError(f"not a bijection of 0..{len(images) - 1}: "
                             f"{images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]],
                    degree: int | None = None) -> Permutation:
        """
        Builds a permutation from cycle notation. Cycles are applied from
        left to right, so non-disjoint cycles are composed.

        Parameters
        ----------
        cycles : Sequence[Sequence[int]]
            Cycles of 0-based points, e.g. [(0, 1, 2), (3, 4)].
        degree : int | None
            Number of points; defaults to the largest point plus one.

        Returns
        -------
        Permutation
            The composed permutation.
        """
        points = [int(x) for cycle in cycles for x in cycle]
        if any(x < 0 for x in points):
            raise InputError(f"negative point in cycles {cycles}")
        top = max(points, default=0) + 1
        degree = top if degree is None else degree
        if degree < top:
            raise InputError(f"cycles {cycles} do not fit on {degree} points")
        result = cls.identity(degree)
        for cycle in cycles:
            cycle = [int(x) for x in cycle]
            if len(set(cycle)) != len(cycle):
                raise InputError(f"repeated point in cycle {cycle}")
            images = list(range(degree))
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
            result = result * cls(tuple(images))
        return result

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise InputError(f"degree mismatch: {self.degree} and "
                             f"{other.degree}")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> Permutation:
        images = [0] * self.degree
        for i, j in enumerate(self.images):
            images[j] = i
        return Permutation(tuple(images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        cycles = []
        for start in range(self.degree):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self.images[point]
            if len(cycle) > 1:
                cycles.append(tuple(cycle))
        return cycles

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() \
            else 1

    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int32)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def closure(generators: Sequence[Permutation],
            degree: int | None = None,
            limit: int | None = None) -> np.ndarray:
    """
    Computes every product of the generators.

    Parameters
    ----------
    generators : Sequence[Permutation]
        Generators, all of the same degree.
    degree : int | None
        Degree to use when the generator list is empty.
    limit : int | None
        Element cap; defaults to `config.max_elements()`.

    Returns
    -------
    np.ndarray
        (order, degree) array of images, rows sorted lexicographically.

    Raises
    ------
    InputError
        If the generators have different degrees.
    ResourceLimitError
        If the closure grows beyond the element cap.
    """
    degrees = {g.degree for g in generators}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise InputError(f"generators of mixed degree {sorted(degrees)}")
    degree = degrees.pop() if degrees else 1
    limit = max_elements() if limit is None else limit

    identity = np.arange(degree, dtype=np.int32)
    gens = [g.array() for g in generators if not g.is_identity()]
    seen = {identity.tobytes()}
    rows = [identity]
    frontier = [identity]
    while frontier and gens:
        batch = np.stack(frontier)
        fresh = []
        for g in gens:
            # right multiplication of every frontier row by g
            for row in g[batch]:
                key = row.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                fresh.append(row)
            if len(seen) > limit:
                raise ResourceLimitError(
                    f"group has more than {limit} elements "
                    f"(reached {len(seen)})", limit=limit, reached=len(seen))
        rows.extend(fresh)
        frontier = fresh
    elements = np.stack(rows)
    return elements[np.lexsort(elements.T[::-1])]


class PermGroup:
    """
    A finite permutation group with all of its elements materialized.

    Attributes
    ----------
    degree : int
        Number of points acted on.
    generators : tuple[Permutation, ...]
        The generators the group was built from.
    order : int
        Number of elements.
    name : str
        Label used in reports.
    inverse_index : np.ndarray
        inverse_index[i] is the index of the inverse of element i.
    element_orders : np.ndarray
        Order of each element.
    generator_indices : np.ndarray
        Element indices of the nontrivial generators.
    """

    def __init__(self, generators: Iterable[Permutation | Sequence[int]],
                 degree: int | None = None,
                 name: str | None = None,
                 limit: int | None = None) -> None:
        generators = [g if isinstance(g, Permutation)
                      else Permutation(tuple(g)) for g in generators]
        self._elements = closure(generators, degree, limit)
        self._elements.setflags(write=False)
        self.degree = int(self._elements.shape[1])
        self.generators = tuple(generators)
        self.order = int(self._elements.shape[0])
        self.name = name or f"<group of order {self.order}>"
        self._build_lookup()
        self.inverse_index = self.index_of(np.argsort(self._elements,
                                                      axis=1))
        self.element_orders = self._compute_orders()
        nontrivial = [g.array() for g in generators if not g.is_identity()]
        self.generator_indices = (self.index_of(np.stack(nontrivial))
                                  if nontrivial
                                  else np.zeros(0, dtype=np.int64))
        self._p_masks: dict[int, np.ndarray] = {}
        logger.debug(f"materialized {self.name}: order {self.order} on "
                     f"{self.degree} points")

    def __repr__(self) -> str:
        return f"PermGroup({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> np.ndarray:
        return self._elements

    def _build_lookup(self) -> None:
        """
        Picks points whose images tell all elements apart and encodes those
        images as one integer per element, so lookups are a binary search.
        """
        elements = self._elements.astype(np.int64)
        codes = np.zeros(self.order, dtype=np.int64)
        points = []
        distinct = 1
        radix = 1
        for point in range(self.degree):
            if distinct == self.order or radix * self.degree >= 1 << 62:
                break
            trial = codes * self.degree + elements[:, point]
            count = len(np.unique(trial))
            if count > distinct:
                points.append(point)
                codes = trial
                distinct = count
                radix *= self.degree
        if distinct == self.order:
            self._points = np.asarray(points, dtype=np.int64)
            self._code_order = np.argsort(codes, kind="stable")
            self._sorted_codes = codes[self._code_order]
            self._table = None
        else:
            self._points = None
            self._table = {row.tobytes(): i
                           for i, row in enumerate(self._elements)}

    def index_of(self, rows: np.ndarray) -> np.ndarray | int:
        """
        Looks up element indices of image rows.

        Parameters
        ----------
        rows : np.ndarray
            A single image row or a 2-d array of rows.

        Returns
        -------
        np.ndarray | int
            Indices, or a single index for a single row.

        Raises
        ------
        InputError
            If a row is not an element of the group.
        """
        rows = np.asarray(rows)
        single = rows.ndim == 1
        rows = rows.reshape(-1, self.degree) if rows.size else \
            np.zeros((0, self.degree), dtype=np.int32)
        if self._points is not None:
            codes = np.zeros(len(rows), dtype=np.int64)
            for point in self._points:
                codes = codes * self.degree + rows[:, point].astype(np.int64)
            pos = np.minimum(np.searchsorted(self._sorted_codes, codes),
                             self.order - 1)
            idx = self._code_order[pos]
            found = (self._sorted_codes[pos] == codes) & \
                (self._elements[idx] == rows).all(axis=1)
        else:
            rows = np.ascontiguousarray(rows, dtype=np.int32)
            idx = np.asarray([self._table.get(row.tobytes(), -1)
                              for row in rows], dtype=np.int64)
            found = idx >= 0
        if not found.all():
            raise InputError(f"permutation is not an element of {self.name}")
        return int(idx[0]) if single else idx.astype(np.int64)

    def _compute_orders(self) -> np.ndarray:
        identity = self._elements[0]
        orders = np.ones(self.order, dtype=np.int64)
        power = self._elements.copy()
        pending = np.flatnonzero((power != identity).any(axis=1))
        step = 1
        while pending.size:
            step += 1
            power[pending] = np.take_along_axis(self._elements[pending],
                                                power[pending], axis=1)
            done = (power[pending] == identity).all(axis=1)
            orders[pending[done]] = step
            pending = pending[~done]
        return orders

    def permutation(self, index: int) -> Permutation:
        return Permutation(tuple(int(i) for i in self._elements[index]))

    def index_of_permutation(self, perm: Permutation) -> int:
        if perm.degree != self.degree:
            raise InputError(f"degree mismatch: {perm.degree} and "
                             f"{self.degree}")
        return self.index_of(perm.array())

    def multiply(self, a, b) -> np.ndarray:
        """Element-wise products a*b of two broadcastable index arrays."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64),
                                   np.asarray(b, dtype=np.int64))
        shape = a.shape
        a, b = a.ravel(), b.ravel()
        out = np.empty(a.size, dtype=np.int64)
        for start in range(0, a.size, _CHUNK):
            stop = start + _CHUNK
            rows = np.take_along_axis(self._elements[b[start:stop]],
                                      self._elements[a[start:stop]], axis=1)
            out[start:stop] = self.index_of(rows)
        return out.reshape(shape)

    def power(self, indices, exponent: int) -> np.ndarray:
        """Element-wise powers x**exponent, exponent >= 0."""
        indices = np.asarray(indices, dtype=np.int64)
        result = np.zeros_like(indices)
        base = indices
        while exponent:
            if exponent & 1:
                result = self.multiply(result, base)
            exponent >>= 1
            if exponent:
                base = self.multiply(base, base)
        return result

    def conjugate(self, x, g: int) -> np.ndarray:
        """The conjugates x^g of the elements x by the single element g."""
        x = np.asarray(x, dtype=np.int64)
        g_row = self._elements[g]
        g_inv = self._elements[self.inverse_index[g]]
        rows = g_row[self._elements[x.ravel()][:, g_inv]]
        return self.index_of(rows).reshape(x.shape)

    def conjugate_by_each(self, x: int, g) -> np.ndarray:
        """The conjugates x^g of the single element x by each element g."""
        g = np.asarray(g, dtype=np.int64)
        out = np.empty(g.size, dtype=np.int64)
        x_row = self._elements[x]
        for start in range(0, g.size, _CHUNK):
            chunk = g[start:start + _CHUNK]
            g_inv = self._elements[self.inverse_index[chunk]]
            rows = np.take_along_axis(self._elements[chunk], x_row[g_inv],
                                      axis=1)
            out[start:start + _CHUNK] = self.index_of(rows)
        return out

    def commutes(self, a, b) -> np.ndarray:
        return self.multiply(a, b) == self.multiply(b, a)

    def p_element_mask(self, p: int) -> np.ndarray:
        """Boolean mask of the elements of p-power order."""
        if p not in self._p_masks:
            rest = self.element_orders.copy()
            divisible = rest % p == 0
            while divisible.any():
                rest[divisible] //= p
                divisible = rest % p == 0
            self._p_masks[p] = rest == 1
        return self._p_masks[p]

    def _close(self, span: np.ndarray, gens: Sequence[int]) -> np.ndarray:
        gens = np.asarray(gens, dtype=np.int64)
        frontier = np.flatnonzero(span)
        while frontier.size:
            products = np.unique(self.multiply(frontier[:, None],
                                               gens[None, :]))
            fresh = products[~span[products]]
            span[fresh] = True
            frontier = fresh
        return span

    def generate(self, gens: Iterable[int]) -> Subgroup:
        """
        The subgroup generated by a list of element indices. Generators that
        already lie in the span of the earlier ones are dropped.
        """
        span = np.zeros(self.order, dtype=bool)
        span[0] = True
        kept = []
        for g in gens:
            g = int(g)
            if span[g]:
                continue
            kept.append(g)
            span = self._close(span, kept)
        return Subgroup(self, np.flatnonzero(span), generators=kept)

    def subgroup(self, perms: Iterable[Permutation]) -> Subgroup:
        return self.generate(self.index_of_permutation(g) for g in perms)

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, np.arange(self.order),
                        generators=self.generator_indices)

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, [0], generators=())

    def is_abelian(self) -> bool:
        gens = self.generator_indices
        return bool(self.commutes(gens[:, None], gens[None, :]).all())


class Subgroup:
    """
    A subgroup of a materialized group, given by its sorted element indices.

    Attributes
    ----------
    parent : PermGroup
        The ambient group.
    indices : np.ndarray
        Sorted element indices; index 0 (the identity) is always present.
    order : int
        Number of elements.
    key : bytes
        Canonical key, the bytes of `indices`.
    """

    def __init__(self, parent: PermGroup, indices,
                 generators: Iterable[int] | None = None) -> None:
        indices = np.unique(np.asarray(indices, dtype=np.int64))
        indices.setflags(write=False)
        self.parent = parent
        self.indices = indices
        self.order = int(indices.size)
        self.key = indices.tobytes()
        if generators is not None:
            self.__dict__["generators"] = tuple(int(g) for g in generators
                                                if int(g) != 0)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.name})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent \
            and other.key == self.key

    def __hash__(self) -> int:
        return hash((id(self.parent), self.key))

    def __len__(self) -> int:
        return self.order

    def __contains__(self, index: int) -> bool:
        return bool(self.mask[index])

    @cached_property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[self.indices] = True
        mask.setflags(write=False)
        return mask

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A short generating set, picked greedily in index order."""
        span = np.zeros(self.parent.order, dtype=bool)
        span[0] = True
        gens = []
        for index in self.indices:
            if span[index]:
                continue
            gens.append(int(index))
            span = self.parent._close(span, gens)
        return tuple(gens)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return self.order <= other.order and \
            bool(other.mask[self.indices].all())

    def permutations(self) -> list[Permutation]:
        return [self.parent.permutation(i) for i in self.indices]

    def to_group(self, name: str | None = None) -> PermGroup:
        """The subgroup as a permutation group in its own right."""
        perms = [self.parent.permutation(g) for g in self.generators]
        return PermGroup(perms, degree=self.parent.degree,
                         name=name or f"subgroup of {self.parent.name}")


def _check_parent(group: PermGroup, *subgroups: Subgroup) -> None:
    for H in subgroups:
        if H.parent is not group:
            raise InputError(f"{H!r} is not a subgroup of {group.name}")


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    """The conjugate H^g = g^-1 H g."""
    G = H.parent
    return Subgroup(G, G.conjugate(H.indices, g),
                    generators=G.conjugate(np.asarray(H.generators,
                                                      dtype=np.int64), g))


def conjugates(group: PermGroup, H: Subgroup,
               within: Subgroup | None = None) -> list[Subgroup]:
    """
    The conjugacy class of H under `within` (default: the whole group),
    found as the orbit of H under the generators.
    """
    _check_parent(group, H)
    gens = group.generator_indices if within is None else within.generators
    orbit = {H.key: H}
    queue = [H]
    while queue:
        K = queue.pop()
        for g in gens:
            L = conjugate_subgroup(K, g)
            if L.key not in orbit:
                orbit[L.key] = L
                queue.append(L)
    return list(orbit.values())


def centralizer(group: PermGroup, H: Subgroup,
                within: Subgroup | None = None) -> Subgroup:
    """
    The centralizer C_G(H), or C_W(H) when `within` is the subgroup W.

    Raises
    ------
    InputError
        If H (or W) is not a subgroup of `group`.
    """
    within = group.whole if within is None else within
    _check_parent(group, H, within)
    candidates = within.indices
    for h in H.generators:
        candidates = candidates[group.conjugate_by_each(h, candidates) == h]
    return Subgroup(group, candidates)


def normalizer(group: PermGroup, H: Subgroup,
               within: Subgroup | None = None) -> Subgroup:
    """The normalizer N_G(H), or N_W(H) when `within` is the subgroup W."""
    within = group.whole if within is None else within
    _check_parent(group, H, within)
    candidates = within.indices
    for h in H.generators:
        candidates = candidates[H.mask[group.conjugate_by_each(h,
                                                               candidates)]]
    return Subgroup(group, candidates)


def transporter(group: PermGroup, H: Subgroup, K: Subgroup,
                within: Subgroup | None = None) -> np.ndarray:
    """
    The transporter N_G(H, K) = {g : H^g <= K} as sorted element indices.

    Raises
    ------
    InputError
        If H or K belongs to another group.
    """
    within = group.whole if within is None else within
    _check_parent(group, H, K, within)
    if H.order > K.order or K.order % H.order:
        return np.zeros(0, dtype=np.int64)
    candidates = within.indices
    for h in H.generators:
        candidates = candidates[K.mask[group.conjugate_by_each(h,
                                                               candidates)]]
    return candidates


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    return Subgroup(A.parent, np.intersect1d(A.indices, B.indices))


def centre(H: Subgroup) -> Subgroup:
    return centralizer(H.parent, H, within=H)


def frattini(K: Subgroup, p: int) -> Subgroup:
    """
    The Frattini subgroup [K, K] K^p of a p-group K.

    Raises
    ------
    InputError
        If K is not a p-group.
    """
    check_prime(p)
    if not is_p_power(K.order, p):
        raise InputError(f"subgroup of order {K.order} is not a {p}-group")
    G = K.parent
    gens = set(np.unique(G.power(K.indices, p)).tolist())
    elements = K.indices
    inverses = G.inverse_index[elements]
    for start in range(0, elements.size, max(1, _CHUNK // elements.size)):
        a = elements[start:start + max(1, _CHUNK // elements.size)]
        a_inv = G.inverse_index[a]
        left = G.multiply(a_inv[:, None], inverses[None, :])
        right = G.multiply(a[:, None], elements[None, :])
        gens.update(np.unique(G.multiply(left, right)).tolist())
    gens.discard(0)
    return G.generate(sorted(gens))


def p_residual(C: Subgroup, p: int) -> Subgroup:
    """O^p(C): the subgroup generated by the elements of order prime to p."""
    check_prime(p)
    G = C.parent
    orders = G.element_orders[C.indices]
    return G.generate(C.indices[orders % p != 0])


def sylow(group: PermGroup, p: int,
          within: Subgroup | None = None) -> Subgroup:
    """
    A Sylow p-subgroup of the group (or of the subgroup `within`), grown
    from the identity by adjoining the smallest p-element of the normalizer
    that lies outside the current subgroup.
    """
    check_prime(p)
    within = group.whole if within is None else within
    _check_parent(group, within)
    target = p_part(within.order, p)
    p_elements = group.p_element_mask(p)
    S = group.trivial
    while S.order < target:
        N = normalizer(group, S, within=within)
        candidates = N.indices[p_elements[N.indices] & ~S.mask[N.indices]]
        S = group.generate(list(S.generators) + [int(candidates[0])])
    logger.debug(f"Sylow {p}-subgroup of order {S.order} in {group.name}")
    return S


def p_core(group: PermGroup, p: int,
           within: Subgroup | None = None) -> Subgroup:
    """O_p(G), or O_p(W) for W = `within`: the intersection of the Sylow
    p-subgroups."""
    P = sylow(group, p, within=within)
    core = P.mask.copy()
    for Q in conjugates(group, P, within=within):
        core &= Q.mask
    return Subgroup(group, np.flatnonzero(core))


def is_normal(N: Subgroup, M: Subgroup) -> bool:
    """Whether M is a normal subgroup of N."""
    if not M.is_subgroup_of(N):
        return False
    G = N.parent
    for g in N.generators:
        if not M.mask[G.conjugate(np.asarray(M.generators, dtype=np.int64),
                                  g)].all():
            return False
    return True


def conjugation_orbits(group: PermGroup, points: np.ndarray,
                       acting: Iterable[int]) -> list[tuple[int, int]]:
    """
    Orbits of a set of elements under conjugation by the elements `acting`
    (usually generators), as (smallest index, orbit size) pairs in
    increasing order. The set must be closed under the action.
    """
    points = np.asarray(points, dtype=np.int64)
    labels = np.arange(points.size)
    maps = []
    for g in acting:
        image = np.searchsorted(points, group.conjugate(points, int(g)))
        maps.extend([image, np.argsort(image)])
    changed = bool(maps)
    while changed:
        changed = False
        for image in maps:
            lowered = np.minimum(labels, labels[image])
            if (lowered != labels).any():
                labels = lowered
                changed = True
    reps, sizes = np.unique(labels, return_counts=True)
    return [(int(points[r]), int(s)) for r, s in zip(reps, sizes)]


def element_classes(group: PermGroup) -> list[tuple[int, int]]:
    """
    Conjugacy classes of elements as (smallest index, class size) pairs,
    in increasing order of the smallest index.
    """
    return conjugation_orbits(group, np.arange(group.order),
                              group.generator_indices)


class QuotientGroup(PermGroup):
    """
    The quotient N/M as the permutation group induced by N on the cosets
    of M.

    Attributes
    ----------
    source : Subgroup
        The subgroup N.
    kernel : Subgroup
        The normal subgroup M.
    projection : np.ndarray
        projection[n] is the quotient element of n in N, -1 outside N.
    """

    def __init__(self, N: Subgroup, M: Subgroup,
                 name: str | None = None) -> None:
        if M.parent is not N.parent:
            raise InputError("quotient of subgroups of different groups")
        if not is_normal(N, M):
            raise InputError(f"subgroup of order {M.order} is not normal "
                             f"in subgroup of order {N.order}")
        parent = N.parent
        labels = np.full(parent.order, -1, dtype=np.int64)
        representatives = []
        for n in N.indices:
            if labels[n] >= 0:
                continue
            coset = parent.multiply(np.full(M.order, n), M.indices)
            labels[coset] = len(representatives)
            representatives.append(int(n))
        representatives = np.asarray(representatives, dtype=np.int64)
        actions = [Permutation(tuple(labels[parent.multiply(representatives,
                                                             g)]))
                   for g in N.generators]
        super().__init__(actions, degree=len(representatives),
                         name=name or f"{parent.name} quotient "
                                      f"{N.order}/{M.order}")
        self.source = N
        self.kernel = M
        # the coset of the identity has label 0, so the quotient element of
        # n is the one moving point 0 to the label of n
        by_image = np.empty(self.order, dtype=np.int64)
        by_image[self.elements[:, 0]] = np.arange(self.order)
        self.projection = np.full(parent.order, -1, dtype=np.int64)
        self.projection[N.indices] = by_image[labels[N.indices]]

    def push(self, H: Subgroup) -> Subgroup:
        """The image of a subgroup H <= N."""
        if not H.is_subgroup_of(self.source):
            raise InputError("only subgroups of the numerator can be pushed")
        return Subgroup(self, self.projection[H.indices])

    def pull(self, S: Subgroup) -> Subgroup:
        """The full preimage in N of a subgroup of the quotient."""
        if S.parent is not self:
            raise InputError("subgroup does not belong to this quotient")
        N = self.source
        return Subgroup(N.parent,
                        N.indices[S.mask[self.projection[N.indices]]])


def quotient_group(N: Subgroup, M: Subgroup) -> QuotientGroup:
    return QuotientGroup(N, M)
