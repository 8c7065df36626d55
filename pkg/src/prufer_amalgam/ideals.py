"""Ideals of finite rings: closure, lattice enumeration, colon and invertibility.

An ideal is stored as its full element set; two ideals are equal when their
element sets agree, whatever generators produced them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .rings import FiniteRing, RingMismatchError, SizeCapError

DEFAULT_IDEAL_CAP = 256


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: FiniteRing = field(repr=False)
    generators: tuple[int, ...]
    elements: frozenset[int] = field(repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.elements == other.elements and self.ring.digest == other.ring.digest

    def __hash__(self) -> int:
        return hash(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __le__(self, other: Ideal) -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: Ideal) -> bool:
        return self.elements < other.elements

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    @property
    def index_array(self) -> np.ndarray:
        return np.array(sorted(self.elements), dtype=np.int64)

    def is_zero(self) -> bool:
        return self.elements == {self.ring.zero}

    def is_unit_ideal(self) -> bool:
        return len(self.elements) == self.ring.order

    def sort_key(self) -> tuple:
        return (len(self.elements), tuple(sorted(self.elements)))

    def describe(self) -> str:
        gens = ",".join(self.ring.fmt(g) for g in self.generators) or self.ring.fmt(self.ring.zero)
        return f"({gens})"


def _sum_mask(R: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Membership mask of the additive subgroup sum of two subgroups."""
    ia, ib = np.nonzero(a)[0], np.nonzero(b)[0]
    out = np.zeros(R.order, dtype=bool)
    out[R.add[ia[:, None], ib[None, :]].ravel()] = True
    return out


def closure_mask(R: FiniteRing, gens: Iterable[int]) -> np.ndarray:
    """Mask of the ideal generated by ``gens``: the sum of principal ideals."""
    out = np.zeros(R.order, dtype=bool)
    out[R.zero] = True
    for g in gens:
        if not out[g] or not out[R.principal_masks[g]].all():
            out = _sum_mask(R, out, R.principal_masks[g])
    return out


def _from_mask(R: FiniteRing, mask: np.ndarray, gens: Sequence[int]) -> Ideal:
    return Ideal(R, tuple(int(g) for g in gens), frozenset(int(i) for i in np.nonzero(mask)[0]))


def ideal_closure(R: FiniteRing, gens: Iterable[int]) -> Ideal:
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < R.order:
            raise ValueError(f"generator {g} is not an element of {R.label}")
    return _from_mask(R, closure_mask(R, gens), gens)


def principal(R: FiniteRing, x: int) -> Ideal:
    return _from_mask(R, R.principal_masks[x], [x])


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, (), frozenset({R.zero}))


def unit_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, (R.one,), frozenset(range(R.order)))


def _same_ring(I: Ideal, J: Ideal) -> None:
    if I.ring is not J.ring and I.ring.digest != J.ring.digest:
        raise RingMismatchError("ideals live in different rings")


def ideal_combine(kind: str, I: Ideal, J: Ideal) -> Ideal:
    """Sum, product or intersection of two ideals of the same ring."""
    _same_ring(I, J)
    R = I.ring
    if kind == "sum":
        gens = I.generators + J.generators
        return _from_mask(R, _sum_mask(R, I.mask, J.mask), gens)
    if kind == "product":
        gens = [int(R.mul[a, b]) for a in I.generators for b in J.generators]
        return _from_mask(R, closure_mask(R, gens), gens)
    if kind == "intersection":
        elems = I.elements & J.elements
        mask = I.mask & J.mask
        out = Ideal(R, _small_generators(R, mask), elems)
        if not (closure_mask(R, sorted(elems)) == mask).all():
            raise AssertionError("intersection of ideals is not an ideal")
        return out
    raise ValueError(f"unknown ideal operation {kind!r}")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return ideal_combine("sum", I, J)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return ideal_combine("product", I, J)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    return ideal_combine("intersection", I, J)


def _check_cap(R: FiniteRing, cap: int) -> None:
    if R.order > cap:
        raise SizeCapError(f"{R.label} has order {R.order} > cap {cap}")


def enumerate_ideal_masks(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP) -> list[bytes]:
    """Every ideal of R as a packed membership mask, via join closure.

    Starting from the distinct principal ideals, repeatedly adds a principal
    ideal to each known ideal until no new set appears.
    """
    _check_cap(R, cap)
    principals: dict[bytes, np.ndarray] = {}
    for x in R.elements():
        m = R.principal_masks[x]
        principals.setdefault(np.packbits(m).tobytes(), m)
    seen: dict[bytes, np.ndarray] = dict(principals)
    frontier = list(principals.values())
    prin = list(principals.values())
    while frontier:
        nxt = []
        for I in frontier:
            for P in prin:
                if (P <= I).all():
                    continue
                S = _sum_mask(R, I, P)
                key = np.packbits(S).tobytes()
                if key not in seen:
                    seen[key] = S
                    nxt.append(S)
        frontier = nxt
    return list(seen)


def _unpack(R: FiniteRing, key: bytes) -> np.ndarray:
    return np.unpackbits(np.frombuffer(key, dtype=np.uint8))[: R.order].astype(bool)


def all_ideals(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> list[Ideal]:
    """All ideals of R sorted by (size, element tuple).

    ``cache`` is an optional object with ``load(R)`` / ``store(R, masks)``
    (see :mod:`prufer_amalgam.cache`).
    """
    _check_cap(R, cap)
    memo = getattr(R, "_all_ideals", None)
    if memo is not None:
        return memo
    keys = cache.load(R) if cache is not None else None
    if keys is None:
        keys = enumerate_ideal_masks(R, cap)
        if cache is not None:
            cache.store(R, keys)
    ideals = []
    for key in keys:
        mask = _unpack(R, key)
        elems = np.nonzero(mask)[0]
        ideals.append(Ideal(R, _small_generators(R, mask), frozenset(int(e) for e in elems)))
    ideals.sort(key=Ideal.sort_key)
    R._all_ideals = ideals
    return ideals


def _small_generators(R: FiniteRing, mask: np.ndarray) -> tuple[int, ...]:
    """A greedy generating set, preferring elements with large principal ideals."""
    elems = np.nonzero(mask)[0]
    sizes = R.principal_masks[elems].sum(axis=1)
    order = elems[np.lexsort((elems, -sizes))]
    cur = np.zeros(R.order, dtype=bool)
    cur[R.zero] = True
    gens = []
    for x in order:
        if cur[x]:
            continue
        gens.append(int(x))
        cur = _sum_mask(R, cur, R.principal_masks[x])
        if (cur == mask).all():
            break
    return tuple(gens)


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {r : rJ ⊆ I}."""
    _same_ring(I, J)
    R = I.ring
    gens = list(J.generators) or [R.zero]
    inside = I.mask[R.mul[:, gens]].all(axis=1)
    elems = frozenset(int(r) for r in np.nonzero(inside)[0])
    return Ideal(R, _small_generators(R, inside), elems)


def is_invertible(I: Ideal) -> bool:
    """(R : I)·I = R.

    For a finite ring the total quotient ring is the ring itself, so the colon
    is taken in R.
    """
    R = I.ring
    return ideal_product(colon_ideal(unit_ideal(R), I), I).is_unit_ideal()


def content(R: FiniteRing, coeffs: Sequence[int]) -> Ideal:
    """Ideal generated by the coefficients of a polynomial."""
    return ideal_closure(R, coeffs)


class IdealLattice:
    """The ideal lattice of a ring with integer ids and join/meet tables.

    Ids follow the canonical order of :func:`all_ideals`.  ``join_elem[i, x]``
    is the id of I_i + (x); ``join[i, k]`` and ``meet[i, k]`` are the lattice
    operations on ids.  Tables are derived from the containment matrix: the
    join is the smallest ideal containing both, the meet the largest ideal
    inside both.
    """

    def __init__(self, R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP, cache=None):
        self.ring = R
        self.ideals = all_ideals(R, cap, cache)
        masks = np.array([I.mask for I in self.ideals])
        self.masks = masks
        self.sizes = masks.sum(axis=1)
        self._by_key = {np.packbits(m).tobytes(): i for i, m in enumerate(masks)}
        # contains[k, i]: ideal k ⊇ ideal i
        m = masks.astype(np.int32)
        self.contains = (m @ m.T) == self.sizes[None, :]
        self.zero_id = self.id_of_mask(np.eye(1, R.order, R.zero, dtype=bool)[0])
        self.unit_id = len(self.ideals) - 1
        self._join_elem = None
        self._join = None
        self._meet = None
        self._product = None

    def __len__(self) -> int:
        return len(self.ideals)

    def id_of_mask(self, mask: np.ndarray) -> int:
        return self._by_key[np.packbits(mask).tobytes()]

    def id_of(self, I: Ideal) -> int:
        return self.id_of_mask(I.mask)

    @property
    def join_elem(self) -> np.ndarray:
        if self._join_elem is None:
            big = np.iinfo(np.int64).max
            out = np.empty((len(self), self.ring.order), dtype=np.int64)
            for i in range(len(self)):
                cand = self.contains[:, i][:, None] & self.masks
                score = np.where(cand, self.sizes[:, None], big)
                out[i] = score.argmin(axis=0)
            self._join_elem = out
        return self._join_elem

    @property
    def principal_ids(self) -> np.ndarray:
        return self.join_elem[self.zero_id]

    @property
    def join(self) -> np.ndarray:
        if self._join is None:
            big = np.iinfo(np.int64).max
            both = self.contains[:, :, None] & self.contains[:, None, :]
            self._join = np.where(both, self.sizes[:, None, None], big).argmin(axis=0)
        return self._join

    @property
    def meet(self) -> np.ndarray:
        if self._meet is None:
            # ideal k ⊆ i  <=>  contains[i, k]
            both = self.contains.T[:, :, None] & self.contains.T[:, None, :]
            self._meet = np.where(both, self.sizes[:, None, None], -1).argmax(axis=0)
        return self._meet

    def generated(self, elems) -> int:
        i = self.zero_id
        je = self.join_elem
        for x in elems:
            i = int(je[i, x])
        return i

    def fold(self, coeffs: np.ndarray) -> np.ndarray:
        """Ids of the ideals generated by each row of ``coeffs``."""
        je = self.join_elem
        ids = np.full(coeffs.shape[0], self.zero_id, dtype=np.int64)
        for c in range(coeffs.shape[1]):
            ids = je[ids, coeffs[:, c]]
        return ids

    @property
    def product_table(self) -> np.ndarray:
        if self._product is None:
            R, n = self.ring, len(self)
            out = np.empty((n, n), dtype=np.int64)
            for i in range(n):
                gi = np.array(self.ideals[i].generators or (R.zero,))
                for k in range(i, n):
                    gk = np.array(self.ideals[k].generators or (R.zero,))
                    out[i, k] = out[k, i] = self.generated(R.mul[gi[:, None], gk[None, :]].ravel())
            self._product = out
        return self._product

    def product(self, i: int, k: int) -> int:
        return int(self.product_table[i, k])
