"""Element classification, maximal ideals, locality and local decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ideals import DEFAULT_IDEAL_CAP, Ideal, all_ideals
from .rings import (
    FiniteRing,
    RingHom,
    SizeCapError,
    make_hom,
    make_product,
    subring_from_elements,
)


@dataclass(frozen=True)
class ClassifiedRing:
    ring: FiniteRing = field(repr=False)
    zero_divisors: frozenset[int]
    units: frozenset[int]
    regulars: frozenset[int]
    nilpotents: frozenset[int]
    maximal_ideals: tuple[Ideal, ...]
    radical: Ideal
    is_local: bool

    @property
    def maximal_ideal(self) -> Ideal:
        if not self.is_local:
            raise ValueError(f"{self.ring.label} is not local")
        return self.maximal_ideals[0]


def zero_divisor_mask(R: FiniteRing) -> np.ndarray:
    """x is a zero divisor iff xy = 0 for some y != 0 (so 0 counts)."""
    hits = R.mul == R.zero
    hits[:, R.zero] = False
    out = hits.any(axis=1)
    out[R.zero] = True
    return out


def unit_mask(R: FiniteRing) -> np.ndarray:
    return (R.mul == R.one).any(axis=1)


def nilpotent_mask(R: FiniteRing) -> np.ndarray:
    x = np.arange(R.order)
    p = x.copy()
    for _ in range(R.order.bit_length()):
        p = R.mul[p, p]
    return p == R.zero


def maximal_ideals(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> list[Ideal]:
    proper = [I for I in all_ideals(R, cap, cache) if not I.is_unit_ideal()]
    return [I for I in proper if not any(I < J for J in proper)]


def _classify(R: FiniteRing, cap: int, cache) -> ClassifiedRing:
    zd = zero_divisor_mask(R)
    units = unit_mask(R)
    maxes = maximal_ideals(R, cap, cache)
    rad = frozenset(range(R.order))
    for m in maxes:
        rad &= m.elements
    radical = next(I for I in all_ideals(R, cap, cache) if I.elements == rad)
    as_set = lambda m: frozenset(int(i) for i in np.nonzero(m)[0])  # noqa: E731
    regulars = as_set(~zd)
    units_s = as_set(units)
    if units_s != regulars:
        raise AssertionError(f"{R.label}: regular elements differ from units")
    local_by_max = len(maxes) == 1
    if local_by_max != nonunits_additively_closed(R):
        raise AssertionError(f"{R.label}: locality tests disagree")
    return ClassifiedRing(
        ring=R,
        zero_divisors=as_set(zd),
        units=units_s,
        regulars=regulars,
        nilpotents=as_set(nilpotent_mask(R)),
        maximal_ideals=tuple(maxes),
        radical=radical,
        is_local=local_by_max,
    )


def classify(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> ClassifiedRing:
    """Exhaustive classification; memoised on the ring object."""
    if R.order > cap:
        raise SizeCapError(f"{R.label} has order {R.order} > cap {cap}")
    memo = getattr(R, "_classified", None)
    if memo is None:
        memo = _classify(R, cap, cache)
        R._classified = memo
    return memo


def nonunits_additively_closed(R: FiniteRing) -> bool:
    nu = np.nonzero(~unit_mask(R))[0]
    return bool((~unit_mask(R))[R.add[nu[:, None], nu[None, :]]].all())


def is_local(R: FiniteRing) -> bool:
    return classify(R).is_local


def idempotents(R: FiniteRing) -> list[int]:
    x = np.arange(R.order)
    return [int(e) for e in x[R.mul[x, x] == x]]


def primitive_idempotents(R: FiniteRing) -> list[int]:
    ids = [e for e in idempotents(R) if e != R.zero]
    # e is primitive iff no nonzero idempotent f != e satisfies ef = f
    return [e for e in ids if not any(f != e and R.mul[e, f] == f for f in ids)]


@dataclass(frozen=True)
class LocalFactor:
    ring: FiniteRing
    projection: RingHom
    idempotent: int
    embedding: np.ndarray = field(repr=False)


def local_decomposition(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP) -> list[LocalFactor]:
    """Split R as a product of local rings Re over its primitive idempotents.

    The map r ↦ (re_1, ..., re_k) is checked to be an isomorphism onto the
    product of the factors.
    """
    if R.order > cap:
        raise SizeCapError(f"{R.label} has order {R.order} > cap {cap}")
    prims = primitive_idempotents(R)
    if len(prims) == 1:
        return [LocalFactor(R, make_hom(R, R, np.arange(R.order), name="id"), R.one, np.arange(R.order))]
    factors = []
    for k, e in enumerate(prims):
        elems = np.unique(R.mul[e])
        S, emb = subring_from_elements(R, elems, e, label=f"{R.label}·e{k + 1}")
        pos = np.full(R.order, -1, dtype=np.int64)
        pos[emb] = np.arange(emb.size)
        proj = make_hom(R, S, pos[R.mul[e]], name=f"·e{k + 1}")
        factors.append(LocalFactor(S, proj, e, emb))
    _verify_decomposition(R, factors)
    return factors


def _verify_decomposition(R: FiniteRing, factors: list[LocalFactor]) -> None:
    P = factors[0].ring
    code = factors[0].projection.table.astype(np.int64)
    for f in factors[1:]:
        P = make_product(P, f.ring)
        code = code * f.ring.order + f.projection.table
    if P.order != R.order or np.unique(code).size != R.order:
        raise AssertionError(f"{R.label}: local factors do not recombine to R")
    make_hom(R, P, code, name="crt")


def is_torsion_module(A: FiniteRing, f: RingHom, J: Ideal) -> bool:
    """Every j in J is killed by f(r) for some regular r of A."""
    return torsion_witness(A, f, J) is None


def torsion_witness(A: FiniteRing, f: RingHom, J: Ideal) -> int | None:
    """An element of J annihilated by no regular element of A, or None."""
    B = f.target
    regs = np.nonzero(~zero_divisor_mask(A))[0]
    images = f.table[regs]
    for j in sorted(J.elements):
        if not (B.mul[images, j] == B.zero).any():
            return j
    return None
