"""Deciders for the arithmetical ⇒ Gaussian ⇒ Prüfer ladder on finite rings.

Gaussianness is decided with the local two-element criterion on each local
factor; the polynomial content search is an independent cross-check only.
Arithmeticity is decided on the ideal lattice (distributivity) and
cross-checked against "principal ideals form a chain" on local factors.
Prüfer is certified by visiting every two-generated regular ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .amalgam import AmalgamRing
from .classify import LocalFactor, classify, local_decomposition, unit_mask, zero_divisor_mask
from .ideals import DEFAULT_IDEAL_CAP, IdealLattice, content, ideal_product, is_invertible
from .rings import FiniteRing, SizeCapError
from .verdict import Verdict, verdict_of

ORACLE_SEED = 0


class InternalConsistencyError(AssertionError):
    """Two independent computations of the same property disagree."""


class HierarchyViolation(AssertionError):
    pass


def lattice(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> IdealLattice:
    memo = getattr(R, "_lattice", None)
    if memo is None:
        memo = IdealLattice(R, cap, cache)
        R._lattice = memo
    return memo


def _check_cap(R: FiniteRing, cap: int) -> None:
    if R.order > cap:
        raise SizeCapError(f"{R.label} has order {R.order} > cap {cap}")


# ---------------------------------------------------------------------------
# Gaussian


@dataclass(frozen=True)
class PairVerdict:
    ok: bool
    square_id: int
    a2_id: int
    b2_id: int
    reason: str = ""


def gaussian_pair_verdict(R: FiniteRing, a: int, b: int, lat: IdealLattice | None = None) -> PairVerdict:
    """Local Gaussian criterion for one pair.

    ⟨a,b⟩² must equal ⟨a²⟩ or ⟨b²⟩; when moreover ab = 0, the equality with
    ⟨a²⟩ forces b² = 0 and the equality with ⟨b²⟩ forces a² = 0.
    """
    lat = lat or lattice(R)
    M = R.mul
    a2, ab, b2 = int(M[a, a]), int(M[a, b]), int(M[b, b])
    sq = lat.generated((a2, ab, b2))
    ia, ib = int(lat.principal_ids[a2]), int(lat.principal_ids[b2])
    if sq != ia and sq != ib:
        return PairVerdict(False, sq, ia, ib, "⟨a,b⟩² differs from ⟨a²⟩ and ⟨b²⟩")
    if ab == R.zero:
        if sq == ia and b2 != R.zero:
            return PairVerdict(False, sq, ia, ib, "ab = 0 and ⟨a,b⟩² = ⟨a²⟩ but b² ≠ 0")
        if sq == ib and a2 != R.zero:
            return PairVerdict(False, sq, ia, ib, "ab = 0 and ⟨a,b⟩² = ⟨b²⟩ but a² ≠ 0")
    return PairVerdict(True, sq, ia, ib)


def _pair_scan(R: FiniteRing, lat: IdealLattice) -> tuple[int, int] | None:
    """First (a, b), a <= b in index order, failing the local criterion."""
    n = R.order
    M, z = R.mul, R.zero
    pid = lat.principal_ids
    je = lat.join_elem
    a, b = np.triu_indices(n)
    a2, ab, b2 = M[a, a], M[a, b], M[b, b]
    sq = je[je[pid[a2], ab], b2]
    ia, ib = pid[a2], pid[b2]
    bad = (sq != ia) & (sq != ib)
    zero_ab = ab == z
    bad |= zero_ab & (sq == ia) & (b2 != z)
    bad |= zero_ab & (sq == ib) & (a2 != z)
    hits = np.nonzero(bad)[0]
    if hits.size == 0:
        return None
    i = hits[0]
    return int(a[i]), int(b[i])


@dataclass(frozen=True)
class GaussianResult:
    is_gaussian: bool
    witness: tuple[int, int] | None = None
    factor: str | None = None
    witness_in_factor: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.is_gaussian


def is_gaussian(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> GaussianResult:
    """Decide Gaussianness factor by factor.

    A witness found in a factor Re is reported both in factor coordinates
    and as elements of R (the factor embeds as Re ⊆ R).
    """
    _check_cap(R, cap)
    for fac in local_decomposition(R, cap):
        S = fac.ring
        hit = _pair_scan(S, lattice(S, cap, cache))
        if hit is not None:
            a, b = hit
            lifted = (int(fac.embedding[a]), int(fac.embedding[b]))
            return GaussianResult(False, lifted, S.label, hit)
    return GaussianResult(True)


# ---------------------------------------------------------------------------
# polynomial content oracle


def poly_mul(R: FiniteRing, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Row-wise product of coefficient arrays (shape (N, df+1) and (N, dg+1))."""
    df, dg = f.shape[1], g.shape[1]
    out = np.full((f.shape[0], df + dg - 1), R.zero, dtype=np.int64)
    for i in range(df):
        for j in range(dg):
            out[:, i + j] = R.add[out[:, i + j], R.mul[f[:, i], g[:, j]]]
    return out


def _unit_orbit_reps(R: FiniteRing, length: int) -> np.ndarray:
    """Coefficient tuples that are lexicographically least in their orbit
    under scaling by units; c(uf) = c(f) and c(uf·g) = c(fg), so these cover
    every content equation up to a unit factor."""
    n = R.order
    codes = np.arange(n**length, dtype=np.int64)
    digits = np.stack([(codes // n ** (length - 1 - k)) % n for k in range(length)], axis=1)
    best = codes.copy()
    for u in np.nonzero(unit_mask(R))[0]:
        scaled = R.mul[u][digits]
        c = np.zeros(codes.size, dtype=np.int64)
        for k in range(length):
            c = c * n + scaled[:, k]
        np.minimum(best, c, out=best)
    return digits[best == codes]


@dataclass(frozen=True)
class ContentViolation:
    f: tuple[int, ...]
    g: tuple[int, ...]
    c_fg: frozenset[int]
    cf_cg: frozenset[int]


def _content_check_batch(R, lat, F, G, cf=None, cg=None):
    """Boolean mask of rows where c(FG) != c(F)c(G)."""
    lhs = lat.fold(poly_mul(R, F, G))
    cf = lat.fold(F) if cf is None else cf
    cg = lat.fold(G) if cg is None else cg
    return lhs != lat.product_table[cf, cg]


def _violation(R: FiniteRing, f, g) -> ContentViolation:
    """Re-derive a reported violation with direct ideal computations."""
    f, g = np.asarray(f)[None, :], np.asarray(g)[None, :]
    fg = poly_mul(R, f, g)[0]
    lhs = content(R, fg.tolist())
    rhs = ideal_product(content(R, f[0].tolist()), content(R, g[0].tolist()))
    return ContentViolation(tuple(f[0].tolist()), tuple(g[0].tolist()), lhs.elements, rhs.elements)


def gaussian_content_oracle(
    R: FiniteRing,
    degree_bound: int = 2,
    budget: int = 10**6,
    seed: int = ORACLE_SEED,
    cap: int = DEFAULT_IDEAL_CAP,
    cache=None,
) -> ContentViolation | None:
    """Search for f, g of degree <= degree_bound with c(fg) != c(f)c(g).

    Exhaustive when |R|^(2(d+1)) <= budget.  The exhaustive search works on
    each local factor separately (a violation over R restricts to one over
    some factor and a factor violation embeds back into R) and only visits
    unit-scaling orbit representatives of f and g, with f <= g.  Otherwise
    ``budget`` random pairs are drawn with the given seed.

    Any pair found is re-verified with direct ideal arithmetic over R.
    """
    _check_cap(R, cap)
    length = degree_bound + 1
    if R.order ** (2 * length) <= budget:
        for fac in local_decomposition(R, cap):
            hit = _exhaustive_factor(fac, length, cap, cache)
            if hit is not None:
                f, g = (fac.embedding[np.asarray(p)] for p in hit)
                return _confirmed(R, f, g)
        return None
    rng = np.random.default_rng(seed)
    lat = lattice(R, cap, cache)
    done = 0
    while done < budget:
        k = min(budget - done, 50_000)
        F = rng.integers(0, R.order, (k, length))
        G = rng.integers(0, R.order, (k, length))
        bad = np.nonzero(_content_check_batch(R, lat, F, G))[0]
        if bad.size:
            return _confirmed(R, F[bad[0]], G[bad[0]])
        done += k
    return None


def _confirmed(R: FiniteRing, f, g) -> ContentViolation:
    v = _violation(R, f, g)
    if v.c_fg == v.cf_cg:
        raise InternalConsistencyError("oracle pair does not violate the content equation")
    return v


def _exhaustive_factor(fac: LocalFactor, length: int, cap: int, cache, chunk: int = 400_000):
    S = fac.ring
    lat = lattice(S, cap, cache)
    reps = _unit_orbit_reps(S, length)
    crep = lat.fold(reps)
    m = len(reps)
    rows_per = max(1, chunk // m)
    for start in range(0, m, rows_per):
        fi = np.arange(start, min(m, start + rows_per))
        # pairs (f, g) with f <= g in representative order
        ii = np.repeat(fi, m)
        jj = np.tile(np.arange(m), fi.size)
        keep = jj >= ii
        ii, jj = ii[keep], jj[keep]
        bad = np.nonzero(_content_check_batch(S, lat, reps[ii], reps[jj], crep[ii], crep[jj]))[0]
        if bad.size:
            k = bad[0]
            return reps[ii[k]].tolist(), reps[jj[k]].tolist()
    return None


# ---------------------------------------------------------------------------
# arithmetical


@dataclass(frozen=True)
class ArithmeticalResult:
    is_arithmetical: bool
    triple: tuple[frozenset, frozenset, frozenset] | None = None
    incomparable: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.is_arithmetical


def _distributivity_failure(lat: IdealLattice) -> tuple[int, int, int] | None:
    join, meet = lat.join, lat.meet
    for i in range(len(lat)):
        lhs = meet[i][join]  # I ∩ (J + K)
        mi = meet[i]
        rhs = join[mi[:, None], mi[None, :]]  # (I ∩ J) + (I ∩ K)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            j, k = bad[0]
            return i, int(j), int(k)
    return None


def _incomparable_principals(S: FiniteRing) -> tuple[int, int] | None:
    P = S.principal_masks
    a, b = np.triu_indices(S.order)
    le = (~P[a] | P[b]).all(axis=1)
    ge = (~P[b] | P[a]).all(axis=1)
    hits = np.nonzero(~le & ~ge)[0]
    if hits.size == 0:
        return None
    return int(a[hits[0]]), int(b[hits[0]])


def is_arithmetical(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> ArithmeticalResult:
    """Distributive ideal lattice, cross-checked with local chain rings."""
    _check_cap(R, cap)
    lat = lattice(R, cap, cache)
    fail = _distributivity_failure(lat)
    incomparable = None
    for fac in local_decomposition(R, cap):
        hit = _incomparable_principals(fac.ring)
        if hit is not None:
            incomparable = (int(fac.embedding[hit[0]]), int(fac.embedding[hit[1]]))
            break
    if (fail is None) != (incomparable is None):
        raise InternalConsistencyError(f"{R.label}: lattice and chain tests disagree on arithmeticity")
    if fail is None:
        return ArithmeticalResult(True)
    triple = tuple(lat.ideals[t].elements for t in fail)
    return ArithmeticalResult(False, triple, incomparable)


# ---------------------------------------------------------------------------
# Prüfer


@dataclass(frozen=True)
class PrueferResult:
    is_pruefer: bool
    regular_ideals_visited: int
    all_regular_equal_ring: bool
    two_generated_ideals: int
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.is_pruefer


def is_pruefer_finite(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> PrueferResult:
    """Every two-generated regular ideal is invertible.

    Invertibility is computed twice, by the colon formula (R : I)·I = R and
    by "I contains a unit"; the two must agree.
    """
    _check_cap(R, cap)
    lat = lattice(R, cap, cache)
    pid = lat.principal_ids
    a, b = np.triu_indices(R.order)
    ids = lat.join_elem[pid[a], b]
    regular = ~zero_divisor_mask(R)
    units = unit_mask(R)
    uniq, first = np.unique(ids, return_index=True)
    visited = 0
    all_R = True
    for i, pos in zip(uniq, first):
        I = lat.ideals[int(i)]
        mask = lat.masks[int(i)]
        if not (mask & regular).any():
            continue
        visited += 1
        all_R &= I.is_unit_ideal()
        inv = is_invertible(I)
        if inv != bool((mask & units).any()):
            raise InternalConsistencyError(f"{R.label}: invertibility paths disagree on {I.describe()}")
        if not inv:
            return PrueferResult(False, visited, all_R, len(uniq), (int(a[pos]), int(b[pos])))
    return PrueferResult(True, visited, all_R, len(uniq))


# ---------------------------------------------------------------------------
# reports


@dataclass
class PropertyReport:
    ring_label: str
    is_local: bool
    is_arithmetical: bool
    is_gaussian: bool
    is_pruefer: bool
    witnesses: dict[str, Any] = field(default_factory=dict)

    def triple(self) -> tuple[bool, bool, bool]:
        return (self.is_arithmetical, self.is_gaussian, self.is_pruefer)

    def to_json(self) -> dict[str, Any]:
        return {
            "ring": self.ring_label,
            "is_local": self.is_local,
            "is_arithmetical": self.is_arithmetical,
            "is_gaussian": self.is_gaussian,
            "is_pruefer": self.is_pruefer,
            "witnesses": self.witnesses,
        }


def _ideal_str(R: FiniteRing, elems: frozenset) -> str:
    return "{" + ",".join(R.fmt(x) for x in sorted(elems)) + "}"


def check_hierarchy(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> PropertyReport:
    ar = is_arithmetical(R, cap, cache)
    ga = is_gaussian(R, cap, cache)
    pr = is_pruefer_finite(R, cap, cache)
    rep = PropertyReport(R.label, classify(R, cap, cache).is_local, ar.is_arithmetical, ga.is_gaussian, pr.is_pruefer)
    if not ar:
        rep.witnesses["arithmetical"] = {
            "ideal_triple": [_ideal_str(R, t) for t in ar.triple],
            "incomparable_principal": [R.trace(x) for x in ar.incomparable],
        }
    if not ga:
        rep.witnesses["gaussian"] = {"pair": [R.trace(x) for x in ga.witness], "factor": ga.factor}
    if not pr:
        rep.witnesses["pruefer"] = {"generators": [R.trace(x) for x in pr.witness]}
    if rep.is_arithmetical and not rep.is_gaussian:
        raise HierarchyViolation(f"{R.label}: arithmetical but not Gaussian")
    if rep.is_gaussian and not rep.is_pruefer:
        raise HierarchyViolation(f"{R.label}: Gaussian but not Prüfer")
    return rep


# ---------------------------------------------------------------------------
# lifting of Gaussian polynomials from the amalgam


def _polys(R: FiniteRing, length: int, budget: int, rng) -> np.ndarray:
    total = R.order**length
    if total <= budget:
        codes = np.arange(total, dtype=np.int64)
        return np.stack([(codes // R.order ** (length - 1 - k)) % R.order for k in range(length)], axis=1)
    return rng.integers(0, R.order, (budget, length))


def bounded_gaussian(R: FiniteRing, f, degree_bound: int, budget: int, seed: int = ORACLE_SEED, cache=None):
    """First test polynomial h (degree <= bound) with c(fh) != c(f)c(h), or None."""
    lat = lattice(R, DEFAULT_IDEAL_CAP, cache)
    H = _polys(R, degree_bound + 1, budget, np.random.default_rng(seed))
    F = np.broadcast_to(np.asarray(f, dtype=np.int64), (H.shape[0], len(f)))
    bad = np.nonzero(_content_check_batch(R, lat, F, H))[0]
    return None if bad.size == 0 else tuple(H[bad[0]].tolist())


def check_lemma24(
    am: AmalgamRing, coeffs, degree_bound: int = 2, budget: int = 50_000, seed: int = ORACLE_SEED, cache=None
) -> Verdict:
    """F = Σ (a_i, f(a_i)) x^i bounded-Gaussian over the amalgam ⇒ Σ a_i x^i
    bounded-Gaussian over A.  A consistency check, not a proof: "bounded"
    means tested against every (or ``budget`` sampled) polynomial up to the
    degree bound."""
    coeffs = [int(c) for c in coeffs]
    lifted = [am.lift(a) for a in coeffs]
    big = bounded_gaussian(am.ring, lifted, degree_bound, budget, seed, cache)
    small = bounded_gaussian(am.base, coeffs, degree_bound, budget, seed, cache)
    F_ok, f_ok = big is None, small is None
    details = {
        "ring": am.ring.label,
        "coeffs": [am.base.fmt(c) for c in coeffs],
        "lifted_bounded_gaussian": F_ok,
        "base_bounded_gaussian": f_ok,
        "degree_bound": degree_bound,
    }
    witnesses = []
    if small is not None:
        witnesses.append("base test polynomial h = [" + ",".join(am.base.fmt(c) for c in small) + "]")
    if big is not None:
        witnesses.append("amalgam test polynomial H = [" + ",".join(am.ring.fmt(c) for c in big) + "]")
    return Verdict("lemma24", verdict_of(not (F_ok and not f_ok)), details, witnesses)
