"""The amalgamation A ⋈^f J = {(a, f(a) + j) : a ∈ A, j ∈ J} ⊆ A × B.

Besides the construction this module checks, on finite instances, the
zero-divisor description (four-set formula and its three sufficient
hypotheses), the locality criterion, the shape of the maximal spectrum and
the isomorphism A ≅ (A ⋈^f J)/(0 × J).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classify import classify, is_torsion_module, torsion_witness, zero_divisor_mask
from .ideals import DEFAULT_IDEAL_CAP, Ideal, ideal_closure
from .rings import (
    FiniteRing,
    ImproperIdealError,
    RingHom,
    RingMismatchError,
    identity_hom,
    make_hom,
    make_quotient,
)
from .verdict import FAIL, INFO, PASS, Verdict, verdict_of


@dataclass(frozen=True)
class AmalgamRing:
    base: FiniteRing
    target: FiniteRing
    hom: RingHom
    J: Ideal
    ring: FiniteRing
    a_of: np.ndarray = field(repr=False)
    b_of: np.ndarray = field(repr=False)
    j_of: np.ndarray = field(repr=False)

    @property
    def first_projection(self) -> RingHom:
        return make_hom(self.ring, self.base, self.a_of, name="p1")

    @property
    def second_projection(self) -> RingHom:
        return make_hom(self.ring, self.target, self.b_of, name="p2")

    def element(self, a: int, b: int) -> int:
        """Index of the pair (a, b); raises if it is not in the amalgam."""
        hit = np.nonzero((self.a_of == a) & (self.b_of == b))[0]
        if hit.size == 0:
            raise ValueError(f"({self.base.fmt(a)},{self.target.fmt(b)}) is not in {self.ring.label}")
        return int(hit[0])

    def from_param(self, a: int, j: int) -> int:
        """Index of (a, f(a) + j)."""
        return self.element(a, int(self.target.add[self.hom(a), j]))

    def lift(self, a: int) -> int:
        """(a, f(a)), the diagonal copy of a."""
        return self.element(a, self.hom(a))

    def subset_where(self, mask_on_pairs: np.ndarray) -> frozenset[int]:
        return frozenset(int(i) for i in np.nonzero(mask_on_pairs)[0])


def _wrap(label: str) -> str:
    return f"({label})" if " " in label else label


def make_amalgamation(A: FiniteRing, B: FiniteRing, f: RingHom, J: Ideal) -> AmalgamRing:
    if f.source.digest != A.digest or f.target.digest != B.digest:
        raise RingMismatchError("f must map A to B")
    if J.ring.digest != B.digest:
        raise RingMismatchError("J must be an ideal of B")
    if J.is_unit_ideal():
        raise ImproperIdealError("J must be a proper ideal of B")
    nA, nB = A.order, B.order
    js = J.index_array
    aa = np.repeat(np.arange(nA), js.size)
    jj = np.tile(js, nA)
    bb = B.add[f.table[aa], jj]
    order = np.lexsort((bb, aa))
    aa, bb, jj = aa[order], bb[order], jj[order]
    code = aa.astype(np.int64) * nB + bb
    if np.unique(code).size != code.size:
        raise AssertionError("(a, j) ↦ (a, f(a)+j) is not injective")
    pos = np.full(nA * nB, -1, dtype=np.int64)
    pos[code] = np.arange(code.size)
    add = pos[A.add[aa[:, None], aa[None, :]] * nB + B.add[bb[:, None], bb[None, :]]]
    mul = pos[A.mul[aa[:, None], aa[None, :]] * nB + B.mul[bb[:, None], bb[None, :]]]
    neg = pos[A.neg[aa] * nB + B.neg[bb]]
    if (add < 0).any() or (mul < 0).any() or (neg < 0).any():
        raise AssertionError("amalgam carrier is not a subring of A × B")
    if f.name == "id" and A.digest == B.digest:
        label = f"{_wrap(A.label)} ⋈ {J.describe()}"
    else:
        label = f"{_wrap(A.label)} ⋈^{f.name} {J.describe()}"
    ring = FiniteRing(
        add,
        mul,
        zero=int(pos[A.zero * nB + B.zero]),
        one=int(pos[A.one * nB + B.one]),
        label=label,
        labels=[(A.labels[a], B.labels[b]) for a, b in zip(aa, bb)],
        neg=neg,
        parts=((A, aa), (B, bb)),
    )
    return AmalgamRing(A, B, f, J, ring, aa, bb, jj)


def make_duplication(A: FiniteRing, I: Ideal) -> AmalgamRing:
    return make_amalgamation(A, A, identity_hom(A), I)


# ---------------------------------------------------------------------------
# zero divisors


@dataclass(frozen=True)
class Prop21Sets:
    s1: frozenset[int]
    s2: frozenset[int]
    s3: frozenset[int]
    s4: frozenset[int]

    @property
    def union(self) -> frozenset[int]:
        return self.s1 | self.s2 | self.s3 | self.s4


def prop21_sets(am: AmalgamRing) -> Prop21Sets:
    """The four sets whose union is claimed to be Z(A ⋈^f J).

    S1 = Z(A) ⋈^f J, S2 = {(a,0) : f(a) ∈ J}, S3 = {(0,x) : x ∈ J},
    S4 = {(a, f(a)+i) : a regular, (f(a)+i)j = 0 for some j ≠ 0 in J}.
    """
    A, B, f = am.base, am.target, am.hom
    zdA = zero_divisor_mask(A)
    Jmask = am.J.mask
    s1 = zdA[am.a_of]
    s2 = (am.b_of == B.zero) & Jmask[f.table[am.a_of]]
    s3 = am.a_of == A.zero
    nonzero_j = np.array(sorted(am.J.elements - {B.zero}), dtype=np.int64)
    if nonzero_j.size:
        kills = (B.mul[am.b_of[:, None], nonzero_j[None, :]] == B.zero).any(axis=1)
    else:
        kills = np.zeros(am.ring.order, dtype=bool)
    s4 = ~zdA[am.a_of] & kills
    return Prop21Sets(*(am.subset_where(s) for s in (s1, s2, s3, s4)))


def prop21_rhs(am: AmalgamRing) -> frozenset[int]:
    return prop21_sets(am).union


def prop21_hypotheses(am: AmalgamRing) -> dict[str, bool]:
    """(a) J ⊆ f(A); (b) J is a torsion A-module via f; (c) J² = 0."""
    B = am.target
    js = am.J.index_array
    return {
        "a": am.J.elements <= am.hom.image(),
        "b": is_torsion_module(am.base, am.hom, am.J),
        "c": bool((B.mul[js[:, None], js[None, :]] == B.zero).all()),
    }


def check_prop21(am: AmalgamRing) -> Verdict:
    R = am.ring
    hyps = prop21_hypotheses(am)
    Z = am.subset_where(zero_divisor_mask(R))
    rhs = prop21_rhs(am)
    discrepancy = sorted(Z ^ rhs)
    details = {
        "ring": R.label,
        "order": R.order,
        "hypotheses": hyps,
        "zero_divisors": len(Z),
        "rhs": len(rhs),
        "equal": not discrepancy,
        "subset_direction": Z <= rhs,
    }
    if not any(hyps.values()):
        details["torsion_witness"] = _maybe_fmt(am.target, torsion_witness(am.base, am.hom, am.J))
        status = INFO
    else:
        status = verdict_of(not discrepancy)
    witnesses = [f"{R.trace(x)} ({'only in Z' if x in Z else 'only in RHS'})" for x in discrepancy]
    return Verdict("prop21", status, details, witnesses)


def _maybe_fmt(R: FiniteRing, x: int | None) -> str | None:
    return None if x is None else R.fmt(x)


# ---------------------------------------------------------------------------
# locality and maximal spectrum


def check_lemma23(am: AmalgamRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> Verdict:
    cA = classify(am.base, cap, cache)
    cB = classify(am.target, cap, cache)
    J_in_rad = am.J.elements <= cB.radical.elements
    lhs = classify(am.ring, cap, cache).is_local
    rhs = cA.is_local and J_in_rad
    details = {
        "ring": am.ring.label,
        "amalgam_local": lhs,
        "base_local": cA.is_local,
        "J_in_radical": J_in_rad,
    }
    witnesses = []
    if lhs != rhs:
        stray = sorted(am.J.elements - cB.radical.elements)
        witnesses.append(f"locality {lhs} vs criterion {rhs}")
        witnesses += [f"{am.target.trace(j)} in J outside Rad(B)" for j in stray[:1]]
    return Verdict("lemma23", verdict_of(lhs == rhs), details, witnesses)


def max_spectrum_families(am: AmalgamRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> dict[str, list[frozenset[int]]]:
    """The ideals m ⋈^f J (m maximal in A) and Q̄^f (Q maximal in B, Q ⊉ J)."""
    cA = classify(am.base, cap, cache)
    cB = classify(am.target, cap, cache)
    m_type = [am.subset_where(m.mask[am.a_of]) for m in cA.maximal_ideals]
    q_type = [
        am.subset_where(Q.mask[am.b_of]) for Q in cB.maximal_ideals if not am.J.elements <= Q.elements
    ]
    return {"m": m_type, "Q": q_type}


def max_spectrum_pattern(am: AmalgamRing, cap: int = DEFAULT_IDEAL_CAP, cache=None) -> Verdict:
    R = am.ring
    actual = {M.elements for M in classify(R, cap, cache).maximal_ideals}
    fam = max_spectrum_families(am, cap, cache)
    predicted = set(fam["m"]) | set(fam["Q"])
    ok = actual == predicted and len(fam["m"]) + len(fam["Q"]) == len(predicted)
    details = {
        "ring": R.label,
        "maximal_ideals": len(actual),
        "m_type": len(fam["m"]),
        "Q_type": len(fam["Q"]),
    }
    witnesses = []
    for M in sorted(actual ^ predicted, key=lambda s: (len(s), sorted(s))):
        side = "unexplained maximal ideal" if M in actual else "predicted but not maximal"
        gens = ",".join(R.fmt(x) for x in sorted(M)[:4])
        witnesses.append(f"{side}: {{{gens}{',...' if len(M) > 4 else ''}}} in {R.label}")
    return Verdict("maxspec", verdict_of(ok), details, witnesses)


# ---------------------------------------------------------------------------
# quotient by 0 × J


def quotient_iso_check(am: AmalgamRing, cap: int = DEFAULT_IDEAL_CAP) -> Verdict:
    """(A ⋈^f J)/(0 × J) → A via the class of (a, f(a)+j) ↦ a."""
    R, A = am.ring, am.base
    details = {"ring": R.label, "order": R.order}
    if R.order > cap:
        return Verdict("quotient-iso", FAIL, details | {"error": "order above cap"}, ["cap exceeded"])
    zero_by_J = ideal_closure(R, [int(x) for x in np.nonzero(am.a_of == A.zero)[0]])
    if zero_by_J.elements != am.subset_where(am.a_of == A.zero):
        return Verdict("quotient-iso", FAIL, details, ["0 × J is not an ideal of the amalgam"])
    Q, proj = make_quotient(R, zero_by_J)
    table = np.full(Q.order, -1, dtype=np.int64)
    witnesses = []
    for x in R.elements():
        q = proj(x)
        a = int(am.a_of[x])
        if table[q] >= 0 and table[q] != a:
            witnesses.append(f"class of {R.trace(x)} maps to both {A.fmt(table[q])} and {A.fmt(a)}")
            break
        table[q] = a
    if not witnesses:
        try:
            iso = make_hom(Q, A, table, name="iso")
        except ValueError as exc:
            witnesses.append(str(exc))
        else:
            if not (Q.order == A.order and iso.is_surjective()):
                witnesses.append("candidate map is not bijective")
    details["quotient_order"] = Q.order
    return Verdict("quotient-iso", PASS if not witnesses else FAIL, details, witnesses)
