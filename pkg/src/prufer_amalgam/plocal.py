"""Exact arithmetic in Z localized at a prime, and checks on infinite instances.

Covers the duplications Z_(p) ⋈ p^k Z_(p) (Prüfer witnesses), the amalgam
Z ⋈ J for Z -> Z/nZ (sampled zero-divisor formula) and the idealization
instance with J = 0 × E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .verdict import FAIL, PASS, Verdict, verdict_of

INFINITE = None
"""Exponent sentinel standing for the zero ideal (k = ∞)."""


class PrimeMismatchError(ValueError):
    pass


class UndefinedValuationError(ValueError):
    pass


class InvalidSampleError(ValueError):
    pass


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise UndefinedValuationError("v_p(0) is undefined")
    n, v = abs(n), 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PLocalRational:
    """An element of Z_(p): a reduced fraction whose denominator is prime to p."""

    p: int
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))
        if self.value.denominator % self.p == 0:
            raise ValueError(f"{self.value} is not in Z_({self.p})")

    @classmethod
    def of(cls, p: int, num: int, den: int = 1) -> PLocalRational:
        return cls(p, Fraction(num, den))

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def _same(self, other: PLocalRational) -> None:
        if self.p != other.p:
            raise PrimeMismatchError(f"Z_({self.p}) vs Z_({other.p})")

    def __add__(self, other: PLocalRational) -> PLocalRational:
        self._same(other)
        return PLocalRational(self.p, self.value + other.value)

    def __sub__(self, other: PLocalRational) -> PLocalRational:
        self._same(other)
        return PLocalRational(self.p, self.value - other.value)

    def __mul__(self, other: PLocalRational) -> PLocalRational:
        self._same(other)
        return PLocalRational(self.p, self.value * other.value)

    def __neg__(self) -> PLocalRational:
        return PLocalRational(self.p, -self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return self.value != 0 and self.value.numerator % self.p != 0

    def valuation(self) -> int:
        return vp_int(self.value.numerator, self.p)

    def in_power_ideal(self, k: int | None) -> bool:
        """Membership in p^k Z_(p); k = INFINITE means the zero ideal."""
        if self.is_zero():
            return True
        if k is INFINITE:
            return False
        return self.valuation() >= k

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class DuplicationElement:
    """(a, second) in Z_(p) ⋈ p^k Z_(p), i.e. second − a ∈ p^k Z_(p)."""

    p: int
    k: int | None
    a: Fraction
    second: Fraction

    def __post_init__(self):
        for q in (self.a, self.second):
            if Fraction(q).denominator % self.p == 0:
                raise ValueError(f"{q} is not in Z_({self.p})")
        if not PLocalRational(self.p, Fraction(self.second - self.a)).in_power_ideal(self.k):
            raise ValueError(f"({self.a},{self.second}) is not in the duplication along p^{self.k}")

    @classmethod
    def of(cls, p: int, k: int | None, a, second) -> DuplicationElement:
        return cls(p, k, Fraction(a), Fraction(second))

    def __mul__(self, other: DuplicationElement) -> DuplicationElement:
        _same_dup(self, other)
        return DuplicationElement(self.p, self.k, self.a * other.a, self.second * other.second)

    def is_regular(self) -> bool:
        # a subring of a product of two domains: regular iff both coordinates are nonzero
        return self.a != 0 and self.second != 0

    def is_unit(self) -> bool:
        return PLocalRational(self.p, self.a).is_unit()

    def __str__(self) -> str:
        return f"({self.a},{self.second})"


def _same_dup(x: DuplicationElement, y: DuplicationElement) -> None:
    if (x.p, x.k) != (y.p, y.k):
        raise PrimeMismatchError(f"duplications along p={x.p},k={x.k} and p={y.p},k={y.k}")


def corollary27_condition(p: int, k: int | None, sample: list) -> tuple[bool, object]:
    """Evaluate I = aI for I = p^k Z_(p) over sampled nonzero non-units a.

    aI = p^(k + v_p(a)) Z_(p), which equals I only when v_p(a) = 0; every valid
    sample element has v_p(a) >= 1, so the condition fails at the first one.
    The zero ideal (k = INFINITE) satisfies it for every a.
    """
    elems = [q if isinstance(q, PLocalRational) else PLocalRational(p, Fraction(q)) for q in sample]
    for q in elems:
        if q.p != p:
            raise PrimeMismatchError(f"sample element over Z_({q.p}), expected Z_({p})")
        if q.is_zero() or q.is_unit():
            raise InvalidSampleError(f"{q} is not a nonzero non-unit of Z_({p})")
    if k is INFINITE:
        return True, None
    for q in elems:
        if k + q.valuation() != k:
            return False, q
    return True, None


def divides_in_duplication(x: DuplicationElement, y: DuplicationElement) -> tuple[bool, DuplicationElement | None]:
    """Is there q in the duplication with x·q = y?  Returns the quotient if so.

    Solved coordinatewise in Q; a zero coordinate of x divides only zero and
    then leaves that coordinate of q free, which is chosen to satisfy the
    membership condition q2 − q1 ∈ p^k Z_(p) when possible.
    """
    _same_dup(x, y)
    p, k = x.p, x.k

    def in_ring(q: Fraction) -> bool:
        return q.denominator % p != 0

    def in_I(q: Fraction) -> bool:
        return PLocalRational(p, q).in_power_ideal(k)

    if x.a == 0 and y.a != 0 or x.second == 0 and y.second != 0:
        return False, None
    q1 = y.a / x.a if x.a != 0 else None
    q2 = y.second / x.second if x.second != 0 else None
    if q1 is not None and not in_ring(q1) or q2 is not None and not in_ring(q2):
        return False, None
    if q1 is None and q2 is None:
        q1 = q2 = Fraction(0)
    elif q1 is None:
        q1 = q2  # any q1 with q2 − q1 ∈ I; q1 = q2 works
    elif q2 is None:
        q2 = q1
    if not in_I(q2 - q1):
        return False, None
    q = DuplicationElement(p, k, q1, q2)
    assert q * x == y
    return True, q


def _height(q: Fraction) -> int:
    return max(abs(q.numerator), q.denominator)


def _fractions_up_to(p: int, bound: int) -> list[Fraction]:
    """Z_(p) elements with |numerator|, denominator <= bound, in search order."""
    out = {Fraction(0)}
    for den in range(1, bound + 1):
        if den % p == 0:
            continue
        for num in range(-bound, bound + 1):
            out.add(Fraction(num, den))
    return sorted(out, key=_frac_key)


def _frac_key(q: Fraction) -> tuple:
    return (_height(q), abs(q.numerator), q.denominator, q < 0)


def duplication_elements(p: int, k: int | None, bound: int) -> list[DuplicationElement]:
    """Elements (a, a + p^k t) with a, t of height <= bound, in search order:
    increasing height max(h(a), h(t)), then lexicographically by (a, t)."""
    out: list[DuplicationElement] = []
    for H in range(1, bound + 1):
        out += _level(p, k, H)
    return out


def _level(p: int, k: int | None, H: int) -> list[DuplicationElement]:
    """Duplication elements whose parameters (a, t) have height exactly H."""
    fr = _fractions_up_to(p, H)
    if k is INFINITE:
        pairs = [(a, Fraction(0)) for a in fr if _height(a) == H]
    else:
        pairs = [(a, t) for a in fr for t in fr if max(_height(a), _height(t)) == H]
    pairs.sort(key=lambda at: (_frac_key(at[0]), _frac_key(at[1])))
    scale = 0 if k is INFINITE else p**k
    return [DuplicationElement(p, k, a, a + scale * t) for a, t in pairs]


@dataclass(frozen=True)
class PrueferWitness:
    x: DuplicationElement
    y: DuplicationElement

    def __str__(self) -> str:
        return f"x={self.x}, y={self.y}"


def pruefer_witness_search(p: int, k: int | None, search_bound: int = 20) -> PrueferWitness | None:
    """First pair (x, y) in the local ring Z_(p) ⋈ p^k Z_(p) with x regular
    and neither element dividing the other.

    Since x is regular, (x, y) is a regular ideal.  In a local Prüfer ring
    the generators of such an ideal are comparable, so such a pair shows the duplication is not Prüfer.
    x ranges over regular non-units (units divide everything); pairs are
    visited in order of their larger height, then x, then y.
    """
    elems: list[DuplicationElement] = []
    for H in range(1, search_bound + 1):
        level = _level(p, k, H)
        lower = len(elems)
        elems += level
        for i, x in enumerate(elems):
            if not x.is_regular() or x.is_unit():
                continue
            # at least one member of the pair must come from the new level
            ys = range(len(elems)) if i >= lower else range(lower, len(elems))
            for j in ys:
                if j == i:
                    continue
                y = elems[j]
                if not divides_in_duplication(x, y)[0] and not divides_in_duplication(y, x)[0]:
                    return PrueferWitness(x, y)
    return None


def _witness_sample(p: int, count: int = 5) -> list[PLocalRational]:
    """Nonzero non-units p, p/2, 2p, ... used to evaluate the condition."""
    out = []
    num = p
    while len(out) < count:
        for den in range(1, num + 1):
            if den % p and math.gcd(num, den) == 1 and len(out) < count:
                out.append(PLocalRational(p, Fraction(num, den)))
        num += p
    return out


def check_thm22_instance(p: int, k: int | None, search_bound: int = 20) -> Verdict:
    """Compare the transfer condition with the outcome of the witness search.

    Z_(p) is a valuation domain, so the base is Prüfer; the condition is
    evaluated on a fixed sample of nonzero non-units.  Consistency means:
    condition fails exactly when a non-Prüfer witness is found.
    """
    cond, bad_a = corollary27_condition(p, k, _witness_sample(p))
    witness = pruefer_witness_search(p, k, search_bound)
    details = {
        "p": p,
        "k": "inf" if k is INFINITE else k,
        "base_pruefer": True,
        "condition": cond,
        "witness_found": witness is not None,
    }
    witnesses = []
    if bad_a is not None:
        witnesses.append(f"a={bad_a}: aI = p^{k + bad_a.valuation()} Z_({p}) != p^{k} Z_({p})")
    if witness is not None:
        witnesses.append(f"pair generating a regular ideal, no divisibility: {witness}")
    return Verdict("thm22", verdict_of(cond == (witness is None)), details, witnesses)


def check_cor27_instance(p: int, k: int | None, search_bound: int = 20) -> Verdict:
    """Evaluate the duplication condition I = aI and report the non-Prüfer pair.

    Passes when the outcome is consistent: the condition is false and a
    witness pair exists, or it holds and the bounded search finds none.
    """
    cond, bad_a = corollary27_condition(p, k, _witness_sample(p))
    witness = pruefer_witness_search(p, k, search_bound)
    details = {
        "p": p,
        "k": "inf" if k is INFINITE else k,
        "condition": cond,
        "failing_a": None if bad_a is None else str(bad_a),
        "witness": None if witness is None else {"x": str(witness.x), "y": str(witness.y)},
        "search_bound": search_bound,
    }
    witnesses = []
    if witness is not None:
        witnesses.append(f"x={witness.x} is regular, y={witness.y}, and neither divides the other")
    ok = cond == (witness is None)
    if not ok:
        witnesses.append(f"condition {cond} but witness {'found' if witness else 'not found'}")
    return Verdict("cor27", verdict_of(ok), details, witnesses)


# ---------------------------------------------------------------------------
# Z ⋈ J for the canonical map Z -> Z/nZ


def sampled_prop21_exact(n: int, J_gen: int, bound: int = 50) -> Verdict:
    """Pointwise comparison of zero-divisor status with the four-set formula.

    A = Z, B = Z/nZ, J = (J_gen).  (a, c) with a != 0 is a zero divisor iff
    c·k = 0 for some nonzero k in J (the partner must have first coordinate
    0); every (0, c) is killed by (n, 0).
    """
    J = sorted({(J_gen * r) % n for r in range(n)})
    nonzero_J = [j for j in J if j]
    disagreements = []
    checked = 0
    for a in range(-bound, bound + 1):
        fa = a % n
        for j in J:
            c = (fa + j) % n
            checked += 1
            if a == 0:
                is_zd = True
            else:
                is_zd = any((c * k) % n == 0 for k in nonzero_J)
            s1 = a == 0  # Z(Z) = {0}
            s2 = c == 0 and fa in J
            s3 = a == 0 and c in J
            s4 = a != 0 and any((c * k) % n == 0 for k in nonzero_J)
            in_rhs = s1 or s2 or s3 or s4
            if is_zd != in_rhs:
                disagreements.append((a, c))
    details = {
        "n": n,
        "J": J,
        "bound": bound,
        "elements_checked": checked,
        "disagreements": len(disagreements),
        "torsion": True,  # n kills every element of Z/nZ and is regular in Z
    }
    witnesses = [
        f"({a},{c}) in Z ⋈ ({J_gen}): {'zero divisor' if a == 0 else 'regular'} but formula says otherwise"
        for a, c in disagreements[:5]
    ]
    return Verdict("prop21-exact", PASS if not disagreements else FAIL, details, witnesses)


# ---------------------------------------------------------------------------
# A ⋉ E with E = A/m, f(a) = (a, 0), J = 0 × E


@dataclass(frozen=True)
class IdealizationElement:
    """(a, e) in Z_(p) ⋉ F_p, with e in 0..p-1."""

    p: int
    a: Fraction
    e: int

    def __mul__(self, other: IdealizationElement) -> IdealizationElement:
        def red(q: Fraction) -> int:
            return (q.numerator * pow(q.denominator, -1, self.p)) % self.p

        e = (red(self.a) * other.e + red(other.a) * self.e) % self.p
        return IdealizationElement(self.p, self.a * other.a, e)

    def is_zero(self) -> bool:
        return self.a == 0 and self.e == 0


def example28_structural(p: int, sample_bound: int = 10) -> Verdict:
    """f(A) ∩ J = 0 and f(p) = (p, 0) is a zero divisor of B while p is regular in A."""
    witnesses = []
    sample = _fractions_up_to(p, sample_bound)
    # f(a) = (a, 0) lies in J = 0 × E exactly when its first coordinate vanishes
    meets = {(a, 0) for a in sample if a == 0}
    intersection_zero = meets == {(Fraction(0), 0)}
    outside = [(Fraction(0), e) for e in range(1, p)]  # (0, e) has e != 0, so it is not of the form (a, 0)
    J_not_in_fA = bool(outside)
    fp = IdealizationElement(p, Fraction(p), 0)
    killer = IdealizationElement(p, Fraction(0), 1)
    annihilates = (fp * killer).is_zero() and not killer.is_zero()
    p_regular_in_A = Fraction(p) != 0  # Z_(p) is a domain
    one = IdealizationElement(p, Fraction(1), 0)
    unit_present = (one * one) == one
    if not intersection_zero:
        witnesses.append("f(A) ∩ J contains a nonzero element")
    if not annihilates:
        witnesses.append(f"({p},0)·(0,1) != (0,0)")
    details = {
        "p": p,
        "f(A)∩J=0": intersection_zero,
        "J_not_in_f(A)": J_not_in_fA,
        "f(p)_zero_divisor": annihilates,
        "p_regular_in_A": p_regular_in_A,
        "f(1)_unit": unit_present,
    }
    ok = intersection_zero and J_not_in_fA and annihilates and p_regular_in_A and unit_present
    return Verdict("example28", verdict_of(ok), details, witnesses)


def iter_grid(primes=(2, 3, 5), exponents=(1, 2, 3)) -> Iterator[tuple[int, int]]:
    for p in primes:
        for k in exponents:
            yield p, k
