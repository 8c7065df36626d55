from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from prufer_amalgam.plocal import (
    INFINITE,
    DuplicationElement,
    InvalidSampleError,
    PLocalRational,
    PrimeMismatchError,
    UndefinedValuationError,
    check_cor27_instance,
    check_thm22_instance,
    corollary27_condition,
    divides_in_duplication,
    duplication_elements,
    example28_structural,
    iter_grid,
    pruefer_witness_search,
    sampled_prop21_exact,
    vp_int,
)

PRIMES = [2, 3, 5, 7]


@st.composite
def plocal(draw, p=None, nonzero=False):
    p = p or draw(st.sampled_from(PRIMES))
    num = draw(st.integers(-200, 200).filter(lambda n: n != 0 or not nonzero))
    den = draw(st.integers(1, 60).filter(lambda d: d % p))
    return PLocalRational(p, Fraction(num, den))


def E(p, k, a, b):
    return DuplicationElement.of(p, k, a, b)


class TestPLocalOps:
    def test_valuation_of_12(self):
        assert PLocalRational.of(2, 12).valuation() == 2
        assert vp_int(12, 2) == 2

    def test_units(self):
        assert PLocalRational.of(2, 3, 5).is_unit()
        x = PLocalRational.of(2, 2, 3)
        assert not x.is_unit() and x.valuation() == 1

    def test_sum(self):
        s = PLocalRational.of(2, 1, 3) + PLocalRational.of(2, 1, 5)
        assert s.value == Fraction(8, 15) and s.valuation() == 3

    def test_prime_mismatch(self):
        with pytest.raises(PrimeMismatchError):
            PLocalRational.of(2, 1) + PLocalRational.of(3, 1)

    def test_zero_valuation(self):
        with pytest.raises(UndefinedValuationError):
            PLocalRational.of(5, 0).valuation()

    def test_denominator_divisible_by_p(self):
        with pytest.raises(ValueError):
            PLocalRational.of(3, 1, 6)

    def test_power_ideal_membership(self):
        x = PLocalRational.of(3, 18)
        assert x.in_power_ideal(2) and not x.in_power_ideal(3)
        assert PLocalRational.of(3, 0).in_power_ideal(INFINITE)
        assert not x.in_power_ideal(INFINITE)

    @given(st.data())
    def test_canonical_form_closure(self, data):
        p = data.draw(st.sampled_from(PRIMES))
        x, y = data.draw(plocal(p)), data.draw(plocal(p))
        for r in (x + y, x * y, x - y, -x):
            assert r.denominator > 0 and r.denominator % p != 0
            assert Fraction(r.numerator, r.denominator) == r.value

    @given(st.data())
    def test_valuation_laws(self, data):
        p = data.draw(st.sampled_from(PRIMES))
        x, y = data.draw(plocal(p, nonzero=True)), data.draw(plocal(p, nonzero=True))
        assert (x * y).valuation() == x.valuation() + y.valuation()
        s = x + y
        assume(not s.is_zero())
        assert s.valuation() >= min(x.valuation(), y.valuation())

    @given(st.data())
    def test_unit_iff_valuation_zero(self, data):
        x = data.draw(plocal(nonzero=True))
        assert x.is_unit() == (x.valuation() == 0)


class TestCondition:
    def test_p2_k1(self):
        ok, bad = corollary27_condition(2, 1, [Fraction(2)])
        assert not ok and bad.value == 2

    def test_sentinel(self):
        assert corollary27_condition(2, INFINITE, [Fraction(2), Fraction(4, 3)]) == (True, None)

    def test_p3_k2(self):
        assert corollary27_condition(3, 2, [Fraction(3)])[0] is False

    @pytest.mark.parametrize("bad", [Fraction(0), Fraction(3), Fraction(1, 5)])
    def test_invalid_sample(self, bad):
        with pytest.raises(InvalidSampleError):
            corollary27_condition(2, 1, [bad])

    def test_empty_sample_is_vacuous(self):
        assert corollary27_condition(5, 3, []) == (True, None)


class TestDivisibility:
    def test_examples(self):
        ok, q = divides_in_duplication(E(2, 1, 2, 2), E(2, 1, 4, 4))
        assert ok and (q.a, q.second) == (2, 2)
        assert not divides_in_duplication(E(2, 1, 2, 2), E(2, 1, 0, 2))[0]

    @given(st.data())
    def test_unit_divides_everything(self, data):
        p = data.draw(st.sampled_from(PRIMES))
        elems = duplication_elements(p, 1, 3)
        y = data.draw(st.sampled_from(elems))
        assert divides_in_duplication(E(p, 1, 1, 1), y)[0]

    def test_membership_enforced(self):
        with pytest.raises(ValueError):
            E(2, 2, 1, 3)
        with pytest.raises(PrimeMismatchError):
            divides_in_duplication(E(2, 1, 1, 1), E(3, 1, 1, 1))

    @given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.data())
    def test_mutual_divisibility_means_associates(self, pk, data):
        p, k = pk
        elems = duplication_elements(p, k, 3)
        x, y = data.draw(st.sampled_from(elems)), data.draw(st.sampled_from(elems))
        ok1, q1 = divides_in_duplication(x, y)
        ok2, q2 = divides_in_duplication(y, x)
        if ok1 and ok2 and x.is_regular():
            # y = x q1 and x = y q2, so q1 q2 = 1 on a regular x: q1 is a unit
            assert q1.is_unit()
            assert x * q1 == y and y * q2 == x


class TestWitnessSearch:
    @pytest.mark.parametrize("p,k", list(iter_grid()))
    def test_grid(self, p, k):
        w = pruefer_witness_search(p, k, 20)
        assert w is not None
        assert w.x.is_regular() or w.y.is_regular()
        assert not divides_in_duplication(w.x, w.y)[0]
        assert not divides_in_duplication(w.y, w.x)[0]
        assert (w.x.a, w.x.second) == (p, p) and (w.y.a, w.y.second) == (0, p**k)

    def test_sentinel_has_none(self):
        assert pruefer_witness_search(2, INFINITE, 20) is None

    def test_search_order_starts_small(self):
        elems = duplication_elements(3, 1, 2)
        assert (elems[0].a, elems[0].second) == (0, 0)


class TestVerdicts:
    def test_thm22(self):
        for p, k in [(2, 1), (5, 3)]:
            v = check_thm22_instance(p, k)
            assert v.ok and not v.details["condition"] and v.details["witness_found"]
        v = check_thm22_instance(2, INFINITE)
        assert v.ok and v.details["condition"] and not v.details["witness_found"]

    def test_cor27_reports_pair(self):
        v = check_cor27_instance(2, 1)
        assert v.ok and v.details["condition"] is False
        assert v.details["witness"] == {"x": "(2,2)", "y": "(0,2)"}

    @pytest.mark.parametrize("p", [2, 3])
    def test_example28(self, p):
        v = example28_structural(p)
        assert v.ok
        assert v.details["f(A)∩J=0"] and v.details["f(p)_zero_divisor"] and v.details["f(1)_unit"]


class TestSampledProp21:
    @pytest.mark.parametrize("n", [4, 8, 12])
    def test_nonzero_ideals_agree(self, n):
        for g in range(1, n):
            if n % g == 0:
                v = sampled_prop21_exact(n, g, 50)
                assert v.ok and v.details["disagreements"] == 0, (n, g)

    def test_pointwise_examples_n8_j2(self):
        v = sampled_prop21_exact(8, 2, 10)
        assert v.ok and v.details["J"] == [0, 2, 4, 6]

    def test_zero_ideal_breaks_the_formula(self):
        # Z ⋈ 0 is a copy of Z, but (8,0) lands in S2 because f(8) = 0 ∈ J
        v = sampled_prop21_exact(8, 0, 20)
        assert not v.ok
        assert v.details["disagreements"] == 4
        assert [w.split(" ")[0] for w in v.witnesses] == ["(-16,0)", "(-8,0)", "(8,0)", "(16,0)"]
