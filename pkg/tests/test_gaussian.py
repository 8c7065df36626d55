import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import small_rings
from prufer_amalgam.amalgam import make_duplication
from prufer_amalgam.corpus import amalgamation_corpus, example29_rings, lemma24_coefficients
from prufer_amalgam.gaussian import (
    bounded_gaussian,
    check_hierarchy,
    check_lemma24,
    gaussian_content_oracle,
    gaussian_pair_verdict,
    is_arithmetical,
    is_gaussian,
    is_pruefer_finite,
    poly_mul,
)
from prufer_amalgam.ideals import principal
from prufer_amalgam.rings import SizeCapError, make_product, make_trivial_extension, make_zmod, module_via_hom
from prufer_amalgam.rings import canonical_hom, identity_hom


def dup(n, g):
    R = make_zmod(n)
    return make_duplication(R, principal(R, g))


class TestPairCriterion:
    def test_z8_pair_2_4(self):
        assert gaussian_pair_verdict(make_zmod(8), 2, 4).ok

    def test_duplication_pair(self):
        D = dup(8, 2).ring
        v = gaussian_pair_verdict(D, D.index_of((2, 0)), D.index_of((0, 2)))
        assert not v.ok
        assert "differs" in v.reason

    def test_zero_pair(self):
        assert gaussian_pair_verdict(make_zmod(9), 0, 0).ok


class TestIsGaussian:
    def test_z8(self):
        assert is_gaussian(make_zmod(8)).is_gaussian

    def test_duplication_witness(self):
        D = dup(8, 2).ring
        res = is_gaussian(D)
        assert not res.is_gaussian
        assert {D.fmt(x) for x in res.witness} == {"(2,0)", "(0,2)"}

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_fields(self, p):
        assert is_gaussian(make_zmod(p)).is_gaussian

    def test_non_local_witness_lifts(self):
        R = make_product(make_zmod(3), dup(8, 2).ring)
        res = is_gaussian(R)
        assert not res.is_gaussian
        a, b = res.witness
        assert R.order == 96
        # lifted elements live in the second factor
        assert all(R.fmt(x).startswith("(0,") for x in res.witness)

    def test_cap(self):
        with pytest.raises(SizeCapError):
            is_gaussian(make_zmod(20), cap=10)

    @given(small_rings(max_order=12))
    def test_linear_content_oracle_is_consistent(self, R):
        hit = oracles.content_violation(R, 2)
        if hit is not None:
            assert not is_gaussian(R).is_gaussian


class TestContentOracle:
    def test_z8_none(self):
        assert gaussian_content_oracle(make_zmod(8), 2, budget=8**6) is None

    def test_duplication_violation_reverified(self):
        D = dup(8, 2).ring
        v = gaussian_content_oracle(D, 2, budget=32**6)
        assert v is not None
        f, g = np.array([v.f]), np.array([v.g])
        fg = poly_mul(D, f, g)[0].tolist()
        lhs = oracles.closure(D, fg)
        rhs = oracles.ideal_product(D, oracles.closure(D, v.f), oracles.closure(D, v.g))
        assert lhs == v.c_fg and rhs == v.cf_cg and lhs != rhs

    def test_zero_polynomial_never_witness(self):
        D = dup(4, 2).ring
        lat_f = np.zeros((1, 3), dtype=np.int64)
        for g in [[1, 2, 3], [0, 5, 7]]:
            prod = poly_mul(D, lat_f, np.array([g]))[0]
            assert not prod.any()

    def test_sampled_mode_is_seeded(self):
        D = dup(8, 2).ring
        a = gaussian_content_oracle(D, 2, budget=20_000, seed=3)
        b = gaussian_content_oracle(D, 2, budget=20_000, seed=3)
        assert a == b

    @settings(max_examples=15)
    @given(small_rings(max_order=16))
    def test_exhaustive_soundness(self, R):
        hit = gaussian_content_oracle(R, 1, budget=R.order**4)
        assert hit is None or not is_gaussian(R).is_gaussian
        if is_gaussian(R).is_gaussian:
            assert oracles.content_violation(R, 2) is None


class TestArithmetical:
    def test_z8(self):
        assert is_arithmetical(make_zmod(8)).is_arithmetical

    def test_duplication(self):
        D = dup(8, 2).ring
        res = is_arithmetical(D)
        assert not res.is_arithmetical
        assert {D.fmt(x) for x in res.incomparable} == {"(2,0)", "(0,2)"}
        I, J, K = res.triple
        join = lambda X, Y: oracles.ideal_sum(D, X, Y)  # noqa: E731
        assert I & join(J, K) != join(I & J, I & K)

    def test_field(self):
        assert is_arithmetical(make_zmod(11)).is_arithmetical

    @given(small_rings(max_order=16))
    def test_matches_distributivity_oracle(self, R):
        assert is_arithmetical(R).is_arithmetical == oracles.distributive(R)


class TestPruefer:
    def test_examples(self):
        assert is_pruefer_finite(dup(8, 2).ring).is_pruefer
        assert is_pruefer_finite(make_zmod(8)).is_pruefer
        assert is_pruefer_finite(make_zmod(13)).is_pruefer

    @given(small_rings(max_order=64))
    def test_always_true_with_certificate(self, R):
        res = is_pruefer_finite(R)
        assert res.is_pruefer and res.all_regular_equal_ring
        assert res.regular_ideals_visited >= 1


class TestHierarchy:
    def test_z8(self):
        assert check_hierarchy(make_zmod(8)).triple() == (True, True, True)

    def test_duplication(self):
        rep = check_hierarchy(dup(8, 2).ring)
        assert rep.triple() == (False, False, True)
        assert set(rep.witnesses) == {"arithmetical", "gaussian"}

    def test_two_fields(self):
        assert check_hierarchy(make_product(make_zmod(2), make_zmod(2))).triple() == (True, True, True)

    def test_second_stage(self):
        _, second = example29_rings()
        for am in second.values():
            assert check_hierarchy(am.ring).triple() == (False, False, True)

    @given(small_rings(max_order=64))
    def test_implications(self, R):
        rep = check_hierarchy(R)
        a, g, p = rep.triple()
        assert (not a or g) and (not g or p)
        for name, flag in (("arithmetical", a), ("gaussian", g), ("pruefer", p)):
            assert flag or rep.witnesses[name]


class TestLemma24:
    def test_unit_content(self):
        am = dup(4, 2)
        v = check_lemma24(am, [1, 0])
        assert v.ok and v.details["lifted_bounded_gaussian"] and v.details["base_bounded_gaussian"]

    def test_coeffs_2_2(self):
        v = check_lemma24(dup(4, 2), [2, 2], degree_bound=2)
        assert v.ok
        assert {"lifted_bounded_gaussian", "base_bounded_gaussian"} <= set(v.details)

    def test_zero(self):
        v = check_lemma24(dup(4, 2), [0])
        assert v.details["lifted_bounded_gaussian"] and v.details["base_bounded_gaussian"]

    def test_bounded_gaussian_finds_test_polynomial(self):
        D = dup(8, 2).ring
        f = [D.index_of((0, 2)), D.index_of((2, 0))]
        h = bounded_gaussian(D, f, 1, budget=D.order**2)
        assert h is not None

    def test_corpus_sample_is_deterministic(self):
        am = amalgamation_corpus()[0].amalgam
        assert lemma24_coefficients(am, seed=0) == lemma24_coefficients(am, seed=0)
        assert len(lemma24_coefficients(am)) == 20

    @given(st.sampled_from([(4, 2), (8, 2), (9, 3), (8, 4)]), st.lists(st.integers(0, 3), min_size=1, max_size=3))
    def test_implication(self, ng, coeffs):
        am = dup(*ng)
        assert check_lemma24(am, coeffs).ok


def test_trivial_extension_z4_z4_not_gaussian():
    A = make_zmod(4)
    T = make_trivial_extension(A, module_via_hom(identity_hom(A)))
    assert not is_gaussian(T).is_gaussian
    assert gaussian_content_oracle(T, 2, budget=16**6) is not None


def test_canonical_trivial_extension_z2():
    A = make_zmod(2)
    T = make_trivial_extension(A, module_via_hom(canonical_hom(A, make_zmod(2))))
    assert check_hierarchy(T).triple() == (True, True, True)
