import pytest
from hypothesis import given, strategies as st

import oracles
from prufer_amalgam.amalgam import (
    check_lemma23,
    check_prop21,
    make_amalgamation,
    make_duplication,
    max_spectrum_families,
    max_spectrum_pattern,
    prop21_hypotheses,
    prop21_rhs,
    prop21_sets,
    quotient_iso_check,
)
from prufer_amalgam.classify import classify
from prufer_amalgam.corpus import amalgamation_corpus, lemma23_instances, prop21_instances
from prufer_amalgam.ideals import all_ideals, ideal_closure, principal, unit_ideal, zero_ideal
from prufer_amalgam.rings import (
    ImproperIdealError,
    RingMismatchError,
    canonical_hom,
    identity_hom,
    make_product,
    make_zmod,
    verify_ring_axioms,
    zmod_isomorphism,
)


def labels(R, xs):
    return {R.fmt(x) for x in xs}


def z4_dup():
    R = make_zmod(4)
    return make_duplication(R, principal(R, 2))


@st.composite
def amalgamations(draw):
    """Z/m -> Z/n (n | m) or Z/m -> Z/m × Z/k, with a random proper ideal."""
    m = draw(st.sampled_from([2, 4, 6, 8, 9, 12]))
    A = make_zmod(m)
    divisors = [n for n in range(2, m + 1) if m % n == 0]
    if draw(st.booleans()):
        B = make_zmod(draw(st.sampled_from(divisors)))
    else:
        B = make_product(make_zmod(draw(st.sampled_from(divisors))), make_zmod(draw(st.sampled_from(divisors))))
    proper = [I for I in all_ideals(B) if not I.is_unit_ideal() and m * len(I) <= 96]
    return make_amalgamation(A, B, canonical_hom(A, B), draw(st.sampled_from(proper)))


class TestConstruction:
    def test_z4_duplication(self):
        am = z4_dup()
        assert am.ring.order == 8
        assert labels(am.ring, am.ring.elements()) == {f"({a},{(a + j) % 4})" for a in range(4) for j in (0, 2)}

    def test_example_base_ring(self):
        R = make_zmod(8)
        d = make_duplication(R, principal(R, 2))
        assert d.ring.order == 32
        assert d.ring.label == "Z/8 ⋈ (2)"

    def test_zero_ideal_gives_copy_of_base(self):
        R = make_zmod(9)
        am = make_duplication(R, zero_ideal(R))
        assert am.ring.order == 9 and zmod_isomorphism(am.ring) is not None

    def test_improper(self):
        R = make_zmod(4)
        with pytest.raises(ImproperIdealError):
            make_duplication(R, unit_ideal(R))

    def test_mismatched_ideal(self):
        A = make_zmod(4)
        with pytest.raises(RingMismatchError):
            make_amalgamation(A, A, identity_hom(A), principal(make_zmod(8), 2))

    @given(amalgamations())
    def test_carrier_size_and_subring(self, am):
        R = am.ring
        assert R.order == am.base.order * len(am.J)
        assert verify_ring_axioms(R).ok
        pairs = {(int(a), int(b)) for a, b in zip(am.a_of, am.b_of)}
        assert len(pairs) == R.order
        for a in range(am.base.order):
            for j in am.J.elements:
                assert (a, int(am.target.add[am.hom(a), j])) in pairs
        assert R.fmt(R.one) == f"({am.base.fmt(am.base.one)},{am.target.fmt(am.target.one)})"
        zero_by_J = {x for x in R.elements() if am.a_of[x] == am.base.zero}
        assert oracles.is_ideal(R, zero_by_J)

    @given(amalgamations())
    def test_projections_are_homs(self, am):
        assert am.first_projection.is_surjective()
        assert am.second_projection.image() <= frozenset(am.target.elements())


class TestProp21:
    def test_rhs_z4(self):
        am = z4_dup()
        assert labels(am.ring, prop21_rhs(am)) == {"(0,0)", "(0,2)", "(2,0)", "(2,2)"}

    def test_z4_hypotheses_and_pass(self):
        am = z4_dup()
        h = prop21_hypotheses(am)
        assert h["a"] and h["c"] and not h["b"]
        v = check_prop21(am)
        assert v.verdict == "pass"
        assert labels(am.ring, oracles.zero_divisors(am.ring)) == {"(0,0)", "(0,2)", "(2,0)", "(2,2)"}

    def test_zero_ideal(self):
        R = make_zmod(12)
        am = make_duplication(R, zero_ideal(R))
        assert all(prop21_hypotheses(am).values())
        zd = classify(R).zero_divisors
        # with J = 0 every element is (a, f(a)); the formula collapses to a copy of Z(A)
        assert labels(am.ring, prop21_rhs(am)) == {f"({a},{a})" for a in zd}
        assert check_prop21(am).verdict == "pass"

    def test_field_zero_ideal(self):
        R = make_zmod(5)
        am = make_duplication(R, zero_ideal(R))
        assert labels(am.ring, prop21_rhs(am)) == {"(0,0)"}

    def test_sets_match_definitions(self):
        R = make_zmod(8)
        am = make_duplication(R, principal(R, 2))
        s = prop21_sets(am)
        assert labels(am.ring, s.s3) == {"(0,0)", "(0,2)", "(0,4)", "(0,6)"}
        assert labels(am.ring, s.s2) == {"(0,0)", "(2,0)", "(4,0)", "(6,0)"}
        assert not s.s4

    @given(amalgamations())
    def test_exhaustive_equality_under_hypotheses(self, am):
        v = check_prop21(am)
        Z = frozenset(oracles.zero_divisors(am.ring))
        if any(prop21_hypotheses(am).values()):
            assert v.verdict == "pass"
            assert Z == prop21_rhs(am)
        else:
            assert v.verdict == "info"

    def test_corpus_groups(self):
        insts = prop21_instances()
        assert len(insts) >= 10
        hyps = [prop21_hypotheses(i.amalgam) for i in insts]
        assert sum(h["a"] and not h["b"] and not h["c"] for h in hyps) >= 3
        assert sum(h["c"] for h in hyps) >= 3
        assert any(i.amalgam.J.is_zero() for i in insts)
        assert all(i.amalgam.base.order * len(i.amalgam.J) <= 256 for i in insts)

    def test_subset_direction_on_whole_corpus(self):
        # exploratory: holds even when no hypothesis does
        for inst in amalgamation_corpus():
            assert check_prop21(inst.amalgam).details["subset_direction"], inst.name


class TestLemma23:
    def test_canonical_into_z4(self):
        A, B = make_zmod(8), make_zmod(4)
        am = make_amalgamation(A, B, canonical_hom(A, B), principal(B, 2))
        v = check_lemma23(am)
        assert v.ok and v.details["amalgam_local"] and v.details["J_in_radical"]
        fam = max_spectrum_families(am)
        assert len(fam["m"]) == 1 and fam["Q"] == []
        assert max_spectrum_pattern(am).ok

    def test_canonical_into_product(self):
        A, B = make_zmod(8), make_product(make_zmod(4), make_zmod(2))
        am = make_amalgamation(A, B, canonical_hom(A, B), ideal_closure(B, [B.index_of((0, 1))]))
        v = check_lemma23(am)
        assert v.ok and not v.details["amalgam_local"] and not v.details["J_in_radical"]
        assert classify(B).radical.elements == {B.index_of((0, 0)), B.index_of((2, 0))}
        fam = max_spectrum_families(am)
        assert len(fam["Q"]) == 1
        Q_elems = {x for x in am.ring.elements() if B.fmt(am.b_of[x]).endswith(",0)")}
        assert fam["Q"][0] == Q_elems
        assert max_spectrum_pattern(am).ok

    def test_non_local_base(self):
        A = make_zmod(12)
        am = make_duplication(A, principal(A, 6))
        v = check_lemma23(am)
        assert v.ok and not v.details["amalgam_local"]

    def test_zero_ideal_iso_has_only_m_type(self):
        A = make_zmod(12)
        am = make_duplication(A, zero_ideal(A))
        fam = max_spectrum_families(am)
        assert fam["Q"] == [] and len(fam["m"]) == 2
        assert max_spectrum_pattern(am).ok

    @given(amalgamations())
    def test_biconditional_and_spectrum(self, am):
        assert check_lemma23(am).ok
        assert max_spectrum_pattern(am).ok

    def test_corpus_mix(self):
        vs = [check_lemma23(i.amalgam) for i in lemma23_instances()]
        assert len(vs) >= 8 and all(v.ok for v in vs)
        local = sum(v.details["amalgam_local"] for v in vs)
        assert local >= 2 and len(vs) - local >= 2


class TestQuotientIso:
    def test_z4(self):
        assert quotient_iso_check(z4_dup()).ok

    def test_zero_ideal(self):
        A = make_zmod(6)
        assert quotient_iso_check(make_duplication(A, zero_ideal(A))).ok

    def test_second_stage(self):
        from prufer_amalgam.corpus import example29_rings

        _, second = example29_rings()
        for am in second.values():
            v = quotient_iso_check(am)
            assert v.ok and v.details["order"] == 128 and v.details["quotient_order"] == 32

    def test_over_cap_fails_with_witness(self):
        v = quotient_iso_check(z4_dup(), cap=4)
        assert v.verdict == "fail" and v.witnesses

    @given(amalgamations())
    def test_random(self, am):
        assert quotient_iso_check(am).ok
