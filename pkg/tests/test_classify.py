import pytest
from hypothesis import given

import oracles
from conftest import small_rings
from prufer_amalgam.classify import (
    classify,
    idempotents,
    is_torsion_module,
    local_decomposition,
    nonunits_additively_closed,
    primitive_idempotents,
    torsion_witness,
)
from prufer_amalgam.ideals import principal, zero_ideal
from prufer_amalgam.rings import SizeCapError, identity_hom, make_product, make_zmod


class TestClassify:
    def test_z8(self):
        R = make_zmod(8)
        c = classify(R)
        assert c.zero_divisors == {0, 2, 4, 6}
        assert c.units == {1, 3, 5, 7}
        assert c.is_local
        assert c.maximal_ideal == principal(R, 2)
        assert c.radical == principal(R, 2)

    def test_z12(self):
        R = make_zmod(12)
        c = classify(R)
        assert not c.is_local
        assert {M.elements for M in c.maximal_ideals} == {principal(R, 2).elements, principal(R, 3).elements}
        assert c.radical.elements == {0, 6}

    def test_field(self):
        R = make_zmod(7)
        c = classify(R)
        assert c.zero_divisors == {0}
        assert c.units == set(range(1, 7))
        assert c.is_local and c.maximal_ideal.is_zero()

    def test_two_by_two_not_local(self):
        R = make_product(make_zmod(2), make_zmod(2))
        c = classify(R)
        assert not c.is_local
        assert {M.elements for M in c.maximal_ideals} == {
            frozenset({R.index_of((0, 0)), R.index_of((0, 1))}),
            frozenset({R.index_of((0, 0)), R.index_of((1, 0))}),
        }

    def test_cap(self):
        with pytest.raises(SizeCapError):
            classify(make_zmod(40), cap=32)

    @given(small_rings(max_order=32))
    def test_against_loop_oracles(self, R):
        c = classify(R)
        zd = oracles.zero_divisors(R)
        assert c.zero_divisors == zd
        assert c.regulars == set(R.elements()) - zd
        assert R.zero in c.zero_divisors
        assert c.units == oracles.units(R) == c.regulars
        assert c.nilpotents == oracles.nilpotents(R)
        maxes = oracles.maximal_ideals(R, oracles.ideals_by_generators(R))
        assert {M.elements for M in c.maximal_ideals} == maxes
        assert c.is_local == (len(maxes) == 1) == nonunits_additively_closed(R)

    @given(small_rings(max_order=64))
    def test_radical_is_intersection_and_holds_nilpotents(self, R):
        c = classify(R)
        inter = frozenset(R.elements())
        for M in c.maximal_ideals:
            inter &= M.elements
        assert c.radical.elements == inter
        assert c.nilpotents <= c.radical.elements


class TestDecomposition:
    def test_z12(self):
        fs = local_decomposition(make_zmod(12))
        assert sorted(f.ring.order for f in fs) == [3, 4]
        assert sorted(f.idempotent for f in fs) == [4, 9]

    def test_local_ring_is_its_own_factor(self):
        R = make_zmod(8)
        (f,) = local_decomposition(R)
        assert f.ring is R

    def test_two_by_two(self):
        R = make_product(make_zmod(2), make_zmod(2))
        fs = local_decomposition(R)
        assert [f.ring.order for f in fs] == [2, 2]
        assert {R.fmt(f.idempotent) for f in fs} == {"(1,0)", "(0,1)"}

    @given(small_rings(max_order=64))
    def test_factors_local_and_orders_multiply(self, R):
        fs = local_decomposition(R)
        prod = 1
        for f in fs:
            assert classify(f.ring).is_local
            prod *= f.ring.order
        assert prod == R.order
        assert len(fs) == len(classify(R).maximal_ideals)

    @given(small_rings(max_order=64))
    def test_primitive_idempotents_sum_to_one(self, R):
        prims = primitive_idempotents(R)
        total = R.zero
        for e in prims:
            total = int(R.add[total, e])
        assert total == R.one
        assert set(prims) <= set(idempotents(R))


class TestTorsion:
    def test_zero_ideal(self):
        R = make_zmod(8)
        assert is_torsion_module(R, identity_hom(R), zero_ideal(R))

    def test_z8_identity_ideal_2(self):
        R = make_zmod(8)
        assert not is_torsion_module(R, identity_hom(R), principal(R, 2))
        assert torsion_witness(R, identity_hom(R), principal(R, 2)) == 2

    @given(small_rings(max_order=32))
    def test_finite_torsion_means_zero(self, R):
        f = identity_hom(R)
        for M in classify(R).maximal_ideals:
            assert is_torsion_module(R, f, M) == M.is_zero()
