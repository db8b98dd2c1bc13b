"""Tests for weighted polynomials, the group action and non-cancellation."""

import random
from fractions import Fraction

import pytest

from src.drinfeld_modpoly.algebra.fraction import fraction_field
from src.drinfeld_modpoly.algebra.multipoly import MultiPoly, multipoly_ring
from src.drinfeld_modpoly.errors import RingMismatchError, ZeroPolynomialError
from src.drinfeld_modpoly.invariants.noncancel import (
    formal_series,
    noncancellation_check,
    order_matches,
    random_weighted_poly,
)
from src.drinfeld_modpoly.invariants.weighted import (
    WeightedPoly,
    action_field,
    extend_scalars,
    from_j_polynomial,
    g_action,
    invariant_under_generator,
    is_invariant,
    jk_invariant,
    weighted_degree,
    weighted_leading_form,
    weighted_ring,
)


class TestWeights:
    def test_j_invariant_rank2(self):
        j = jk_invariant(1, 2, 2)
        assert str(j) == "u1^3"
        assert is_invariant(j)
        assert weighted_degree(j) == 1

    @pytest.mark.parametrize(("k", "text"), [(1, "u1^7"), (2, "u2^7")])
    def test_j_invariants_rank3(self, k, text):
        j = jk_invariant(k, 3, 2)
        assert str(j) == text
        assert is_invariant(j)

    def test_mixed_invariant_monomial(self):
        f = WeightedPoly.parse("u1*u2^2", 2, 3)
        assert is_invariant(f)
        assert weighted_degree(f) == 1

    def test_non_invariant(self):
        f = WeightedPoly.parse("u1^2", 2, 2)
        assert not is_invariant(f)
        assert weighted_degree(f) == Fraction(2, 3)

    def test_leading_form(self):
        f = WeightedPoly.parse("u1^3+T*u1", 2, 2)
        assert weighted_leading_form(f) == WeightedPoly.parse("u1^3", 2, 2)

    def test_from_j_polynomial(self, A2):
        assert from_j_polynomial([1, A2.T], 2) == WeightedPoly.parse("T*u1^3+1", 2, 2)

    def test_zero_has_no_degree(self):
        zero = WeightedPoly(weighted_ring(2, 2).zero(), 2, 2)
        with pytest.raises(ZeroPolynomialError):
            weighted_degree(zero)

    def test_ring_names_checked(self, F2):
        ring = multipoly_ring(fraction_field(F2), ("x",))
        with pytest.raises(RingMismatchError):
            WeightedPoly(ring.gen("x"), 2, 2)

    def test_arithmetic_keeps_weights(self):
        u1 = WeightedPoly.parse("u1", 2, 2)
        assert is_invariant(u1**3)
        assert weighted_degree(u1 * u1 + u1) == Fraction(2, 3)


class TestGroupAction:
    def test_action_field(self):
        assert action_field(2, 2).q == 4
        assert action_field(3, 2).q == 9

    def test_invariants_are_fixed(self):
        assert invariant_under_generator(jk_invariant(1, 2, 2))
        assert invariant_under_generator(jk_invariant(1, 2, 3))
        assert invariant_under_generator(WeightedPoly.parse("u1*u2^2+u1^7", 2, 3))

    def test_non_invariants_move(self):
        assert not invariant_under_generator(WeightedPoly.parse("u1", 2, 2))
        assert not invariant_under_generator(WeightedPoly.parse("u1^3+u1", 2, 2))

    @pytest.mark.parametrize(("q", "r"), [(2, 2), (2, 3), (3, 2)])
    def test_random_polynomials(self, q, r):
        rng = random.Random(q * 10 + r)
        big = action_field(q, r)
        nonzero = [b for b in big.elements() if b]
        for _ in range(6):
            f = random_weighted_poly(rng, q, r)
            assert is_invariant(f) == invariant_under_generator(f)
            fixed = {a: c for a, c in f.poly.terms.items() if f.weight(a).denominator == 1}
            g = WeightedPoly(MultiPoly(f.poly.ring, fixed), r, q) + jk_invariant(1, r, q)
            assert is_invariant(g)
            assert invariant_under_generator(g)
            assert g_action(g, rng.choice(nonzero)) == extend_scalars(g, big)

    def test_zero_beta_rejected(self):
        big = action_field(2, 2)
        with pytest.raises(ZeroPolynomialError):
            g_action(WeightedPoly.parse("u1", 2, 2), big.zero())

    def test_beta_from_wrong_field(self, F2):
        with pytest.raises(RingMismatchError):
            g_action(WeightedPoly.parse("u1", 2, 2), F2.one())


class TestNonCancellation:
    def test_formal_series_orders(self):
        v = formal_series(2, 3, 1, 2)
        assert [s.order for s in v] == [-1, -3]
        assert all(s.denom == 7 for s in v)

    def test_single_polynomial(self):
        assert order_matches(WeightedPoly.parse("u1^3+T*u1", 2, 2))
        assert order_matches(WeightedPoly.parse("u1*u2+u2", 2, 3), scale=2)

    def test_random_polynomials_are_nonzero(self):
        rng = random.Random(0)
        for _ in range(10):
            assert random_weighted_poly(rng, 3, 2)

    def test_rank2_experiment(self):
        report = noncancellation_check(2, 2, samples=50, seed=1)
        assert report.samples == 50
        assert report.passed == 50
        assert report.ok
        assert report.failures == []

    @pytest.mark.slow
    def test_rank3_experiment(self):
        assert noncancellation_check(2, 3, samples=3, seed=2).ok
