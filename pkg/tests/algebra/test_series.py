"""Tests for Laurent series on fractional exponent grids."""

import random
from fractions import Fraction

import pytest

from src.drinfeld_modpoly.algebra.polya import PolyA
from src.drinfeld_modpoly.algebra.quotient import QuotientAlgebra, UPolyRing
from src.drinfeld_modpoly.algebra.series import (
    INF,
    FracLaurentSeries,
    RootScaledSeries,
    binomial_mod_p,
    format_series,
    laurent_polynomial,
    series_binomial_power,
    series_coefficient,
    series_compose_scale,
    series_inverse,
    series_leading,
    series_mul,
    series_neg,
    series_regrid,
    series_shift,
    series_sub,
    series_truncate,
)
from src.drinfeld_modpoly.errors import (
    CompositionError,
    PrecisionError,
    RingMismatchError,
    ZeroDivisorError,
)


class TestArithmetic:
    @pytest.mark.parametrize(("order", "precision"), [(0, 3), (0, 6), (0, 10), (-2, 8), (1, 7)])
    def test_inverse_of_random_series(self, F3, A3, order, precision):
        rng = random.Random(precision)
        for _ in range(5):
            tail = [
                (order + n, PolyA(F3, [rng.randrange(3) for _ in range(3)])) for n in range(1, 8)
            ]
            a = laurent_polynomial(A3, [(order, rng.choice([1, 2]))] + tail)
            product = series_mul(a, series_inverse(a, precision))
            assert product.prec == precision + order
            assert product.agrees_with(FracLaurentSeries.one(A3))
            assert not product.lead_cancelled

    def test_zero_divisor_leading_coefficients(self, A3):
        x = UPolyRing(A3, "x").gen
        alg = QuotientAlgebra(x**2, "x")
        a = laurent_polynomial(alg, [(0, alg.gen), (1, 1)])
        product = series_mul(a, a)
        assert product.lead_cancelled
        assert product.order == 1
        assert product.coefficient(1) == 2 * alg.gen
        assert not series_mul(a, laurent_polynomial(alg, [(0, 1)])).lead_cancelled
        with pytest.raises(ZeroDivisorError):
            series_inverse(a, 4)

    def test_inverse_of_one_minus_t(self, A3):
        a = laurent_polynomial(A3, [(0, 1), (1, -1)])
        inverse = series_inverse(a, 5)
        assert inverse.prec == 5
        assert inverse.items() == [(n, A3.one()) for n in range(5)]

    def test_inverse_of_laurent_series(self, A2):
        # (t^-1 + 1)^-1 = t (1 + t)^-1
        a = laurent_polynomial(A2, [(-1, 1), (0, 1)])
        inverse = series_inverse(a, 4)
        assert inverse.order == 1
        assert inverse.items() == [(n, A2.one()) for n in range(1, 4)]

    def test_exact_inverse_needs_precision(self, A3):
        with pytest.raises(PrecisionError):
            series_inverse(laurent_polynomial(A3, [(0, 1), (1, 1)]))

    def test_inverse_of_zero(self, A3):
        with pytest.raises(ZeroDivisorError):
            series_inverse(FracLaurentSeries.zero(A3, prec=4), 4)

    def test_product_precision(self, A3):
        a = series_truncate(laurent_polynomial(A3, [(-1, 1), (0, A3.T)]), 3)
        b = series_truncate(laurent_polynomial(A3, [(0, 1), (2, 1)]), 5)
        # min(prec(a) + ord(b), prec(b) + ord(a))
        assert (a * b).prec == 3

    def test_inverse_round_trip(self, A3):
        a = series_truncate(laurent_polynomial(A3, [(0, 1), (1, A3.T), (2, 1)]), 6)
        product = a * series_inverse(a)
        assert product.agrees_with(FracLaurentSeries.one(A3))
        assert product.prec == 6

    def test_leading_and_coefficients(self, A3):
        a = series_truncate(laurent_polynomial(A3, [(2, A3.T), (3, 1)]), 5)
        assert a.leading() == (2, A3.T)
        assert a.coefficient(4) == 0
        with pytest.raises(PrecisionError):
            a.coefficient(5)
        with pytest.raises(PrecisionError):
            FracLaurentSeries.zero(A3, prec=3).leading()

    def test_first_difference(self, A3):
        a = laurent_polynomial(A3, [(0, 1), (2, 1)])
        b = laurent_polynomial(A3, [(0, 1), (2, 2)])
        assert a.first_difference(b) == 2
        assert a.agrees_with(b, upto=2)
        assert a.first_difference(a) is None

    def test_product_precision_and_cancellation(self, A3):
        a = series_truncate(laurent_polynomial(A3, [(0, 1), (1, 1)]), 3)
        b = series_truncate(laurent_polynomial(A3, [(0, 1), (1, -1)]), 3)
        c = series_mul(a, b)
        assert c.prec == 3
        assert c.terms == {0: A3.one(), 2: -A3.one()}

    def test_compose_scale(self, A3):
        s = FracLaurentSeries.monomial(A3, 1)
        assert series_compose_scale(s, FracLaurentSeries.monomial(A3, 3), 6).terms == {3: A3.one()}
        # 1 / (t + t^2) = t^-1 - 1 + t - t^2 + ...
        inv = FracLaurentSeries.monomial(A3, -1)
        c = series_compose_scale(inv, laurent_polynomial(A3, [(1, 1), (2, 1)]), 4)
        assert c.prec == 4
        assert c.terms == {-1: A3.one(), 0: -A3.one(), 1: A3.one(), 2: -A3.one(), 3: A3.one()}

    def test_functional_helpers(self, A3):
        a = laurent_polynomial(A3, [(1, A3.T), (3, 1)], denom=2)
        b = laurent_polynomial(A3, [(1, A3.T)], denom=2)
        assert series_sub(a, b).terms == {3: A3.one()}
        assert series_neg(b).terms == {1: -A3.T}
        assert series_leading(a) == (Fraction(1, 2), A3.T)
        assert series_coefficient(a, Fraction(3, 2)) == 1
        # off the grid
        assert series_coefficient(a, Fraction(1, 3)) == 0


class TestGrids:
    def test_regrid_refines(self, A3):
        a = laurent_polynomial(A3, [(1, 1)], denom=2)
        fine = series_regrid(a, 4)
        assert fine.denom == 4
        assert fine.items() == [(2, A3.one())]

    def test_regrid_to_coarser_grid_needs_divisibility(self, A3):
        a = laurent_polynomial(A3, [(1, 1)], denom=2)
        with pytest.raises(RingMismatchError):
            series_regrid(a, 1)
        with pytest.raises(RingMismatchError):
            series_regrid(a, 3)

    def test_different_grids_do_not_mix(self, A3):
        a = laurent_polynomial(A3, [(1, 1)], denom=2)
        b = laurent_polynomial(A3, [(1, 1)], denom=3)
        with pytest.raises(RingMismatchError):
            _ = a + b

    def test_shift(self, A3):
        a = series_truncate(laurent_polynomial(A3, [(0, 1)]), 2)
        shifted = series_shift(a, -3)
        assert shifted.order == -3
        assert shifted.prec == -1


class TestRationalPowers:
    def test_binomial_mod_p(self):
        assert binomial_mod_p(Fraction(1, 2), 2, 3) == 1
        assert binomial_mod_p(Fraction(1, 2), 1, 3) == 2
        with pytest.raises(CompositionError):
            binomial_mod_p(Fraction(1, 3), 1, 3)

    def test_square_root_squares_back(self, A3):
        a = series_truncate(laurent_polynomial(A3, [(0, 1), (1, A3.T)]), 6)
        root = series_binomial_power(a, Fraction(1, 2))
        assert root.prec == 6
        assert (root * root).agrees_with(a)

    def test_cube_root_in_characteristic_two(self, A2):
        a = series_truncate(laurent_polynomial(A2, [(0, 1), (1, A2.T)]), 5)
        root = series_binomial_power(a, Fraction(1, 3))
        assert (root * root * root).agrees_with(a)

    def test_binomial_power_needs_unit_constant_term(self, A3):
        a = laurent_polynomial(A3, [(0, 2), (1, 1)])
        with pytest.raises(CompositionError):
            series_binomial_power(a, Fraction(1, 2), 4)

    def test_exact_binomial_power_needs_precision(self, A3):
        with pytest.raises(PrecisionError):
            series_binomial_power(laurent_polynomial(A3, [(0, 1), (1, 1)]), Fraction(1, 2))


class TestRootScaledSeries:
    def test_integer_exponent_folds_sign(self, A3):
        s = laurent_polynomial(A3, [(0, 1)])
        folded = RootScaledSeries(1, s)
        assert folded.is_plain()
        assert folded.to_series() == -s

    def test_half_exponent_is_kept(self, A3):
        s = laurent_polynomial(A3, [(0, 1)])
        rooted = RootScaledSeries(Fraction(1, 2), s)
        assert not rooted.is_plain()
        with pytest.raises(CompositionError):
            rooted.to_series()
        assert (rooted * rooted).is_plain()

    def test_exponent_kept_modulo_two(self, A3):
        s = laurent_polynomial(A3, [(0, 1)])
        assert RootScaledSeries(Fraction(5, 2), s).exponent == Fraction(1, 2)

    def test_characteristic_two_is_always_plain(self, A2):
        s = laurent_polynomial(A2, [(0, 1)])
        assert RootScaledSeries(Fraction(1, 3), s).is_plain()


class TestFormatting:
    def test_laurent_text(self, A2):
        a = laurent_polynomial(A2, [(-1, 1), (0, A2.T)])
        assert format_series(a) == "t^(-1) + T"

    def test_precision_marker(self, A2):
        a = series_truncate(laurent_polynomial(A2, [(-1, 1), (2, A2.T + 1)]), 3)
        assert format_series(a) == "t^(-1) + (T+1)*t^2 + O(t^3)"

    def test_fractional_exponents(self, A2):
        a = laurent_polynomial(A2, [(1, 1), (3, 1)], denom=3)
        assert format_series(a, "s") == "s^(1/3) + s"
        assert format_series(FracLaurentSeries.zero(A2)) == "0"

    def test_exactness(self, A2):
        assert FracLaurentSeries.one(A2).is_exact
        assert FracLaurentSeries.one(A2).prec == INF
