"""Tests for the rank-2 modular polynomial engine and its coefficient bounds."""

from fractions import Fraction

import pytest

from src.drinfeld_modpoly.algebra.field import field_for_q
from src.drinfeld_modpoly.algebra.fraction import fraction_field
from src.drinfeld_modpoly.algebra.polya import poly_ring
from src.drinfeld_modpoly.algebra.quotient import UPoly, UPolyRing
from src.drinfeld_modpoly.algebra.series import FracLaurentSeries, laurent_polynomial
from src.drinfeld_modpoly.errors import (
    BoundViolationError,
    DescentError,
    NonIntegralReductionError,
    PrecisionError,
    RingMismatchError,
    ShapeError,
    ZeroDivisorError,
)
from src.drinfeld_modpoly.modpoly.bounds import (
    jk_weight,
    leading_order_check,
    proof_bound,
    sharp_bound,
    theorem_bound,
    verify_theorem_bounds,
)
from src.drinfeld_modpoly.modpoly.engine import (
    ModularPolynomial,
    compute_modular_polynomial,
    conjugate_data,
    conjugate_expansion,
    default_precision,
    descend,
    elementary_symmetric,
    j_expansion_in_s,
    reduce_in_j,
    self_evaluation_checks,
    symmetric_reduce,
)
from src.drinfeld_modpoly.modpoly.torsion import torsion_algebra
from src.drinfeld_modpoly.types.reports import CheckStatus


@pytest.fixture(scope="module")
def level_t_over_f2():
    """Conjugate data and the modular polynomial of level T over F_2."""
    T = poly_ring(field_for_q(2)).T
    data = conjugate_data(T)
    P = symmetric_reduce(data.conjugates, data.j_s, T, data.precision)
    return data, P


# =============================================================================
# Reduction helpers
# =============================================================================


class TestReduction:
    def test_reduce_exact_polynomial(self, F2, A2):
        K = fraction_field(F2)
        J = FracLaurentSeries.monomial(K, -1)
        e = laurent_polynomial(K, [(-2, 1), (-1, A2.T), (0, 1)])
        assert reduce_in_j(e, J, 1, 5) == {2: K.one(), 1: K.coerce(A2.T), 0: K.one()}

    def test_order_off_the_step(self, F2):
        K = fraction_field(F2)
        J = FracLaurentSeries.monomial(K, -2)
        with pytest.raises(NonIntegralReductionError):
            reduce_in_j(FracLaurentSeries.monomial(K, -3), J, 2, 5)

    def test_power_above_bound(self, F2):
        K = fraction_field(F2)
        J = FracLaurentSeries.monomial(K, -1)
        with pytest.raises(BoundViolationError):
            reduce_in_j(FracLaurentSeries.monomial(K, -3), J, 1, 2)

    def test_precision_exhausted(self, F2):
        K = fraction_field(F2)
        J = FracLaurentSeries.monomial(K, -1)
        with pytest.raises(PrecisionError):
            reduce_in_j(FracLaurentSeries(K, {-1: K.one()}, 0), J, 1, 2)

    def test_positive_tail(self, F2):
        K = fraction_field(F2)
        J = FracLaurentSeries.monomial(K, -1)
        with pytest.raises(PrecisionError):
            reduce_in_j(laurent_polynomial(K, [(-1, 1), (1, 1)]), J, 1, 2)

    def test_elementary_symmetric(self, F2):
        K = fraction_field(F2)
        a = FracLaurentSeries.monomial(K, 1)
        b = FracLaurentSeries.monomial(K, 2)
        E = elementary_symmetric([a, b])
        assert E[1].terms == {1: K.one(), 2: K.one()}
        assert E[2].terms == {3: K.one()}

    def test_elementary_symmetric_needs_input(self):
        with pytest.raises(ShapeError):
            elementary_symmetric([])

    def test_descend(self, F3, A3):
        K = fraction_field(F3)
        tors = torsion_algebra(A3.T)
        base = FracLaurentSeries(tors.alg, {-1: tors.alg.coerce(A3.T)})
        assert descend(base, K).terms == {-1: K.coerce(A3.T)}
        with pytest.raises(DescentError):
            descend(FracLaurentSeries(tors.alg, {0: tors.x}), K)


# =============================================================================
# Modular polynomials
# =============================================================================


class TestModularPolynomial:
    def test_default_precision(self, A2):
        assert default_precision(2, A2.T) == 18
        assert default_precision(2, A2.one()) == 5

    def test_invalid_level(self, A3):
        with pytest.raises(ShapeError):
            default_precision(3, 2 * A3.T)

    def test_j_in_s_order(self, A2):
        j_s = j_expansion_in_s(A2.T, 6)
        assert j_s.order == -2

    def test_reducible_level_needs_primitive_factor(self, A2):
        with pytest.raises(ZeroDivisorError) as exc:
            compute_modular_polynomial(A2.T**2)
        assert exc.value.details["n"] == "T^2"

    def test_unit_level(self, A2):
        P = compute_modular_polynomial(A2.one())
        assert P.degree == 1
        assert P.is_monic
        assert P.render() == "X + (j)"

    def test_conjugate_orders(self, level_t_over_f2):
        data, _ = level_t_over_f2
        assert len(data.shapes) == 3
        assert [c.order for c in data.conjugates] == [-1, -1, -4]
        assert data.j_s.order == -2

    def test_conjugate_expansion(self, A2, level_t_over_f2):
        data, _ = level_t_over_f2
        for shape in data.shapes:
            conj = conjugate_expansion(shape, data.j_t, data.tors, data.precision)
            assert conj.order == (-4 if shape.n1 == A2.T else -1)

    def test_prime_level_over_f2(self, level_t_over_f2):
        data, P = level_t_over_f2
        assert P.degree == 3
        assert P.is_monic
        assert P.is_integral()
        for i in range(P.degree + 1):
            degree = P.j_degree(i)
            assert degree is None or degree <= 2 * (3 - i)
        assert set(P.coefficient_strings()) == {"0", "1", "2", "3"}

    def test_self_evaluation(self, level_t_over_f2):
        data, P = level_t_over_f2
        checks = self_evaluation_checks(P, data)
        assert len(checks) == 3
        assert all(c.status == CheckStatus.PASSED for c in checks)

    def test_symmetry_is_reported(self, level_t_over_f2):
        _, P = level_t_over_f2
        assert P.symmetry_report().status in (CheckStatus.PASSED, CheckStatus.REPORTED)

    @pytest.mark.slow
    def test_full_computation_matches(self, A2, level_t_over_f2):
        _, P = level_t_over_f2
        assert compute_modular_polynomial(A2.T).coefficients == P.coefficients

    @pytest.mark.slow
    def test_prime_level_over_f3(self, A3):
        P = compute_modular_polynomial(A3.T)
        assert P.degree == 4
        assert P.is_monic
        assert P.is_integral()


# =============================================================================
# Bounds
# =============================================================================


class TestBounds:
    def test_bound_values(self, A2):
        T = A2.T
        assert sharp_bound(T, 2, 0, Fraction(1)) == 6
        assert theorem_bound(T, 2, 1, Fraction(1)) == 7
        assert proof_bound(T, 2, 1, Fraction(1)) == 4

    def test_report_for_prime_level(self, level_t_over_f2):
        _, P = level_t_over_f2
        report = verify_theorem_bounds(P)
        assert report.all_sharp_ok
        assert [row.theorem_bound for row in report.rows] == ["8", "7", "6", "5"]
        # the proof display drops below zero for the leading coefficient
        assert any(d.startswith("a_3: proof") for d in report.discrepancies)

    def test_strict_violation(self, F2, A2):
        K = fraction_field(F2)
        jring = UPolyRing(K, "j")
        big = UPoly(jring, [0] * 10 + [1])
        P = ModularPolynomial(q=2, n=A2.T, coefficients=[big, jring.one()], precision=5)
        assert not verify_theorem_bounds(P).all_sharp_ok
        with pytest.raises(BoundViolationError):
            verify_theorem_bounds(P, strict=True)

    @pytest.mark.parametrize(
        ("k", "r", "q", "weight"),
        [(1, 2, 2, 1), (2, 3, 2, 3), (2, 4, 2, 1), (1, 2, 3, 1)],
    )
    def test_jk_weight(self, k, r, q, weight):
        assert jk_weight(k, r, q) == weight

    def test_leading_order_field_checked(self, A3):
        with pytest.raises(RingMismatchError):
            leading_order_check(A3.T, 3, 2)

    @pytest.mark.slow
    def test_leading_orders_rank3(self, A2):
        results = leading_order_check(A2.T, 3, 2)
        assert len(results) == 4
        assert all(r.status == CheckStatus.PASSED for r in results)
