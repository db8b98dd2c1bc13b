"""Tests for expansions at the cusp: Eisenstein series, g, Delta, u_k and j."""

from fractions import Fraction

import pytest

from src.drinfeld_modpoly.algebra.series import series_change_ring, series_regrid
from src.drinfeld_modpoly.errors import CompositionError, ShapeError, ZeroPolynomialError
from src.drinfeld_modpoly.expansion.context import ExpansionContext
from src.drinfeld_modpoly.expansion.cusp import (
    a_poly,
    delta_dual_route,
    delta_expansion,
    eisenstein_expansion,
    g_expansion,
    g_integral_expansion,
    invariant_expansion,
    j_expansion,
    parameter_order,
    power_sum,
    q_scaled,
    u_expansion,
)
from src.drinfeld_modpoly.invariants.weighted import WeightedPoly, jk_invariant


@pytest.fixture
def ctx2():
    return ExpansionContext.concrete(2, 7)


# =============================================================================
# Building blocks
# =============================================================================


class TestBuildingBlocks:
    def test_goss_polynomials(self, ctx2):
        assert a_poly(0, ctx2).degree == 0
        p2 = a_poly(2, ctx2)
        assert p2.degree == 2
        assert p2.coefficient(0) == ctx2.ring.zero()
        assert p2.coefficient(1) == ctx2.exponential(1)
        assert str(ctx2.exponential(1)) == "1/(T^2+T)"

    def test_negative_index_rejected(self, ctx2):
        with pytest.raises(ShapeError):
            a_poly(-1, ctx2)

    def test_power_sum_is_exact(self, ctx2):
        s = power_sum(0, ctx2)
        assert s.is_exact
        assert s.leading() == (1, ctx2.ring.one())

    def test_q_scaled(self, A2, ctx2):
        T = A2.T
        assert parameter_order(T, ctx2) == 2
        assert q_scaled(T, ctx2).leading() == (2, A2.one())
        assert q_scaled(A2.one(), ctx2).leading() == (1, A2.one())

    def test_q_scaled_over_f3(self, A3):
        ctx = ExpansionContext.concrete(3, 6)
        assert q_scaled(A3.T, ctx).leading() == (3, A3.one())

    def test_q_scaled_of_zero(self, A2, ctx2):
        with pytest.raises(ZeroPolynomialError):
            q_scaled(A2.zero(), ctx2)


# =============================================================================
# Eisenstein series and g
# =============================================================================


class TestEisensteinAndG:
    def test_eisenstein_constant_term(self, ctx2):
        E = eisenstein_expansion(1, ctx2)
        assert E.coefficient(0) == ctx2.eisenstein_constant(1)

    def test_eisenstein_index(self, ctx2):
        with pytest.raises(ShapeError):
            eisenstein_expansion(0, ctx2)

    def test_g_constant_term(self, ctx2):
        assert g_expansion(1, ctx2).coefficient(0) == ctx2.ring.one()

    def test_g_index(self, ctx2):
        with pytest.raises(ShapeError):
            g_expansion(3, ctx2)

    def test_integral_g_matches_eisenstein_route(self, ctx2):
        integral = series_change_ring(g_integral_expansion(ctx2), ctx2.ring)
        assert integral.agrees_with(g_expansion(1, ctx2))


# =============================================================================
# Delta
# =============================================================================


class TestDelta:
    def test_leading_term_over_f2(self, A2):
        delta = delta_expansion(ExpansionContext.concrete(2, 8))
        assert delta.leading() == (1, A2.from_int(-1))

    def test_leading_term_over_f3(self, A3):
        delta = delta_expansion(ExpansionContext.concrete(3, 6))
        assert delta.leading() == (2, A3.from_int(-1))

    def test_leading_term_over_f4(self):
        ctx = ExpansionContext.concrete(4, 6)
        assert delta_expansion(ctx).leading() == (3, ctx.lattice_ring.from_int(-1))

    @pytest.mark.slow
    def test_symbolic_leading_term_over_f4(self):
        ctx = ExpansionContext.symbolic(4, 3, 5)
        assert delta_expansion(ctx).leading() == (3, ctx.ring.from_int(-1))

    def test_dual_route_agrees(self, ctx2):
        routes = delta_dual_route(ctx2)
        assert routes.agree
        assert routes.first_difference is None

    @pytest.mark.slow
    def test_dual_route_agrees_over_f3(self):
        assert delta_dual_route(ExpansionContext.concrete(3, 11)).agree

    def test_symbolic_leading_term(self):
        ctx = ExpansionContext.symbolic(2, 3, 3)
        assert delta_expansion(ctx).leading() == (1, ctx.ring.from_int(-1))


# =============================================================================
# u_k, j and invariants
# =============================================================================


class TestWeightedCoordinates:
    def test_u1_rank2(self):
        ctx = ExpansionContext.concrete(2, 6)
        u = u_expansion(1, ctx)
        assert u.denom == 3
        assert u.is_plain()
        assert u.series.leading() == (-1, ctx.ring.one())

    def test_u1_cubed_is_j(self):
        ctx = ExpansionContext.concrete(2, 6)
        cube = (u_expansion(1, ctx) ** 3).to_series()
        assert cube.order == -3
        j = series_change_ring(j_expansion(ctx), ctx.ring)
        assert cube.agrees_with(series_regrid(j, 3))

    def test_root_kept_in_odd_characteristic(self):
        ctx = ExpansionContext.concrete(3, 4)
        u = u_expansion(1, ctx)
        assert u.exponent == Fraction(1, 4)
        assert u.order == -4
        with pytest.raises(CompositionError):
            u.to_series()

    def test_u_index(self):
        with pytest.raises(ShapeError):
            u_expansion(2, ExpansionContext.concrete(2, 4))

    @pytest.mark.parametrize(("k", "order"), [(1, -1), (2, -3)])
    def test_symbolic_rank3_orders(self, k, order):
        ctx = ExpansionContext.symbolic(2, 3, 3)
        u = u_expansion(k, ctx)
        assert u.denom == 7
        assert u.order == order
        assert u.series.leading()[1] == ctx.lower_g(k)

    def test_j_leading_term(self, A2, A3):
        assert j_expansion(ExpansionContext.concrete(2, 6)).leading() == (-1, A2.one())
        assert j_expansion(ExpansionContext.concrete(3, 5)).leading() == (-2, A3.from_int(-1))

    def test_j_needs_concrete_rank2(self):
        with pytest.raises(ShapeError):
            j_expansion(ExpansionContext.symbolic(2, 3, 3))

    def test_invariant_expansion_of_j(self):
        ctx = ExpansionContext.concrete(2, 6)
        expansion = invariant_expansion(jk_invariant(1, 2, 2), ctx)
        j = series_change_ring(j_expansion(ctx), ctx.ring)
        assert expansion.agrees_with(j)
        assert expansion.order == -1

    def test_non_invariant_rejected(self):
        ctx = ExpansionContext.concrete(2, 6)
        with pytest.raises(ShapeError):
            invariant_expansion(WeightedPoly.parse("u1", 2, 2), ctx)


# =============================================================================
# Precision
# =============================================================================


def _expansions(ctx):
    return {
        "delta": delta_expansion(ctx),
        "j": j_expansion(ctx),
        "g1": g_expansion(1, ctx),
        "g2": g_expansion(2, ctx),
        "u1": u_expansion(1, ctx).series,
    }


class TestPrecision:
    @pytest.mark.parametrize(
        ("q", "low", "high"),
        [(2, 9, 15), pytest.param(3, 7, 11, marks=pytest.mark.slow)],
    )
    def test_more_precision_extends_expansions(self, q, low, high):
        coarse = _expansions(ExpansionContext.concrete(q, low))
        fine = _expansions(ExpansionContext.concrete(q, high))
        for name, series in coarse.items():
            assert series.terms, name
            assert fine[name].agrees_with(series), name
