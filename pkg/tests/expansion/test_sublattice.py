"""Tests for u_k expansions of sublattices."""

from fractions import Fraction

import pytest

from src.drinfeld_modpoly.errors import ShapeError
from src.drinfeld_modpoly.expansion.context import ExpansionContext
from src.drinfeld_modpoly.expansion.sublattice import (
    formal_expected_lead,
    formal_sublattice_u_expansion,
    level_parameter,
    rank2_parameter,
    sublattice_order,
    sublattice_order_fraction,
    sublattice_u_expansion,
)
from src.drinfeld_modpoly.lattices.counting import (
    SublatticeShape,
    enumerate_cyclic_sublattices,
    shapes_rank2,
)
from src.drinfeld_modpoly.modpoly.torsion import torsion_algebra


class TestOrders:
    def test_rank2_orders_at_prime_level(self, A2):
        shapes = shapes_rank2(A2.T)
        assert [sublattice_order(1, s, 2) for s in shapes] == [-1, -1, -4]
        assert sublattice_order_fraction(1, shapes[-1], 2) == Fraction(-4, 3)

    def test_rank3_order(self, A2):
        M = enumerate_cyclic_sublattices(A2.T, 3)[0]
        shape = SublatticeShape.from_matrix(M)
        # -|n1|^4 |n2| (q-1)(q^k-1)
        expected = -(shape.n1.norm() ** 4) * shape.n2.norm() * 3
        assert sublattice_order(2, shape, 2) == expected


class TestParameters:
    def test_level_parameter(self, A2):
        L = level_parameter(A2.T, A2)
        assert L.is_exact
        assert L.leading() == (-2, A2.one())
        assert L.coefficient(-1) == A2.T

    def test_positive_level_needs_torsion(self, A2):
        shape = shapes_rank2(A2.T)[0]
        with pytest.raises(ShapeError):
            rank2_parameter(shape, None)

    def test_torsion_level_must_match(self, A2):
        shape = shapes_rank2(A2.T)[0]
        with pytest.raises(ShapeError):
            rank2_parameter(shape, torsion_algebra(A2.T**2))

    def test_lambda_enters_as_torsion_value(self, A3):
        tors = torsion_algebra(A3.T)
        shape = next(s for s in shapes_rank2(A3.T) if s.lam_value == A3.one())
        L = rank2_parameter(shape, tors)
        assert L.coefficient(0) == tors.x


class TestRank2Expansions:
    """Concrete u_1 of every cyclic sublattice of level T over F_2."""

    def test_orders_match_formula(self, A2):
        ctx = ExpansionContext.concrete(2, 4)
        tors = torsion_algebra(A2.T)
        for shape in shapes_rank2(A2.T):
            u = sublattice_u_expansion(1, shape, ctx, tors)
            assert u.denom == 3
            assert u.order == sublattice_order(1, shape, 2)

    def test_orders_at_level_t_squared(self, A2):
        ctx = ExpansionContext.concrete(2, 4)
        n = A2.T**2
        tors = torsion_algebra(n)
        orders = []
        for shape in shapes_rank2(n):
            u = sublattice_u_expansion(1, shape, ctx, tors)
            assert u.order == sublattice_order(1, shape, 2)
            orders.append(u.order)
        assert sorted(orders) == [-16, -4, -1, -1, -1, -1]

    def test_needs_concrete_context(self, A2):
        shape = shapes_rank2(A2.T)[0]
        with pytest.raises(ShapeError):
            sublattice_u_expansion(1, shape, ExpansionContext.symbolic(2, 3, 3))


class TestFormalExpansions:
    def _unit_n1_shape(self, A2):
        for M in enumerate_cyclic_sublattices(A2.T, 3):
            shape = SublatticeShape.from_matrix(M)
            if shape.n1 == A2.one():
                return shape
        raise AssertionError("no shape with n1 = 1")

    @pytest.mark.parametrize("k", [1, 2])
    def test_order_and_lead(self, A2, k):
        shape = self._unit_n1_shape(A2)
        expansion = formal_sublattice_u_expansion(k, shape, 2)
        assert expansion.order == sublattice_order(k, shape, 2)
        assert expansion.lower_generators == ("et1",)
        _, lead = expansion.u.series.leading()
        assert lead == formal_expected_lead(expansion, 2)

    def test_rank2_shape(self, A2):
        shape = shapes_rank2(A2.T)[0]
        expansion = formal_sublattice_u_expansion(1, shape, 2)
        assert expansion.order == sublattice_order(1, shape, 2)
        assert expansion.u.series.leading()[1] == formal_expected_lead(expansion, 2)
        assert formal_expected_lead(expansion, 2) == expansion.u.ring.one()

    def test_index_checked(self, A2):
        with pytest.raises(ShapeError):
            formal_sublattice_u_expansion(3, self._unit_n1_shape(A2), 2)
