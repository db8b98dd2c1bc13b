"""Tests for the twisted polynomial ring and Drinfeld modules."""

import random

import pytest

from src.drinfeld_modpoly.algebra.field import field_for_q
from src.drinfeld_modpoly.algebra.fraction import fraction_field
from src.drinfeld_modpoly.algebra.polya import PolyA, poly_ring
from src.drinfeld_modpoly.drinfeld.module import (
    DrinfeldModule,
    bracket,
    carlitz,
    drinfeld_phi,
    exponential_coefficients,
    rank_one_exponential,
    torsion_polynomial,
)
from src.drinfeld_modpoly.drinfeld.tau import TauPoly, tau_mul
from src.drinfeld_modpoly.errors import ShapeError, ZeroPolynomialError


class TestTauPoly:
    def test_commutation_rule(self, A3):
        T = A3.T
        tau = TauPoly.tau(A3)
        assert tau * TauPoly.constant(A3, T) == TauPoly(A3, [0, T**3])

    def test_composition_matches_evaluation(self, A3):
        T = A3.T
        f = TauPoly(A3, [T, 1])
        g = TauPoly(A3, [1, T])
        x = T + 1
        assert (f * g).evaluate(x) == f.evaluate(g.evaluate(x))

    def test_evaluate(self, A3):
        T = A3.T
        rho_T = TauPoly(A3, [T, 1])
        assert rho_T.evaluate(T + 1) == T * (T + 1) + (T + 1) ** 3

    def test_additive_text(self, A2):
        T = A2.T
        assert str(TauPoly(A2, [T, T + 1, 1])) == "X^4+(T+1)*X^2+T*X"

    def test_square_of_carlitz_generator(self, A2):
        T = A2.T
        f = TauPoly(A2, [T, 1])
        assert tau_mul(f, f).coeffs == (T**2, T**2 + T, A2.one())
        assert tau_mul(f, TauPoly.constant(A2, 1)) == f

    def test_frobenius_twist(self, A3):
        T = A3.T
        f = TauPoly(A3, [T, 1])
        tau = TauPoly.tau(A3)
        assert tau * f == f.frobenius_twist() * tau


class TestDrinfeldModule:
    def test_carlitz_square(self, A2):
        T = A2.T
        rho = carlitz(2).phi(T**2)
        assert rho.coeffs == (T**2, T + T**2, A2.one())

    def test_phi_is_multiplicative(self, A3):
        T = A3.T
        dm = DrinfeldModule(A3, [T, 1])
        assert dm.phi(T + 1) * dm.phi(T) == dm.phi(T**2 + T)

    @pytest.mark.parametrize(
        ("q", "coefficients", "max_degree"),
        [(2, ["1"], 3), (3, ["1"], 3), (2, ["T", "T+1"], 2), (3, ["T", "1"], 1)],
    )
    def test_phi_is_a_ring_homomorphism(self, q, coefficients, max_degree):
        field = field_for_q(q)
        A = poly_ring(field)
        dm = DrinfeldModule(A, [A.parse(c) for c in coefficients])
        rng = random.Random(q * 10 + len(coefficients))
        for _ in range(4):
            a, b = (
                PolyA(field, [rng.randrange(q) for _ in range(rng.randint(1, max_degree + 1))])
                for _ in range(2)
            )
            if not a or not b:
                continue
            assert dm.phi(a * b) == dm.phi(a) * dm.phi(b)
            if a + b:
                assert dm.phi(a + b) == dm.phi(a) + dm.phi(b)

    def test_phi_degree_and_lead(self, A2):
        T = A2.T
        dm = DrinfeldModule(A2, [T, T + 1])
        rho = dm.phi(T**2)
        assert rho.degree == 4
        # leading coefficient Delta^(1 + q^2)
        assert rho.leading() == (T + 1) ** 5

    def test_phi_is_cached(self, A2):
        dm = carlitz(2)
        assert drinfeld_phi(dm, A2.T**3) is drinfeld_phi(dm, A2.T**3)

    def test_zero_delta_rejected(self, A2):
        with pytest.raises(ZeroPolynomialError):
            DrinfeldModule(A2, [1, 0])

    def test_empty_coefficients_rejected(self, A2):
        with pytest.raises(ShapeError):
            DrinfeldModule(A2, [])

    def test_phi_of_zero_rejected(self, A2):
        with pytest.raises(ZeroPolynomialError):
            carlitz(2).phi(A2.zero())

    def test_rank(self, A3):
        assert carlitz(3).rank == 1
        assert DrinfeldModule(A3, [0, 0, 1]).rank == 3

    def test_torsion_polynomial(self, A3):
        assert str(torsion_polynomial(carlitz(3), A3.T)) == "X^3+T*X"

    def test_bracket(self, F2, A2):
        assert bracket(F2, 1) == A2.T**2 + A2.T

    def test_normalized_delta(self, A3):
        T = A3.T
        dm = DrinfeldModule(A3, [T, 1]).with_normalized_delta(2)
        assert dm.g == (T,)
        assert dm.delta == 1
        with pytest.raises(ShapeError) as exc:
            DrinfeldModule(A3, [T, 2]).with_normalized_delta(1)
        assert exc.value.details["scale"] == "1"


class TestExponential:
    def test_carlitz_exponential(self, F2):
        dm = carlitz(2, fraction_field(F2))
        assert exponential_coefficients(dm, 3) == [rank_one_exponential(2, k) for k in range(4)]

    def test_first_coefficient(self, F3, A3):
        K = fraction_field(F3)
        T = A3.T
        assert rank_one_exponential(3, 1) == K.inv(K.coerce(T**3 - T))

    def test_rank_two_recursion(self, F2, A2):
        K = fraction_field(F2)
        T = K.coerce(A2.T)
        dm = DrinfeldModule(K, [T, 1])
        e = exponential_coefficients(dm, 2)
        # [1] e_q = g_1 and [2] e_{q^2} = g_1 e_q^q + Delta
        assert e[1] * K.coerce(bracket(F2, 1)) == T
        assert e[2] * K.coerce(bracket(F2, 2)) == T * e[1] ** 2 + 1
