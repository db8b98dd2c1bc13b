"""Tests for finite fields and the polynomial ring A = F_q[T]."""

import random

import pytest

from src.drinfeld_modpoly.algebra.field import field_for_q, field_make, prime_power
from src.drinfeld_modpoly.algebra.fraction import fraction_field
from src.drinfeld_modpoly.algebra.polya import (
    PolyA,
    enumerate_below,
    enumerate_monic,
    monic_divisors,
    poly_divmod,
    poly_gcd,
    poly_lcm,
    poly_ring,
    poly_xgcd,
)
from src.drinfeld_modpoly.errors import FieldError, ZeroDivisorError, ZeroPolynomialError

# =============================================================================
# Finite fields
# =============================================================================


class TestFiniteField:
    def test_prime_power_splits(self):
        assert prime_power(9) == (3, 2)
        assert prime_power(2) == (2, 1)

    @pytest.mark.parametrize("q", [0, 1, 6, 12])
    def test_non_prime_power_rejected(self, q):
        with pytest.raises(FieldError):
            prime_power(q)

    def test_non_prime_characteristic_rejected(self):
        with pytest.raises(FieldError):
            field_make(4)

    def test_reducible_modulus_rejected(self):
        # x^2 + 1 = (x + 1)^2 over F_2
        with pytest.raises(FieldError):
            field_make(2, 2, modulus=[1, 0, 1])

    def test_f4_generator_relation(self):
        F4 = field_for_q(4)
        a = F4.generator
        assert a * a == a + 1
        assert F4.multiplicative_order(a) == 3

    def test_f9_default_modulus_is_x2_plus_1(self):
        F9 = field_for_q(9)
        a = F9.generator
        assert a * a == F9.element(2)
        assert F9.format_modulus() == "x^2+1"

    def test_inverse_in_prime_field(self, F3):
        two = F3.element(2)
        assert F3.inv(two) == two
        assert two * two == 1

    def test_fields_are_cached(self):
        assert field_for_q(3) is field_for_q(3)


# =============================================================================
# Polynomials over F_q
# =============================================================================


class TestPolyA:
    def test_char_two_square(self, A2):
        T = A2.T
        assert (T + 1) ** 2 == T**2 + 1

    def test_canonical_text(self, A2, A3):
        T = A2.T
        assert str(T**3 + T + 1) == "T^3+T+1"
        assert str(2 * A3.T + 1) == "2*T+1"
        assert str(A2.zero()) == "0"

    def test_divmod(self, A2):
        T = A2.T
        quot, rem = divmod(T**3 + 1, T + 1)
        assert quot == T**2 + T + 1
        assert not rem

    def test_division_by_zero_polynomial(self, A2):
        with pytest.raises(ZeroDivisionError):
            divmod(A2.T, A2.zero())

    def test_gcd_is_monic(self, A3):
        T = A3.T
        assert poly_gcd(2 * T**2 + 2 * T, T**2 - 1) == T + 1

    def test_xgcd_and_lcm(self, A3):
        T = A3.T
        a, b = T**2 - 1, T**2 + 2 * T + 1
        g, s, t = poly_xgcd(a, b)
        assert g == T + 1
        assert s * a + t * b == g
        assert poly_lcm(a, b) == (T - 1) * (T + 1) ** 2
        assert poly_divmod(T**2 + 1, T) == (T, A3.one())

    def test_norm(self, A2, A3):
        assert (A2.T**2).norm() == 4
        assert (A3.T + 1).norm() == 3
        with pytest.raises(ZeroPolynomialError):
            A2.zero().norm()

    def test_radical_and_factors(self, A2):
        T = A2.T
        f = T**2 * (T + 1) ** 3
        assert f.radical() == T**2 + T
        assert (T**3 + 1).prime_factors() == [(T + 1, 1), (T**2 + T + 1, 1)]

    def test_compose_eval_squarefree(self, A3):
        T = A3.T
        assert (T**2 + 1).compose(T + 1) == T**2 + 2 * T + 2
        assert (T**2 + 1).eval(1) == 2
        assert (T**2 * (T + 1)).squarefree_part() == T**2 + T

    def test_irreducibility(self, A2):
        T = A2.T
        assert (T**2 + T + 1).is_irreducible()
        assert not (T**2 + 1).is_irreducible()

    def test_distinct_degree_degrees(self, A2):
        T = A2.T
        assert ((T**2 + T + 1) * T * (T + 1)).distinct_degree_degrees() == [1, 1, 2]

    def test_enumerations(self, F2, F3):
        assert len(list(enumerate_monic(F3, 2))) == 9
        below = list(enumerate_below(F2, 2))
        assert len(below) == 4
        assert PolyA(F2) in below

    def test_monic_divisors_sorted(self, A2):
        T = A2.T
        assert monic_divisors(T**2) == [A2.one(), T, T**2]

    def test_units_of_a(self, A3):
        assert A3.inv(A3.coerce(2)) == A3.coerce(2)
        with pytest.raises(ZeroDivisorError):
            A3.inv(A3.T)

    def test_monic_normalization(self, A3):
        f = 2 * A3.T + 1
        assert f.monic() == A3.T + 2
        assert f.monic().is_monic()

    def test_poly_ring_cached(self, F2):
        assert poly_ring(F2) is poly_ring(F2)


# =============================================================================
# Randomized properties
# =============================================================================


def random_poly(rng: random.Random, field, max_degree: int = 4) -> PolyA:
    return PolyA(field, [rng.randrange(field.q) for _ in range(rng.randint(0, max_degree) + 1)])


class TestRandomizedProperties:
    """Ring laws and division checked on seeded random inputs."""

    @pytest.mark.parametrize("q", [2, 3, 4, 9])
    def test_ring_axioms(self, q):
        field = field_for_q(q)
        A = poly_ring(field)
        rng = random.Random(q)
        for _ in range(25):
            a, b, c = (random_poly(rng, field) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a - a == A.zero()
            assert a + A.zero() == a
            assert a * A.one() == a

    @pytest.mark.parametrize("q", [4, 9])
    def test_field_inverses(self, q):
        field = field_for_q(q)
        rng = random.Random(q)
        nonzero = [x for x in field.elements() if x]
        for _ in range(20):
            x, y = rng.choice(nonzero), rng.choice(nonzero)
            assert x * field.inv(x) == field.one()
            assert field.inv(x * y) == field.inv(x) * field.inv(y)

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_divmod_on_random_pairs(self, q):
        field = field_for_q(q)
        rng = random.Random(10 + q)
        for _ in range(40):
            a = random_poly(rng, field, 6)
            b = random_poly(rng, field, 3)
            if not b:
                continue
            quot, rem = poly_divmod(a, b)
            assert quot * b + rem == a
            assert rem.degree < b.degree

    @pytest.mark.parametrize("q", [2, 3])
    def test_gcd_on_random_pairs(self, q):
        field = field_for_q(q)
        rng = random.Random(20 + q)
        for _ in range(30):
            a, b = random_poly(rng, field), random_poly(rng, field)
            if not a and not b:
                continue
            g, s, t = poly_xgcd(a, b)
            assert g == poly_gcd(a, b)
            assert s * a + t * b == g
            assert not poly_divmod(a, g)[1]
            assert not poly_divmod(b, g)[1]

    def test_rational_functions(self, F3):
        K = fraction_field(F3)
        rng = random.Random(5)
        for _ in range(20):
            num, den = random_poly(rng, F3), random_poly(rng, F3)
            if not num or not den:
                continue
            x = K.coerce(num) * K.inv(K.coerce(den))
            y = K.coerce(random_poly(rng, F3))
            assert x * K.inv(x) == K.one()
            assert (x + y) * x == x * x + y * x
