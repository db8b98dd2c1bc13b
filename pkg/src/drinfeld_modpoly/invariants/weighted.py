"""Weighted polynomial rings K[u_1, ..., u_{r-1}] and the action of F_{q^r}^x / F_q^x.

The weight of u_k is (q^k - 1)/(q^r - 1); beta acts by u_k -> beta^(q^k - 1) u_k.
A monomial is invariant exactly when its weight is an integer.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from fractions import Fraction
from math import gcd
from typing import Any

from src.drinfeld_modpoly.algebra.field import FieldElement, FiniteField, field_for_q, field_make
from src.drinfeld_modpoly.algebra.fraction import FractionFieldK, RationalFunc, fraction_field
from src.drinfeld_modpoly.algebra.multipoly import MultiPoly, MultiPolyRing, multipoly_ring
from src.drinfeld_modpoly.algebra.polya import PolyA
from src.drinfeld_modpoly.algebra.quotient import UPoly
from src.drinfeld_modpoly.errors import RingMismatchError, ShapeError, ZeroPolynomialError


def u_names(r: int) -> tuple[str, ...]:
    return tuple(f"u{k}" for k in range(1, r))


def weighted_ring(q: int, r: int, extra: Sequence[str] = ()) -> MultiPolyRing:
    """K[u_1, ..., u_{r-1}, *extra] over K = F_q(T)."""
    if r < 2:
        raise ShapeError("weighted coordinates need rank at least 2", rank=r)
    return multipoly_ring(fraction_field(field_for_q(q)), u_names(r) + tuple(extra))


class WeightedPoly:
    """A polynomial in u_1, ..., u_{r-1} (and optional extra generators) with weights.

    Extra generators carry the weights given in ``extra_weights`` (default 0)
    and are ignored by the group action.
    """

    __slots__ = ("poly", "r", "q", "weights")

    def __init__(
        self, poly: MultiPoly, r: int, q: int, extra_weights: Sequence[Fraction] = ()
    ) -> None:
        n_u = r - 1
        names = poly.ring.names
        if names[:n_u] != u_names(r):
            raise RingMismatchError("weighted polynomial ring must start with u1..u{r-1}")
        extras = list(extra_weights) + [Fraction(0)] * (len(names) - n_u - len(extra_weights))
        self.poly = poly
        self.r = r
        self.q = q
        self.weights = tuple(
            [Fraction(q**k - 1, q**r - 1) for k in range(1, r)] + [Fraction(w) for w in extras]
        )

    @classmethod
    def parse(cls, text: str, q: int, r: int) -> WeightedPoly:
        return cls(weighted_ring(q, r).parse(text), r, q)

    def weight(self, alpha: Sequence[int]) -> Fraction:
        return sum((w * a for w, a in zip(self.weights, alpha, strict=True)), Fraction(0))

    def _u_exponent_sum(self, alpha: Sequence[int]) -> int:
        """sum_k alpha_k (q^k - 1)."""
        return sum(alpha[k - 1] * (self.q**k - 1) for k in range(1, self.r))

    def _like(self, poly: MultiPoly) -> WeightedPoly:
        out = WeightedPoly.__new__(WeightedPoly)
        out.poly, out.r, out.q, out.weights = poly, self.r, self.q, self.weights
        return out

    def __add__(self, other: WeightedPoly) -> WeightedPoly:
        return self._like(self.poly + other.poly)

    def __sub__(self, other: WeightedPoly) -> WeightedPoly:
        return self._like(self.poly - other.poly)

    def __mul__(self, other: WeightedPoly) -> WeightedPoly:
        return self._like(self.poly * other.poly)

    def __pow__(self, n: int) -> WeightedPoly:
        return self._like(self.poly**n)

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedPoly):
            return NotImplemented
        return (self.r, self.q) == (other.r, other.q) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.r, self.q, self.poly))

    def __str__(self) -> str:
        return str(self.poly)

    def __repr__(self) -> str:
        return f"WeightedPoly(r={self.r}, q={self.q}, {self.poly})"

    def evaluate(self, values: Sequence[Any], coerce: Callable[[Any], Any], zero: Any) -> Any:
        """Substitute ring elements or series for the generators."""
        return self.poly.evaluate(values, coerce, zero)


# =============================================================================
# Weighted degree
# =============================================================================


def weighted_degree(f: WeightedPoly) -> Fraction:
    if not f.poly:
        raise ZeroPolynomialError("weighted degree of the zero polynomial")
    return max(f.weight(alpha) for alpha in f.poly.terms)


def weighted_leading_form(f: WeightedPoly) -> WeightedPoly:
    """The sum of the monomials of maximal weight."""
    top = weighted_degree(f)
    return f._like(
        MultiPoly(f.poly.ring, {a: c for a, c in f.poly.terms.items() if f.weight(a) == top})
    )


def is_invariant(f: WeightedPoly) -> bool:
    m = f.q**f.r - 1
    return all(f._u_exponent_sum(alpha) % m == 0 for alpha in f.poly.terms)


def jk_invariant(k: int, r: int, q: int) -> WeightedPoly:
    """j_k = u_k^((q^r - 1)/(q^gcd(k, r) - 1))."""
    if not 1 <= k <= r - 1:
        raise ShapeError("invariant index out of range", k=k, rank=r)
    exponent = (q**r - 1) // (q ** gcd(k, r) - 1)
    ring = weighted_ring(q, r)
    alpha = tuple(exponent if i == k - 1 else 0 for i in range(r - 1))
    return WeightedPoly(ring.monomial(alpha), r, q)


def from_j_polynomial(poly_in_j: UPoly | Sequence[Any], q: int) -> WeightedPoly:
    """sum c_i j^i with j = u_1^(q+1), as a rank-2 weighted polynomial."""
    coeffs = poly_in_j.coeffs if isinstance(poly_in_j, UPoly) else tuple(poly_in_j)
    ring = weighted_ring(q, 2)
    terms = {((q + 1) * i,): ring.base.coerce(c) for i, c in enumerate(coeffs) if c}
    return WeightedPoly(MultiPoly(ring, terms), 2, q)


# =============================================================================
# Group action
# =============================================================================


def action_field(q: int, r: int) -> FiniteField:
    """F_{q^r}, built as a degree e*r extension of F_p when q = p^e."""
    small = field_for_q(q)
    return field_make(small.p, small.e * r)


def _embed_rational(x: RationalFunc, table: Sequence[int], big: FiniteField) -> RationalFunc:
    num = PolyA(big, [table[v] for v in x.num.coeffs])
    den = PolyA(big, [table[v] for v in x.den.coeffs])
    return RationalFunc(num, den)


def extend_scalars(f: WeightedPoly, big: FiniteField) -> WeightedPoly:
    """f with coefficients moved from F_q(T) to F_{q^r}(T)."""
    base = f.poly.ring.base
    if not isinstance(base, FractionFieldK):
        raise RingMismatchError("scalar extension needs coefficients in K")
    table = base.field.embed_into(big)
    ring = multipoly_ring(fraction_field(big), f.poly.ring.names)
    poly = MultiPoly(ring, {a: _embed_rational(c, table, big) for a, c in f.poly.terms.items()})
    return f._like(poly)


def g_action(f: WeightedPoly, beta: FieldElement) -> WeightedPoly:
    """u^alpha -> beta^(sum alpha_k (q^k - 1)) u^alpha; the result lives over F_{q^r}(T)."""
    if not beta:
        raise ZeroPolynomialError("the group action needs a nonzero beta")
    big = beta.field
    if big.q != f.q**f.r:
        raise RingMismatchError("beta must lie in F_{q^r}", size=big.q, expected=f.q**f.r)
    extended = extend_scalars(f, big)
    K = extended.poly.ring.base
    order = big.q - 1
    terms = {}
    for alpha, c in extended.poly.terms.items():
        scale = beta ** (f._u_exponent_sum(alpha) % order)
        terms[alpha] = c * K.coerce(scale)
    return f._like(MultiPoly(extended.poly.ring, terms))


def invariant_under_generator(f: WeightedPoly) -> bool:
    """g_action(f, beta) == f for beta a primitive element of F_{q^r}."""
    big = action_field(f.q, f.r)
    return g_action(f, big.primitive_element()) == extend_scalars(f, big)
