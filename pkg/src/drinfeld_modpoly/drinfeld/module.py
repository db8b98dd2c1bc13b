"""Drinfeld modules over A = F_q[T] given by rho_T = T + g_1 tau + ... + Delta tau^r."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

from src.drinfeld_modpoly.algebra.field import FiniteField, field_for_q
from src.drinfeld_modpoly.algebra.fraction import RationalFunc, fraction_field
from src.drinfeld_modpoly.algebra.polya import PolyA, poly_ring
from src.drinfeld_modpoly.algebra.quotient import UPoly, UPolyRing
from src.drinfeld_modpoly.algebra.rings import CommutativeRing
from src.drinfeld_modpoly.drinfeld.tau import TauPoly, frobenius_iterates
from src.drinfeld_modpoly.errors import RingMismatchError, ShapeError, ZeroPolynomialError
from src.drinfeld_modpoly.utils.logging import setup_logger

logger = setup_logger(__name__)


class DrinfeldModule:
    """A rank-r Drinfeld module with coefficients in ``ring``.

    Args:
        ring: Coefficient ring; it must contain A (the name "T" must resolve).
        coefficients: [g_1, ..., g_{r-1}, Delta]; Delta must be nonzero.
    """

    def __init__(self, ring: CommutativeRing, coefficients: Sequence[Any]) -> None:
        if not coefficients:
            raise ShapeError("a Drinfeld module needs rank at least 1")
        names = ring.variables()
        if "T" not in names:
            raise RingMismatchError("coefficient ring does not contain A", ring=ring)
        coeffs = [ring.coerce(c) for c in coefficients]
        if not coeffs[-1]:
            raise ZeroPolynomialError("Delta of a Drinfeld module must be nonzero")
        self.ring = ring
        self.T = names["T"]
        self.g = tuple(coeffs[:-1])
        self.delta = coeffs[-1]
        self.rho_T = TauPoly(ring, [self.T, *coeffs])
        self._twists: list[tuple[Any, ...]] = [self.rho_T.coeffs]
        self._phi_cache: dict[PolyA, TauPoly] = {}

    @property
    def q(self) -> int:
        return self.ring.q

    @property
    def rank(self) -> int:
        return len(self.g) + 1

    def coefficient(self, k: int) -> Any:
        """g_k with g_r = Delta and g_k = 0 beyond the rank."""
        if k == self.rank:
            return self.delta
        if 1 <= k < self.rank:
            return self.g[k - 1]
        return self.ring.zero()

    def __repr__(self) -> str:
        return f"DrinfeldModule(rank={self.rank}, rho_T={self.rho_T.to_str()!r})"

    def _twisted_rho_T(self, i: int) -> tuple[Any, ...]:
        while len(self._twists) <= i:
            self._twists.append(tuple(self.ring.frobenius(c) for c in self._twists[-1]))
        return self._twists[i]

    def right_multiply_rho_T(self, f: TauPoly) -> TauPoly:
        """f * rho_T, reusing the cached Frobenius twists of rho_T."""
        zero = self.ring.zero()
        width = len(self.rho_T.coeffs)
        out = [zero] * (len(f.coeffs) + width - 1)
        for i, a in enumerate(f.coeffs):
            if not a:
                continue
            for j, b in enumerate(self._twisted_rho_T(i)):
                if b:
                    out[i + j] = out[i + j] + a * b
        return TauPoly(self.ring, out)

    def phi(self, a: PolyA) -> TauPoly:
        return drinfeld_phi(self, a)

    def scaled(self, c: Any) -> DrinfeldModule:
        """The isomorphic module c^(-1) rho c: g_k -> g_k c^(q^k - 1)."""
        c = self.ring.coerce(c)
        q = self.q
        coeffs = [
            self.coefficient(k) * self.ring.power(c, q**k - 1) for k in range(1, self.rank + 1)
        ]
        return DrinfeldModule(self.ring, coeffs)

    def with_normalized_delta(self, c: Any) -> DrinfeldModule:
        """The isomorphic module with Delta = 1, given c with c^(q^r - 1) = 1/Delta."""
        c = self.ring.coerce(c)
        out = self.scaled(c)
        if out.delta != self.ring.one():
            raise ShapeError("scaling element does not normalize Delta", scale=self.ring.format(c))
        return out


def drinfeld_phi(dm: DrinfeldModule, a: PolyA) -> TauPoly:
    """rho_a by Horner's rule in rho_T: rho_a = (...(a_d rho_T + a_{d-1}) rho_T ...) + a_0."""
    if not a:
        raise ZeroPolynomialError("rho_a is undefined for a = 0")
    cached = dm._phi_cache.get(a)
    if cached is not None:
        return cached
    ring = dm.ring
    d = int(a.degree)
    result = TauPoly.constant(ring, a.coefficient(d))
    for k in range(d - 1, -1, -1):
        result = dm.right_multiply_rho_T(result)
        c = a.coefficient(k)
        if c:
            result = result + TauPoly.constant(ring, c)
    dm._phi_cache[a] = result
    return result


def carlitz(q: int, ring: CommutativeRing | None = None) -> DrinfeldModule:
    """The Carlitz module rho_T = T + tau (over A unless ``ring`` is given)."""
    if ring is None:
        ring = poly_ring(field_for_q(q))
    return DrinfeldModule(ring, [ring.one()])


def torsion_polynomial(dm: DrinfeldModule, n: PolyA) -> UPoly:
    """rho_n(X) as an ordinary polynomial in X of degree q^(r deg n)."""
    rho = drinfeld_phi(dm, n)
    coeffs = rho.to_additive_coefficients()
    ring = UPolyRing(dm.ring, "X")
    dense = [dm.ring.zero()] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        dense[e] = c
    return UPoly(ring, dense)


def bracket(field: FiniteField, k: int) -> PolyA:
    """[k] = T^(q^k) - T."""
    T = poly_ring(field).T
    return T ** (field.q**k) - T


def exponential_coefficients(dm: DrinfeldModule, k_max: int) -> list[Any]:
    """[e_1 = 1, e_q, ..., e_{q^k_max}] of the exponential of ``dm``.

    Solves [k] e_{q^k} = sum_{j=1..k} g_j e_{q^(k-j)}^(q^j); [k] must be a unit
    of the coefficient ring (K, or a polynomial ring over K).
    """
    ring = dm.ring
    field = _base_field(ring)
    e = [ring.one()]
    for k in range(1, k_max + 1):
        acc = ring.zero()
        for j in range(1, min(k, dm.rank) + 1):
            twisted = frobenius_iterates(ring, e[k - j], j + 1)[j]
            acc = acc + dm.coefficient(j) * twisted
        e.append(acc * ring.inv(ring.coerce(bracket(field, k))))
    return e


def rank_one_exponential(q: int, k: int) -> RationalFunc:
    """Carlitz exponential coefficient 1/D_k, D_k = prod_{i<k} (T^(q^k) - T^(q^i))."""
    field = field_for_q(q)
    T = poly_ring(field).T
    D = poly_ring(field).one()
    for i in range(k):
        D = D * (T ** (q**k) - T ** (q**i))
    return fraction_field(field).coerce(D).inverse()


def _base_field(ring: CommutativeRing) -> FiniteField:
    while not isinstance(ring, FiniteField):
        if hasattr(ring, "field"):
            return ring.field
        ring = ring.base
    return ring
