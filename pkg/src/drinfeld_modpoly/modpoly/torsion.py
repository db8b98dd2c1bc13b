"""Carlitz torsion algebras K[x]/(psi_n) carrying x = e_C(pi/n)."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from src.drinfeld_modpoly.algebra.fraction import fraction_field
from src.drinfeld_modpoly.algebra.polya import PolyA, monic_divisors, poly_gcd
from src.drinfeld_modpoly.algebra.quotient import QElem, QuotientAlgebra, UPoly, UPolyRing, upoly_lcm
from src.drinfeld_modpoly.algebra.series import FracLaurentSeries, series_map
from src.drinfeld_modpoly.drinfeld.module import DrinfeldModule, carlitz, torsion_polynomial
from src.drinfeld_modpoly.errors import ShapeError
from src.drinfeld_modpoly.utils.logging import setup_logger

logger = setup_logger(__name__)


def carlitz_torsion(n: PolyA) -> UPoly:
    """rho^C_n(X) over K."""
    K = fraction_field(n.field)
    return torsion_polynomial(carlitz(n.field.q, K), n)


def cyclotomic_factor(n: PolyA) -> UPoly:
    """rho_n(X) divided by the lcm of rho_d(X) over the proper monic divisors d of n."""
    full = carlitz_torsion(n)
    lcm = None
    for d in monic_divisors(n):
        if d == n:
            continue
        part = carlitz_torsion(d)
        lcm = part if lcm is None else upoly_lcm(lcm, part)
    if lcm is None:
        return full
    quot, rem = divmod(full, lcm)
    if rem:
        raise ShapeError("torsion polynomials do not divide", n=str(n))
    return quot.monic()


@dataclass
class TorsionAlgebra:
    """K[x]/(psi) with x the image of e_C(pi/n).

    Attributes:
        n: The level.
        psi: The modulus (rho_n(X)/X, or the cyclotomic factor when primitive).
        alg: The quotient algebra.
        primitive: Whether ``psi`` is the cyclotomic factor.
        module: The Carlitz module with coefficients in ``alg``.
    """

    n: PolyA
    psi: UPoly
    alg: QuotientAlgebra
    primitive: bool
    module: DrinfeldModule
    _values: dict[PolyA, QElem] = field(default_factory=dict, repr=False)

    @property
    def x(self) -> QElem:
        return self.alg.gen

    def torsion_value(self, a: PolyA) -> QElem:
        """e_C(pi a / n) = rho_a(x); zero for a = 0."""
        if not a:
            return self.alg.zero()
        a = a % self.n
        if not a:
            return self.alg.zero()
        value = self._values.get(a)
        if value is None:
            value = self.module.phi(a).evaluate(self.x)
            self._values[a] = value
        return value

    def apply_automorphism(self, elem: QElem, b: PolyA) -> QElem:
        """The K-algebra map x -> rho_b(x) applied to ``elem``."""
        y = self.torsion_value(b)
        acc = self.alg.zero()
        for c in reversed(self.alg.coordinates(elem)):
            acc = acc * y + c
        return acc

    def apply_to_series(self, series: FracLaurentSeries, b: PolyA) -> FracLaurentSeries:
        return series_map(series, lambda c: self.apply_automorphism(c, b), self.alg)


def torsion_algebra(n: PolyA, primitive: bool = False) -> TorsionAlgebra:
    """The torsion algebra of level n (monic, degree at least 1).

    With ``primitive=False`` the modulus is psi_n = rho_n(X)/X, so psi_T = X^(q-1) + T.
    """
    if not n.is_monic() or n.degree < 1:
        raise ShapeError("torsion algebra needs a monic level of positive degree", n=str(n))
    full = carlitz_torsion(n)
    if primitive:
        psi = cyclotomic_factor(n)
    else:
        X = UPolyRing(full.ring.base, "X").gen
        psi, rem = divmod(full, X)
        if rem:
            raise ShapeError("rho_n(X) is not divisible by X", n=str(n))
    modulus = psi.map_coefficients(UPolyRing(psi.ring.base, "x"))
    alg = QuotientAlgebra(modulus, "x")
    logger.debug(
        "Built torsion algebra",
        extra={"n": str(n), "degree": alg.rank, "primitive": primitive},
    )
    return TorsionAlgebra(n=n, psi=psi, alg=alg, primitive=primitive, module=DrinfeldModule(alg, [1]))


def _series_key(series: FracLaurentSeries) -> tuple[Any, ...]:
    return (series.prec, series.denom, tuple(series.items()))


def galois_permutes_conjugates(
    tors: TorsionAlgebra, conjugates: Sequence[FracLaurentSeries], b: PolyA
) -> bool:
    """Whether x -> rho_b(x) (b prime to n) maps the conjugate set onto itself."""
    if not poly_gcd(b, tors.n).is_constant():
        raise ShapeError("b must be prime to the level", b=str(b), n=str(tors.n))
    before = Counter(_series_key(s) for s in conjugates)
    after = Counter(_series_key(tors.apply_to_series(s, b)) for s in conjugates)
    return before == after
