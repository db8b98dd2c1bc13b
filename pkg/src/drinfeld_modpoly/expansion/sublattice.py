"""u_k of a sublattice with cyclic quotient A/nA, expanded in s = q(z_r / n).

For the shape (n_1, n_2, lambda) the sublattice is n_2 Lambda_{r-1} + A w with
w = n_1 z_r + lambda. Rescaled by 1/n_2 its new lattice vector satisfies

    e((n_1 z_r + lambda) / n_2) = rho_{n_1^2}(1/s) + e(lambda n_1 / n),

so its parameter is 1/L for an exact Laurent polynomial L in s. In rank 2
the torsion value e(lambda n_1 / n) lives in the Carlitz torsion algebra and
every coefficient is exact. In higher rank the isogeny of the lower lattice
and the torsion values are replaced by free symbols, which certifies orders
and leading terms only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from src.drinfeld_modpoly.algebra.field import field_for_q
from src.drinfeld_modpoly.algebra.fraction import fraction_field
from src.drinfeld_modpoly.algebra.polya import PolyA
from src.drinfeld_modpoly.algebra.series import (
    FracLaurentSeries,
    RootScaledSeries,
    compose_reciprocal,
    laurent_polynomial,
    series_binomial_power,
    series_compose_scale,
    series_inverse,
    series_mul,
    series_pow,
    series_regrid,
    series_shift,
)
from src.drinfeld_modpoly.drinfeld.module import DrinfeldModule, carlitz, drinfeld_phi
from src.drinfeld_modpoly.errors import ShapeError
from src.drinfeld_modpoly.expansion.bridge import get_bridge
from src.drinfeld_modpoly.expansion.context import ExpansionContext
from src.drinfeld_modpoly.expansion.cusp import u_expansion, u_integral_part
from src.drinfeld_modpoly.lattices.counting import SublatticeShape
from src.drinfeld_modpoly.modpoly.torsion import TorsionAlgebra
from src.drinfeld_modpoly.utils.logging import setup_logger

logger = setup_logger(__name__)


# =============================================================================
# Orders and leading terms
# =============================================================================


def sublattice_order(k: int, shape: SublatticeShape, q: int) -> int:
    """Numerator of ord_s u_k on the grid 1/(q^r - 1).

    -|n_1|^(2r-2) |n_2|^(r-2) (q-1)(q^k-1).
    """
    r = shape.rank
    return -(shape.n1.norm() ** (2 * r - 2)) * shape.n2.norm() ** (r - 2) * (q - 1) * (q**k - 1)


def sublattice_order_fraction(k: int, shape: SublatticeShape, q: int) -> Fraction:
    return Fraction(sublattice_order(k, shape, q), q**shape.rank - 1)


# =============================================================================
# Rank 2
# =============================================================================


def reciprocal_parameter(
    shape: SublatticeShape, lower: DrinfeldModule, constant: Any
) -> FracLaurentSeries:
    """L = rho_{n_1^2}(1/s) + constant, exact, over the ring of ``lower``."""
    rho = drinfeld_phi(lower, shape.n1 * shape.n1)
    q = lower.q
    terms: list[tuple[int, Any]] = [(-(q**i), c) for i, c in enumerate(rho.coeffs) if c]
    if constant:
        terms.append((0, constant))
    return laurent_polynomial(lower.ring, terms)


def level_parameter(n: PolyA, ring: Any) -> FracLaurentSeries:
    """rho^C_n(1/s) over ``ring``: 1/t as a Laurent polynomial in s = q(z/n)."""
    rho = drinfeld_phi(carlitz(n.field.q, ring), n)
    q = n.field.q
    return laurent_polynomial(ring, ((-(q**i), c) for i, c in enumerate(rho.coeffs) if c))


def rank2_parameter(shape: SublatticeShape, tors: TorsionAlgebra | None) -> FracLaurentSeries:
    """L for a rank-2 shape, with coefficients in the torsion algebra of level n."""
    if shape.rank != 2:
        raise ShapeError("rank-2 parameter needs a rank-2 shape", rank=shape.rank)
    if tors is None:
        if not shape.n.is_constant():
            raise ShapeError("a torsion algebra is needed for a level of positive degree")
        lower = carlitz(shape.n.field.q, fraction_field(shape.n.field))
        return reciprocal_parameter(shape, lower, None)
    if tors.n != shape.n:
        raise ShapeError("shape and torsion algebra have different levels")
    constant = tors.torsion_value(shape.lam_value * shape.n1)
    return reciprocal_parameter(shape, tors.module, constant)


def sublattice_u_expansion(
    k: int,
    shape: SublatticeShape,
    ctx: ExpansionContext,
    tors: TorsionAlgebra | None = None,
) -> RootScaledSeries:
    """u_k of the rank-2 sublattice of ``shape`` in s.

    With m = |n_1|^2 and L = s^(-m) (1 + B),

        u_k = (-1)^e s^(-m (q-1) e) (1 + B)^((q-1) e) W(1/L),

    W being the integral part of u_k in t. Order -m (q-1)(q^k-1)/(q^2-1).
    """
    if ctx.r != 2 or ctx.is_symbolic:
        raise ShapeError("concrete sublattice expansions are for rank 2", rank=ctx.r)
    q = ctx.q
    D = ctx.grid_denom
    e, W = u_integral_part(k, ctx)
    L = rank2_parameter(shape, tors)
    m = shape.n1.norm() ** 2
    composed = compose_reciprocal(W, L)
    factor = series_binomial_power(series_shift(L, m), (q - 1) * e, composed.prec)
    body = series_mul(composed, factor)
    series = series_shift(series_regrid(body, D), -m * (q - 1) * (q**k - 1))
    logger.debug(
        "Sublattice u expansion",
        extra={"k": k, "shape": shape.label(), "order": series.order, "prec": series.prec},
    )
    return RootScaledSeries(e, series)


# =============================================================================
# Higher rank, formal
# =============================================================================


@dataclass(frozen=True)
class FormalSublatticeExpansion:
    """u_k of a sublattice with formal isogeny and torsion data."""

    k: int
    shape: SublatticeShape
    u: RootScaledSeries
    lower_generators: tuple[str, ...]

    @property
    def order(self) -> int:
        return int(self.u.order)


def _formal_names(r: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    lower = tuple(f"et{k}" for k in range(1, r - 1))
    return lower, (*lower, "lam", "k1", "k2")


def formal_sublattice_u_expansion(
    k: int, shape: SublatticeShape, q: int, window: int = 3
) -> FormalSublatticeExpansion:
    """u_k of the sublattice in s, for any rank r >= 2, up to a few terms past the lead.

    The rescaled sublattice has lower lattice with free exponential
    coefficients et1, ...; its parameter is tau = v^d + k1 v^(d+1) + k2 v^(d+2)
    with v = 1/(rho_{n_1^2}(1/s) + lam) and d = |n_2|^(r-2), the isogeny being
    normalized to leading coefficient 1.
    """
    r = shape.rank
    if r < 2 or not 1 <= k <= r - 1:
        raise ShapeError("u_k needs 1 <= k <= r - 1", k=k, rank=r)
    lower_names, extra = _formal_names(r)
    outer = ExpansionContext.symbolic(q, r, window, extra_generators=extra)
    ring = outer.ring
    M1 = shape.n1.norm() ** (2 * (r - 1))
    d = shape.n2.norm() ** (r - 2)

    L = reciprocal_parameter(shape, outer.lower, ring.gen("lam"))
    v = series_inverse(L, M1 + window)
    tau = series_pow(v, d)
    for name, extra_power in (("k1", 1), ("k2", 2)):
        coeff = FracLaurentSeries.monomial(ring, 0, ring.gen(name))
        tau = tau + series_mul(series_pow(v, d + extra_power), coeff)

    inner = ExpansionContext.over_ring(q, r, (q - 1) + 2, ring, lower_names)
    u = u_expansion(k, inner)
    series = series_compose_scale(u.series, tau)
    logger.debug(
        "Formal sublattice u expansion",
        extra={"k": k, "rank": r, "shape": shape.label(), "order": series.order},
    )
    return FormalSublatticeExpansion(k, shape, RootScaledSeries(u.exponent, series), lower_names)


def formal_expected_lead(expansion: FormalSublatticeExpansion, q: int) -> Any:
    """Leading coefficient of the formal expansion: F_k(et) for k <= r-2, else 1."""
    k, r = expansion.k, expansion.shape.rank
    ring = expansion.u.ring
    if k == r - 1:
        return ring.one()
    generators = expansion.lower_generators
    bridge = get_bridge(field_for_q(q), r)
    gens = [ring.gen(name) for name in generators]
    padded = gens + [ring.zero()] * (bridge.k_max - len(gens))
    return bridge.F[k - 1].evaluate(padded, ring.coerce, ring.zero())

