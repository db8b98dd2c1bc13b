"""Expansions of rank-r lattice invariants in the cusp parameter t = 1/e(z_r).

The lattice is Lambda_r = Lambda_{r-1} + A z_r with the lower lattice fixed
by an ``ExpansionContext``. The building blocks are

* the Goss-type polynomials P_i with sum_lambda (z_r + lambda)^(-i-1) = t P_i(t),
* q(a z_r) = 1 / rho_a(1/t), a power series in t of order q^((r-1) deg a),

from which Eisenstein series, the g_k, Delta and the weighted coordinates
u_k follow. Coefficient-level results are exact; truncation is tracked by the
series precision.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from src.drinfeld_modpoly.algebra.polya import PolyA, enumerate_monic, poly_ring
from src.drinfeld_modpoly.algebra.quotient import UPoly, UPolyRing
from src.drinfeld_modpoly.algebra.series import (
    FracLaurentSeries,
    RootScaledSeries,
    laurent_polynomial,
    series_binomial_power,
    series_change_ring,
    series_frobenius,
    series_inverse,
    series_mul,
    series_pow,
    series_regrid,
    series_shift,
    series_truncate,
)
from src.drinfeld_modpoly.drinfeld.module import bracket, drinfeld_phi
from src.drinfeld_modpoly.errors import ShapeError, ZeroPolynomialError
from src.drinfeld_modpoly.expansion.bridge import get_bridge
from src.drinfeld_modpoly.expansion.context import ExpansionContext
from src.drinfeld_modpoly.invariants.weighted import WeightedPoly, is_invariant
from src.drinfeld_modpoly.utils.logging import setup_logger

logger = setup_logger(__name__)


# =============================================================================
# Power sums over the lower lattice
# =============================================================================


def a_poly(i: int, ctx: ExpansionContext) -> UPoly:
    """P_i in t: P_0 = 1, P_i = t (P_{i-1} + sum_{q^j <= i} e_{q^j} P_{i-q^j}).

    P_i is monic of degree i, divisible by t for i >= 1, with coefficients in
    F_q[e_{q^j} : q^j <= i] of the lower lattice.
    """
    if i < 0:
        raise ShapeError("P_i needs i >= 0", i=i)
    ring = UPolyRing(ctx.ring, "t")
    polys: list[UPoly] = ctx.cache.setdefault("a_poly", [ring.one()])
    t = ring.gen
    q = ctx.q
    while len(polys) <= i:
        k = len(polys)
        acc = polys[k - 1]
        j = 1
        while q**j <= k:
            acc = acc + polys[k - q**j] * ctx.exponential(j)
            j += 1
        polys.append(acc * t)
    return polys[i]


def power_sum(i: int, ctx: ExpansionContext) -> FracLaurentSeries:
    """sum_{lambda in Lambda_{r-1}} (z_r + lambda)^(-i-1) = t P_i(t), exact."""
    p = a_poly(i, ctx)
    return laurent_polynomial(ctx.ring, ((k + 1, c) for k, c in enumerate(p.coeffs) if c))


# =============================================================================
# q(a z_r)
# =============================================================================


def parameter_order(a: PolyA, ctx: ExpansionContext) -> int:
    """ord_t q(a z_r) = q^((r-1) deg a)."""
    return ctx.q ** ((ctx.r - 1) * int(a.degree))


def inverse_parameter_factor(b: PolyA, ctx: ExpansionContext) -> FracLaurentSeries:
    """t^M rho_b(1/t) with M = ord q(b z_r): an exact polynomial with constant term l(b)."""
    rho = drinfeld_phi(ctx.lower, b)
    q = ctx.q
    top = q ** (len(rho.coeffs) - 1)
    return laurent_polynomial(
        ctx.lattice_ring, ((top - q**i, c) for i, c in enumerate(rho.coeffs) if c)
    )


def q_scaled(a: PolyA, ctx: ExpansionContext, precision: int | None = None) -> FracLaurentSeries:
    """q(a z_r) = 1 / rho_a(1/t) over the lower-lattice ring.

    Order q^((r-1) deg a), leading coefficient l(a)^(-1).
    """
    if not a:
        raise ZeroPolynomialError("q(a z) is undefined for a = 0")
    N = ctx.precision if precision is None else precision
    key = ("q_scaled", a, N)
    cached = ctx.cache.get(key)
    if cached is not None:
        return cached
    rho = drinfeld_phi(ctx.lower, a)
    q = ctx.q
    L = laurent_polynomial(
        ctx.lattice_ring, ((-(q**i), c) for i, c in enumerate(rho.coeffs) if c)
    )
    result = series_inverse(L, N)
    ctx.cache[key] = result
    return result


def monic_classes(ctx: ExpansionContext, bound: int | None = None) -> Iterator[PolyA]:
    """Monic a with q^((r-1) deg a) < bound (default: the context precision).

    Every nonzero a is eps * (monic) with eps in F_q^x; the sums below fold
    the eps-multiples into one term per monic class.
    """
    N = ctx.precision if bound is None else bound
    d = 0
    while ctx.q ** ((ctx.r - 1) * d) < N:
        yield from enumerate_monic(ctx.field, d)
        d += 1


# =============================================================================
# Eisenstein series and g_k
# =============================================================================


def eisenstein_expansion(m: int, ctx: ExpansionContext) -> FracLaurentSeries:
    """E_{q^m - 1}(Lambda_r) = E_{q^m - 1}(Lambda_{r-1}) - sum_{a monic} G(q(a z_r)).

    G(X) = X P_{q^m - 2}(X) only has monomials X^(l (q-1)), so each class
    contributes a polynomial in R = q(a z_r)^(q-1); the eps-sum over F_q^x
    supplies the sign.
    """
    if m < 1:
        raise ShapeError("Eisenstein index q^m - 1 needs m >= 1", m=m)
    N = ctx.precision
    key = ("eisenstein", m, N)
    cached = ctx.cache.get(key)
    if cached is not None:
        return cached
    q = ctx.q
    ring = ctx.ring
    k = q**m - 1
    goss = a_poly(k - 1, ctx)
    top = k // (q - 1)
    coeffs = [goss.coefficient(l * (q - 1) - 1) for l in range(1, top + 1)]

    total = FracLaurentSeries(ring, {0: ctx.eisenstein_constant(m)}, N)
    for a in monic_classes(ctx):
        if (q - 1) * parameter_order(a, ctx) >= N:
            continue
        R = series_pow(series_change_ring(q_scaled(a, ctx), ring), q - 1)
        R = series_truncate(R, N)
        h = FracLaurentSeries(ring, {0: coeffs[-1]})
        for c in reversed(coeffs[:-1]):
            h = series_truncate(series_mul(h, R), N) + c
        total = total - series_truncate(series_mul(h, R), N)
    ctx.cache[key] = total
    logger.debug("Eisenstein expansion", extra={"m": m, "precision": N, "q": q})
    return total


def _constant_series(ring: Any) -> Any:
    def constant(c: Any) -> FracLaurentSeries:
        return FracLaurentSeries(ring, {0: ring.coerce(c)})

    return constant


def g_expansion(k: int, ctx: ExpansionContext) -> FracLaurentSeries:
    """g_k(Lambda_r) = H_k(E_{q-1}, ..., E_{q^k - 1}); g_r is Delta."""
    if not 1 <= k <= ctx.r:
        raise ShapeError("g_k needs 1 <= k <= r", k=k, rank=ctx.r)
    N = ctx.precision
    key = ("g", k, N)
    cached = ctx.cache.get(key)
    if cached is not None:
        return cached
    ring = ctx.ring
    bridge = get_bridge(ctx.field, ctx.r)
    values = [eisenstein_expansion(m, ctx) for m in range(1, k + 1)]
    values += [FracLaurentSeries.zero(ring, N)] * (bridge.k_max - k)
    result = bridge.H[k - 1].evaluate(values, _constant_series(ring), FracLaurentSeries.zero(ring))
    result = series_truncate(result, N)
    ctx.cache[key] = result
    return result


def g_integral_expansion(ctx: ExpansionContext) -> FracLaurentSeries:
    """g(Lambda_2) = 1 - [1] sum_{a monic} q(a z)^(q-1), with coefficients in A."""
    if ctx.r != 2 or ctx.is_symbolic:
        raise ShapeError("the integral g route is for rank 2 over the Carlitz module", rank=ctx.r)
    N = ctx.precision
    A = ctx.lattice_ring
    q = ctx.q
    total = FracLaurentSeries.zero(A, N)
    for a in monic_classes(ctx):
        if (q - 1) * parameter_order(a, ctx) >= N:
            continue
        total = total + series_truncate(series_pow(q_scaled(a, ctx), q - 1), N)
    return FracLaurentSeries.one(A, N) - total * bracket(ctx.field, 1)


# =============================================================================
# Delta
# =============================================================================


def delta_expansion(ctx: ExpansionContext) -> FracLaurentSeries:
    """Delta(Lambda_r) from the product formula, over the lower-lattice ring.

    With f_b = t^M rho_b(1/t) (so q(b z_r) = t^M / f_b),

        Delta = -t^(q-1) * ( prod_a f_a^(q^r) / prod_{a, eps} f_{aT + eps} )^(q-1)

    over monic a, the F_q^x-multiples of a giving identical factors. The
    result has order q - 1 and leading coefficient -1.
    """
    N = ctx.precision
    key = ("delta", N)
    cached = ctx.cache.get(key)
    if cached is not None:
        return cached
    q, r = ctx.q, ctx.r
    ring = ctx.lattice_ring
    target = N - (q - 1)
    if target <= 0:
        return FracLaurentSeries.zero(ring, N)
    T = poly_ring(ctx.field).T
    num = FracLaurentSeries.one(ring, target)
    den = FracLaurentSeries.one(ring, target)
    classes = 0
    for a in monic_classes(ctx, N + 1):
        f = inverse_parameter_factor(a, ctx)
        for _ in range(r):
            f = series_truncate(series_frobenius(f), target)
        num = series_truncate(series_mul(num, f), target)
        for eps in ctx.field.elements():
            g = inverse_parameter_factor(a * T + eps, ctx)
            den = series_truncate(series_mul(den, g), target)
        classes += 1
    X = series_mul(num, series_inverse(den, target))
    result = -series_shift(series_pow(X, q - 1), q - 1)
    ctx.cache[key] = result
    logger.debug("Delta product formula", extra={"precision": N, "classes": classes})
    return result


@dataclass(frozen=True)
class DeltaRoutes:
    """Delta from the product formula and from g_r via the Eisenstein series."""

    product: FracLaurentSeries
    eisenstein: FracLaurentSeries
    first_difference: int | None

    @property
    def agree(self) -> bool:
        return self.first_difference is None


def delta_dual_route(ctx: ExpansionContext) -> DeltaRoutes:
    product = series_change_ring(delta_expansion(ctx), ctx.ring)
    eisenstein = g_expansion(ctx.r, ctx)
    diff = product.first_difference(eisenstein)
    logger.info(
        "Compared Delta routes",
        extra={"q": ctx.q, "r": ctx.r, "precision": ctx.precision, "first_difference": diff},
    )
    return DeltaRoutes(product, eisenstein, diff)


# =============================================================================
# Weighted coordinates and invariants
# =============================================================================


def u_integral_part(k: int, ctx: ExpansionContext) -> tuple[Fraction, FracLaurentSeries]:
    """(e, W) with e = (q^k - 1)/(q^r - 1) and W = g_k U^(-e) on the integer grid.

    Writing Delta = -t^(q-1) U with U = 1 + O(t), u_k = (-1)^e t^(-(q-1) e) W.
    """
    if not 1 <= k <= ctx.r - 1:
        raise ShapeError("u_k needs 1 <= k <= r - 1", k=k, rank=ctx.r)
    q = ctx.q
    e = Fraction(q**k - 1, ctx.grid_denom)
    delta = series_change_ring(delta_expansion(ctx), ctx.ring)
    unit = -series_shift(delta, -(q - 1))
    return e, series_mul(g_expansion(k, ctx), series_binomial_power(unit, -e))


def u_expansion(k: int, ctx: ExpansionContext) -> RootScaledSeries:
    """u_k = g_k / Delta^e with e = (q^k - 1)/(q^r - 1), on the grid 1/(q^r - 1).

    The root is fixed as u_k = (-1)^e g_k U^(-e) t^(-(q-1) e), so the leading
    term is (-1)^e g_k(Lambda_{r-1}) t^(-(q-1) e).
    """
    e, W = u_integral_part(k, ctx)
    q = ctx.q
    series = series_shift(series_regrid(W, ctx.grid_denom), -(q - 1) * (q**k - 1))
    return RootScaledSeries(e, series)


def j_expansion(ctx: ExpansionContext) -> FracLaurentSeries:
    """j = g^(q+1) / Delta for rank 2, with coefficients in A; order -(q-1), lead -1."""
    if ctx.r != 2 or ctx.is_symbolic:
        raise ShapeError("j expansion is for rank 2 over the Carlitz module", rank=ctx.r)
    N = ctx.precision
    q = ctx.q
    inner = ctx.with_precision(N + 2 * (q - 1))
    g = g_integral_expansion(inner)
    delta = delta_expansion(inner)
    j = series_mul(series_pow(g, q + 1), series_inverse(delta))
    return series_truncate(j, N)


def invariant_expansion(f: WeightedPoly, ctx: ExpansionContext) -> FracLaurentSeries:
    """sum c_alpha prod g_k^alpha_k Delta^(-w(alpha)) for an invariant f."""
    if (f.q, f.r) != (ctx.q, ctx.r):
        raise ShapeError("invariant and context disagree on q or r", q=f.q, r=f.r)
    if len(f.poly.ring.names) != ctx.r - 1 or not is_invariant(f):
        raise ShapeError("only invariant polynomials in u_1..u_{r-1} have expansions")
    N = ctx.precision
    q = ctx.q
    ring = ctx.ring
    weights = {alpha: f.weight(alpha) for alpha in f.poly.terms}
    top = int(max(weights.values(), default=Fraction(0)))
    inner = ctx.with_precision(N + (top + 1) * (q - 1))
    delta = series_change_ring(delta_expansion(inner), ring)
    inv_delta = series_inverse(delta)
    gs = [g_expansion(k, inner) for k in range(1, ctx.r)]
    total = FracLaurentSeries.zero(ring, N)
    for alpha, c in f.poly.terms.items():
        term = series_pow(inv_delta, int(weights[alpha]))
        for g, a in zip(gs, alpha, strict=True):
            if a:
                term = series_mul(term, series_pow(g, a))
        total = total + series_truncate(term, N) * ring.coerce(c)
    return total
