"""Rank-2 modular polynomials P_{j,n}(X) = prod_J (X - j(Lambda~)) by expansion matching.

Every conjugate j(Lambda~) is expanded in s = q(z/n) over the torsion
algebra of level n. The elementary symmetric functions of the conjugates are
invariant, so after descending to K each is a polynomial in

    J(s) = j(z) = j_t(1 / rho_n(1/s)),

recovered by greedy leading-term elimination against powers of J.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from src.drinfeld_modpoly.algebra.fraction import RationalFunc, fraction_field
from src.drinfeld_modpoly.algebra.polya import PolyA
from src.drinfeld_modpoly.algebra.quotient import (
    QuotientAlgebra,
    UPoly,
    UPolyRing,
    format_univariate,
)
from src.drinfeld_modpoly.algebra.rings import CommutativeRing
from src.drinfeld_modpoly.algebra.series import (
    FracLaurentSeries,
    compose_reciprocal,
    series_change_ring,
    series_map,
    series_mul,
)
from src.drinfeld_modpoly.config import settings
from src.drinfeld_modpoly.errors import (
    BoundViolationError,
    DescentError,
    NonIntegralReductionError,
    PrecisionError,
    ShapeError,
    ZeroDivisorError,
)
from src.drinfeld_modpoly.expansion.context import ExpansionContext
from src.drinfeld_modpoly.expansion.cusp import j_expansion
from src.drinfeld_modpoly.expansion.sublattice import level_parameter, rank2_parameter
from src.drinfeld_modpoly.lattices.counting import (
    SublatticeShape,
    count_cyclic_sublattices,
    shapes_rank2,
)
from src.drinfeld_modpoly.modpoly.torsion import (
    TorsionAlgebra,
    galois_permutes_conjugates,
    torsion_algebra,
)
from src.drinfeld_modpoly.types.reports import CheckResult, CheckStatus
from src.drinfeld_modpoly.utils.logging import setup_logger

logger = setup_logger(__name__)


def _check_level(n: PolyA) -> None:
    if not n or not n.is_monic():
        raise ShapeError("level n must be monic and nonzero", n=str(n))


def default_precision(q: int, n: PolyA) -> int:
    """(q-1) |n| (|n| #J(n) + 2) plus the configured guard terms."""
    _check_level(n)
    size = count_cyclic_sublattices(n, 2)
    return (q - 1) * n.norm() * (n.norm() * size + 2) + settings.precision_guard


# =============================================================================
# Expansions in s
# =============================================================================


def j_expansion_in_s(
    n: PolyA, precision: int, j_t: FracLaurentSeries | None = None
) -> FracLaurentSeries:
    """j(z) in s = q(z/n), over A: j_t composed with t = 1/rho_n(1/s).

    Order -(q-1)|n|; known below s^(|n| precision).
    """
    _check_level(n)
    if j_t is None:
        j_t = j_expansion(ExpansionContext.concrete(n.field.q, precision))
    return compose_reciprocal(j_t, level_parameter(n, j_t.ring))


def conjugate_expansion(
    shape: SublatticeShape,
    j_t: FracLaurentSeries,
    tors: TorsionAlgebra | None,
    precision: int | None = None,
) -> FracLaurentSeries:
    """j of the sublattice of ``shape`` in s; order -(q-1)|n_1|^2."""
    return compose_reciprocal(j_t, rank2_parameter(shape, tors), precision)


@dataclass
class ConjugateData:
    """All conjugates of one level at one working precision."""

    q: int
    n: PolyA
    precision: int
    tors: TorsionAlgebra | None
    shapes: list[SublatticeShape]
    conjugates: list[FracLaurentSeries]
    j_t: FracLaurentSeries
    j_s: FracLaurentSeries

    @property
    def ring(self) -> CommutativeRing:
        return self.tors.alg if self.tors is not None else fraction_field(self.n.field)

    def galois_stable(self, b: PolyA) -> bool:
        if self.tors is None:
            return True
        return galois_permutes_conjugates(self.tors, self.conjugates, b)


def conjugate_data(
    n: PolyA, precision: int | None = None, primitive: bool = False
) -> ConjugateData:
    """Expand j of every cyclic sublattice of level n in s."""
    _check_level(n)
    q = n.field.q
    N = default_precision(q, n) if precision is None else precision
    logger.info("Expanding conjugates", extra={"q": q, "n": str(n), "precision": N})
    j_t = j_expansion(ExpansionContext.concrete(q, N))
    tors = torsion_algebra(n, primitive=primitive) if n.degree >= 1 else None
    shapes = shapes_rank2(n)
    conjugates = [conjugate_expansion(shape, j_t, tors, N) for shape in shapes]
    j_s = j_expansion_in_s(n, N, j_t)
    logger.info(
        "Conjugates built",
        extra={"shapes": len(shapes), "orders": [c.order for c in conjugates]},
    )
    return ConjugateData(q, n, N, tors, shapes, conjugates, j_t, j_s)


# =============================================================================
# Symmetric functions and reduction
# =============================================================================


def elementary_symmetric(conjugates: Sequence[FracLaurentSeries]) -> list[FracLaurentSeries]:
    """[e_0, e_1, ..., e_h] of the conjugate series."""
    if not conjugates:
        raise ShapeError("no conjugates to combine")
    ring = conjugates[0].ring
    E = [FracLaurentSeries.one(ring)]
    for c in conjugates:
        E.append(FracLaurentSeries.zero(ring))
        for d in range(len(E) - 1, 0, -1):
            E[d] = E[d] + series_mul(E[d - 1], c)
    return E


def descend(series: FracLaurentSeries, K: CommutativeRing) -> FracLaurentSeries:
    """Map a series over a torsion algebra to K; every x-coordinate must vanish."""
    ring = series.ring
    if not isinstance(ring, QuotientAlgebra):
        return series_change_ring(series, K)

    def base(c: Any) -> Any:
        value = ring.base_part(c)
        if value is None:
            raise DescentError(
                "symmetric function does not descend to K", coefficient=ring.format(c)
            )
        return K.coerce(value)

    return series_map(series, base, K)


def reduce_in_j(
    e: FracLaurentSeries, J: FracLaurentSeries, step: int, bound: int
) -> dict[int, Any]:
    """Coefficients c_m with e = sum c_m J^m, by leading-term elimination.

    Raises:
        NonIntegralReductionError: An order is not a multiple of ``step``.
        BoundViolationError: A power of J above ``bound`` is needed.
        PrecisionError: The constant term is not known or a positive-order tail remains.
    """
    K = e.ring
    powers: dict[int, FracLaurentSeries] = {0: FracLaurentSeries.one(K)}
    coeffs: dict[int, Any] = {}
    rem = e
    while True:
        if rem.prec <= 0:
            raise PrecisionError("precision exhausted during reduction", prec=rem.prec)
        o = rem.order
        if o >= 0:
            break
        if o % step:
            raise NonIntegralReductionError(
                "order is not a multiple of ord J", order=o, step=step
            )
        m = -int(o) // step
        if m > bound:
            raise BoundViolationError("reduction needs a power of J above the bound", m=m, bound=bound)
        if m not in powers:
            powers[m] = J**m
        _, lead = rem.leading()
        _, jlead = powers[m].leading()
        c = lead * K.inv(jlead)
        coeffs[m] = c
        rem = rem - powers[m] * c
        logger.debug("Reduction step", extra={"m": m, "order": o, "prec": rem.prec})
    constant = rem.terms.get(0)
    if constant:
        coeffs[0] = constant
    tail = [n for n in rem.terms if n > 0]
    if tail:
        raise PrecisionError(
            "nonvanishing tail after reduction", first=min(tail), prec=rem.prec
        )
    return coeffs


@dataclass
class ModularPolynomial:
    """P(X) = sum_i a_i(j) X^i with a_h = 1.

    Attributes:
        q: Size of the constant field.
        n: The level.
        coefficients: a_0, ..., a_h as polynomials in j over K.
        precision: Working precision in t.
    """

    q: int
    n: PolyA
    coefficients: list[UPoly]
    precision: int
    r: int = 2

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        top = self.coefficients[-1]
        return top.degree == 0 and top.coefficient(0) == top.ring.base.one()

    def is_integral(self) -> bool:
        return all(
            not isinstance(c, RationalFunc) or c.is_polynomial()
            for a in self.coefficients
            for c in a.coeffs
        )

    def j_degree(self, i: int) -> int | None:
        a = self.coefficients[i]
        return int(a.degree) if a else None

    def evaluate(self, X: FracLaurentSeries, J: FracLaurentSeries) -> FracLaurentSeries:
        """P(X) with j := J, computed over the ring of X."""
        ring = X.ring
        J = series_change_ring(J, ring)
        total = FracLaurentSeries.zero(ring)
        for a in reversed(self.coefficients):
            value = FracLaurentSeries.zero(ring)
            for c in reversed(a.coeffs):
                value = series_mul(value, J) + ring.coerce(c)
            total = series_mul(total, X) + value
        return total

    def coefficient_matrix(self) -> dict[tuple[int, int], Any]:
        """{(i, m): coefficient of X^i j^m}."""
        return {
            (i, m): c
            for i, a in enumerate(self.coefficients)
            for m, c in enumerate(a.coeffs)
            if c
        }

    def symmetry_report(self) -> CheckResult:
        """Whether P(X, Y) = P(Y, X) with Y = j; reported, not asserted."""
        matrix = self.coefficient_matrix()
        asymmetric = sorted(
            key for key, c in matrix.items() if matrix.get((key[1], key[0])) != c
        )
        if not asymmetric:
            return CheckResult(name="symmetry", status=CheckStatus.PASSED, detail="P(X,Y) = P(Y,X)")
        return CheckResult(
            name="symmetry",
            status=CheckStatus.REPORTED,
            detail=f"asymmetric monomials X^i j^m at {asymmetric[:5]}",
        )

    def coefficient_strings(self) -> dict[str, str]:
        base = self.coefficients[0].ring.base
        return {
            str(i): format_univariate(base, a.coeffs, "j") for i, a in enumerate(self.coefficients)
        }

    def render(self) -> str:
        """Plain text of P(X) with coefficients in j, highest power first."""
        base = self.coefficients[0].ring.base
        parts = []
        for i in range(self.degree, -1, -1):
            a = self.coefficients[i]
            if not a:
                continue
            text = format_univariate(base, a.coeffs, "j")
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                parts.append(f"({text})" if len(a.coeffs) > 1 else text)
            elif text == "1":
                parts.append(mono)
            else:
                parts.append(f"({text})*{mono}")
        return " + ".join(parts)


def symmetric_reduce(
    conjugates: Sequence[FracLaurentSeries],
    J: FracLaurentSeries,
    n: PolyA,
    precision: int,
    degree_bound: int | None = None,
) -> ModularPolynomial:
    """The monic polynomial with roots ``conjugates``, written in j.

    a_{h-d} = (-1)^d e_d, each e_d reduced against powers of J with
    deg_j a_{h-d} <= |n| d (or ``degree_bound`` when given).
    """
    q = n.field.q
    K = fraction_field(n.field)
    J = series_change_ring(J, K)
    step = (q - 1) * n.norm()
    E = elementary_symmetric(conjugates)
    h = len(conjugates)
    jring = UPolyRing(K, "j")
    coefficients: list[UPoly] = [jring.zero()] * (h + 1)
    coefficients[h] = jring.one()
    for d in range(1, h + 1):
        e = descend(E[d], K)
        bound = n.norm() * d if degree_bound is None else degree_bound
        found = reduce_in_j(e, J, step, bound)
        dense = [K.zero()] * (max(found, default=0) + 1)
        for m, c in found.items():
            dense[m] = -c if d % 2 else c
        coefficients[h - d] = UPoly(jring, dense)
    return ModularPolynomial(q=q, n=n, coefficients=coefficients, precision=precision)


def self_evaluation_checks(P: ModularPolynomial, data: ConjugateData) -> list[CheckResult]:
    """P(conjugate, J) vanishes to its precision for every conjugate."""
    results = []
    for shape, conj in zip(data.shapes, data.conjugates, strict=True):
        value = P.evaluate(conj, data.j_s)
        ok = not value.terms and value.prec > 0
        results.append(
            CheckResult(
                name=f"self_evaluation {shape.label()}",
                status=CheckStatus.PASSED if ok else CheckStatus.FAILED,
                detail=f"zero below s^{value.prec}" if ok else f"first term at s^{value.order}",
            )
        )
    return results


def compute_modular_polynomial(
    n: PolyA, precision: int | None = None, primitive: bool = False
) -> ModularPolynomial:
    """P_{j,n}(X) for rank 2, with self-evaluation on every conjugate.

    Integrality (a_i in A[j]) is asserted for levels of degree at most 1.
    For a reducible level psi_n splits and its torsion algebra has zero
    divisors, so such levels need ``primitive=True``.
    """
    _check_level(n)
    if not primitive and n.degree > 1 and not n.is_irreducible():
        raise ZeroDivisorError(
            "torsion algebra of a reducible level is not a field; use the primitive factor",
            n=str(n),
        )
    data = conjugate_data(n, precision, primitive)
    expected = count_cyclic_sublattices(n, 2)
    if len(data.conjugates) != expected:
        raise ShapeError("conjugate count differs from #J(n)", found=len(data.conjugates), expected=expected)
    P = symmetric_reduce(data.conjugates, data.j_s, n, data.precision)
    failed = [c.name for c in self_evaluation_checks(P, data) if c.status == CheckStatus.FAILED]
    if failed:
        raise PrecisionError("modular polynomial does not vanish at a conjugate", checks=failed)
    if n.degree <= 1 and not P.is_integral():
        raise DescentError("coefficients do not lie in A[j]", n=str(n))
    logger.info(
        "Modular polynomial computed",
        extra={"q": data.q, "n": str(n), "degree": P.degree, "integral": P.is_integral()},
    )
    return P
