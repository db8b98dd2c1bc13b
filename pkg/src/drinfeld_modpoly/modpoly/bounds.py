"""Weighted-degree bounds for modular polynomial coefficients and conjugate orders."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from src.drinfeld_modpoly.algebra.field import field_for_q
from src.drinfeld_modpoly.algebra.polya import PolyA
from src.drinfeld_modpoly.errors import BoundViolationError, RingMismatchError
from src.drinfeld_modpoly.expansion.sublattice import (
    formal_expected_lead,
    formal_sublattice_u_expansion,
    sublattice_order,
)
from src.drinfeld_modpoly.lattices.counting import (
    SublatticeShape,
    count_cyclic_sublattices,
    displayed_count,
    enumerate_cyclic_sublattices,
)
from src.drinfeld_modpoly.modpoly.engine import ModularPolynomial
from src.drinfeld_modpoly.types.reports import BoundReport, BoundRow, CheckResult, CheckStatus
from src.drinfeld_modpoly.utils.logging import setup_logger

logger = setup_logger(__name__)


def _prime_factor_product(n: PolyA, r: int) -> Fraction:
    """prod_{p | n} |p|^r / (|p|^r - |p|^(r-1))."""
    return displayed_count(n, r) / n.norm() ** (r - 1)


def sharp_bound(n: PolyA, r: int, i: int, weight: Fraction) -> Fraction:
    return Fraction(n.norm() ** (r - 1) * (count_cyclic_sublattices(n, r) - i)) * weight


def theorem_bound(n: PolyA, r: int, i: int, weight: Fraction) -> Fraction:
    """(|n|^(2(r-1)) prod |p|^r/(|p|^r - |p|^(r-1)) - i) w(I)."""
    return (n.norm() ** (2 * (r - 1)) * _prime_factor_product(n, r) - i) * weight


def proof_bound(n: PolyA, r: int, i: int, weight: Fraction) -> Fraction:
    """|n|^(2(r-1)) (prod |p|^r/(|p|^r - |p|^(r-1)) - i) w(I)."""
    return n.norm() ** (2 * (r - 1)) * (_prime_factor_product(n, r) - i) * weight


def verify_theorem_bounds(
    P: ModularPolynomial, invariant_weight: Fraction | int = 1, strict: bool = False
) -> BoundReport:
    """Compare w(a_i) = deg_j(a_i) w(I) against the sharp and the two displayed bounds.

    With ``strict`` a violated sharp bound raises ``BoundViolationError``.
    """
    w = Fraction(invariant_weight)
    n, r = P.n, P.r
    rows: list[BoundRow] = []
    discrepancies: list[str] = []
    for i in range(P.degree + 1):
        deg = P.j_degree(i)
        weight = None if deg is None else deg * w
        bounds = {
            "sharp": sharp_bound(n, r, i, w),
            "theorem": theorem_bound(n, r, i, w),
            "proof": proof_bound(n, r, i, w),
        }
        ok = {name: weight is None or weight <= b for name, b in bounds.items()}
        rows.append(
            BoundRow(
                i=i,
                weight=None if weight is None else str(weight),
                sharp_bound=str(bounds["sharp"]),
                theorem_bound=str(bounds["theorem"]),
                proof_bound=str(bounds["proof"]),
                sharp_ok=ok["sharp"],
                theorem_ok=ok["theorem"],
                proof_ok=ok["proof"],
            )
        )
        for name in ("theorem", "proof"):
            if ok[name] != ok["sharp"]:
                discrepancies.append(
                    f"a_{i}: {name} bound {bounds[name]} gives {ok[name]}, "
                    f"sharp bound {bounds['sharp']} gives {ok['sharp']} (w = {weight})"
                )
    report = BoundReport(
        q=P.q,
        n=str(n),
        r=r,
        invariant_weight=str(w),
        degree=P.degree,
        rows=rows,
        all_sharp_ok=all(row.sharp_ok for row in rows),
        discrepancies=discrepancies,
    )
    if strict and not report.all_sharp_ok:
        failing = [row.i for row in rows if not row.sharp_ok]
        raise BoundViolationError("sharp weighted-degree bound violated", coefficients=failing)
    logger.info(
        "Checked coefficient bounds",
        extra={"n": str(n), "all_sharp_ok": report.all_sharp_ok, "discrepancies": len(discrepancies)},
    )
    return report


def jk_weight(k: int, r: int, q: int) -> Fraction:
    """w(j_k) = (q^k - 1)/(q^gcd(k, r) - 1)."""
    return Fraction(q**k - 1, q ** gcd(k, r) - 1)


def leading_order_check(n: PolyA, r: int, q: int) -> list[CheckResult]:
    """Orders and leads of the formal sublattice u_k against ord j_k >= -(q-1)|n|^(2(r-1)) w(j_k).

    One check per (n_1, n_2) type and k.
    """
    if n.field != field_for_q(q):
        raise RingMismatchError("level is not over F_q", q=q)
    seen: dict[tuple[PolyA, PolyA], SublatticeShape] = {}
    for M in enumerate_cyclic_sublattices(n, r):
        shape = SublatticeShape.from_matrix(M)
        seen.setdefault((shape.n1, shape.n2), shape)
    D = q**r - 1
    results: list[CheckResult] = []
    ordered = sorted(seen.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key()))
    for (n1, n2), shape in ordered:
        for k in range(1, r):
            expansion = formal_sublattice_u_expansion(k, shape, q)
            order = expansion.order
            expected = sublattice_order(k, shape, q)
            _, lead = expansion.u.series.leading()
            lead_ok = lead == formal_expected_lead(expansion, q)
            j_order = Fraction(order, D) * Fraction(D, q ** gcd(k, r) - 1)
            bound = -(q - 1) * n.norm() ** (2 * (r - 1)) * jk_weight(k, r, q)
            ok = order == expected and lead_ok and j_order >= bound
            results.append(
                CheckResult(
                    name=f"leading_order n1={n1} n2={n2} k={k}",
                    status=CheckStatus.PASSED if ok else CheckStatus.FAILED,
                    detail=(
                        f"ord u_k = {Fraction(order, D)} (expected {Fraction(expected, D)}), "
                        f"ord j_k = {j_order} >= {bound}, lead ok = {lead_ok}"
                    ),
                )
            )
    return results
