"""Job execution: one function per CLI subcommand, all returning typed payloads."""

from __future__ import annotations

import time
from collections.abc import Callable
from fractions import Fraction

from src.drinfeld_modpoly.algebra.field import FiniteField, field_for_q
from src.drinfeld_modpoly.algebra.grammar import parse_matrix, parse_monic, parse_polya
from src.drinfeld_modpoly.algebra.polya import (
    PolyA,
    enumerate_below,
    enumerate_monic,
    poly_gcd,
    poly_ring,
)
from src.drinfeld_modpoly.config import settings
from src.drinfeld_modpoly.errors import ModpolyError, ShapeError
from src.drinfeld_modpoly.expansion.bridge import BridgePolynomials, get_bridge
from src.drinfeld_modpoly.expansion.context import ExpansionContext
from src.drinfeld_modpoly.expansion.cusp import (
    delta_dual_route,
    delta_expansion,
    eisenstein_expansion,
    g_expansion,
    j_expansion,
    q_scaled,
    u_expansion,
)
from src.drinfeld_modpoly.expansion.sublattice import (
    formal_sublattice_u_expansion,
    sublattice_order_fraction,
    sublattice_u_expansion,
)
from src.drinfeld_modpoly.invariants.noncancel import noncancellation_check
from src.drinfeld_modpoly.lattices.counting import (
    SublatticeShape,
    count_cyclic_sublattices,
    displayed_count,
    enumerate_cyclic_sublattices,
    tower_parents,
)
from src.drinfeld_modpoly.lattices.smith import smith_normal_form
from src.drinfeld_modpoly.modpoly.bounds import leading_order_check, verify_theorem_bounds
from src.drinfeld_modpoly.modpoly.engine import compute_modular_polynomial, conjugate_data
from src.drinfeld_modpoly.modpoly.torsion import torsion_algebra
from src.drinfeld_modpoly.types.job import Command, ExpandTarget, JobConfig
from src.drinfeld_modpoly.types.payloads import (
    BridgePayload,
    CountPayload,
    ExpansionPayload,
    ModpolyPayload,
    Payload,
    SeriesPayload,
    SnfPayload,
    VerifyPayload,
)
from src.drinfeld_modpoly.types.reports import CheckResult, CheckStatus, VerificationReport
from src.drinfeld_modpoly.utils.cache import BridgeCache
from src.drinfeld_modpoly.utils.logging import log_with_context, setup_logger

logger = setup_logger(__name__)

# Levels up to this degree take part in the verify suite's exhaustive checks
VERIFY_MAX_DEGREE = 2
# Fields this small get one more degree of counting and one more bridge index
SMALL_FIELD_MAX_Q = 3


# =============================================================================
# Sync Execution
# =============================================================================


def run_job(config: JobConfig) -> Payload:
    """Execute one validated job.

    Args:
        config: The job, as built by the CLI.

    Returns:
        The payload of the subcommand. Errors from the library propagate as
        ``ModpolyError`` subclasses for the caller to map to exit codes.
    """
    start_time = time.perf_counter()
    handler = _HANDLERS[config.command]
    payload = handler(config)
    logger.info(
        "Job finished",
        extra={
            "command": str(config.command),
            "q": config.q,
            "seconds": round(time.perf_counter() - start_time, 3),
        },
    )
    return payload


def _field(config: JobConfig) -> FiniteField:
    return field_for_q(config.q)


def _level(config: JobConfig) -> PolyA:
    return parse_monic(config.n, _field(config))


# =============================================================================
# Lattices
# =============================================================================


def _run_count(config: JobConfig) -> CountPayload:
    n = _level(config)
    return CountPayload(
        q=config.q,
        r=config.r,
        n=str(n),
        count=count_cyclic_sublattices(n, config.r),
        displayed_count=str(displayed_count(n, config.r)),
    )


def _run_enumerate(config: JobConfig) -> CountPayload:
    n = _level(config)
    matrices = enumerate_cyclic_sublattices(n, config.r)
    return CountPayload(
        q=config.q,
        r=config.r,
        n=str(n),
        count=len(matrices),
        displayed_count=str(displayed_count(n, config.r)),
        matrices=[[[str(x) for x in row] for row in M] for M in matrices],
    )


def _run_snf(config: JobConfig) -> SnfPayload:
    assert config.matrix is not None
    M = parse_matrix(config.matrix, poly_ring(_field(config)))
    return SnfPayload(
        q=config.q,
        matrix=[[str(x) for x in row] for row in M],
        invariant_factors=[str(d) for d in smith_normal_form(M)],
    )


# =============================================================================
# Bridge and expansions
# =============================================================================


def _run_bridge(config: JobConfig) -> BridgePayload:
    if config.cache_dir is not None:
        bridge = BridgePolynomials.from_cache_or_compute(
            config.q, config.k_max, BridgeCache(config.cache_dir)
        )
    else:
        bridge = get_bridge(_field(config), config.k_max)
    data = bridge.to_payload()
    return BridgePayload(
        q=config.q,
        k_max=config.k_max,
        F=data["F"],
        G=data["G"],
        H=data["H"],
        identity_holds=bridge.identity_holds(),
    )


def expansion_precision(config: JobConfig) -> int:
    """Grid precision of ``expand``: the flag, or q^r plus the guard."""
    if config.precision is not None:
        return config.precision
    return config.q**config.r + settings.precision_guard


def _context(config: JobConfig, precision: int) -> ExpansionContext:
    if config.r == 2:
        return ExpansionContext.concrete(config.q, precision)
    return ExpansionContext.symbolic(config.q, config.r, precision)


def _sublattice_shape(config: JobConfig, n: PolyA) -> SublatticeShape:
    matrices = enumerate_cyclic_sublattices(n, config.r)
    index = config.shape or 0
    if index >= len(matrices):
        raise ShapeError("shape index out of range", shape=index, count=len(matrices))
    return SublatticeShape.from_matrix(matrices[index])


def _run_expand(config: JobConfig) -> ExpansionPayload:
    N = expansion_precision(config)
    what = config.what
    k = config.k
    variable = "t"

    if what == ExpandTarget.SUBLATTICE:
        n = _level(config)
        shape = _sublattice_shape(config, n)
        variable = "s"
        label = f"u_{k} of {shape.label()}"
        if config.r == 2:
            tors = torsion_algebra(n, config.primitive) if n.degree >= 1 else None
            u = sublattice_u_expansion(k, shape, ExpansionContext.concrete(config.q, N), tors)
        else:
            u = formal_sublattice_u_expansion(k, shape, config.q).u
        series = SeriesPayload.from_series(u.series, variable, u.exponent)
    elif what == ExpandTarget.U:
        u = u_expansion(k, _context(config, N))
        label = f"u_{k}"
        series = SeriesPayload.from_series(u.series, variable, u.exponent)
    else:
        ctx = _context(config, N)
        if what == ExpandTarget.G:
            label, value = f"g_{k}", g_expansion(k, ctx)
        elif what == ExpandTarget.DELTA:
            label, value = "Delta", delta_expansion(ctx)
        elif what == ExpandTarget.J:
            label, value = "j", j_expansion(ctx)
        elif what == ExpandTarget.EISENSTEIN:
            label, value = f"E_(q^{k}-1)", eisenstein_expansion(k, ctx)
        else:
            a = parse_polya(config.a, ctx.field)
            label, value = f"q(({a}) z)", q_scaled(a, ctx)
        series = SeriesPayload.from_series(value, variable)

    return ExpansionPayload(
        q=config.q, r=config.r, what=str(what), variable=variable, label=label, series=series
    )


# =============================================================================
# Modular polynomial
# =============================================================================


def _run_modpoly(config: JobConfig) -> ModpolyPayload:
    if config.r != 2:
        raise ShapeError("modular polynomials are computed for rank 2", rank=config.r)
    n = _level(config)
    P = compute_modular_polynomial(n, config.precision, config.primitive)
    report = verify_theorem_bounds(P)
    return ModpolyPayload(
        q=config.q,
        n=str(n),
        r=P.r,
        degree=P.degree,
        precision=P.precision,
        coefficients=P.coefficient_strings(),
        monic=P.is_monic,
        integral=P.is_integral(),
        symmetry=P.symmetry_report(),
        bound_report=report,
        rendered=P.render(),
    )


# =============================================================================
# Property suites
# =============================================================================


def _check(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    """Run one check, recording library errors as failures."""
    try:
        ok, detail = fn()
    except ModpolyError as e:
        log_with_context(logger, "warning", "Check raised", check=name, error=str(e.kind))
        return CheckResult(name=name, status=CheckStatus.FAILED, detail=f"{e.kind}: {e.message}")
    status = CheckStatus.PASSED if ok else CheckStatus.FAILED
    if not ok:
        log_with_context(logger, "warning", "Check failed", check=name, detail=detail)
    return CheckResult(name=name, status=status, detail=detail)


def counting_checks(field: FiniteField, r: int) -> list[CheckResult]:
    """#J(n) from the product formula against exhaustive enumeration."""
    results = []
    max_degree = VERIFY_MAX_DEGREE + 1 if field.q <= SMALL_FIELD_MAX_Q else VERIFY_MAX_DEGREE
    for degree in range(1, max_degree + 1):
        for n in enumerate_monic(field, degree):

            def compare(n: PolyA = n) -> tuple[bool, str]:
                count = count_cyclic_sublattices(n, r)
                found = len(enumerate_cyclic_sublattices(n, r))
                return count == found, f"formula {count}, enumerated {found}"

            results.append(_check(f"count n={n} r={r}", compare))
    return results


def bridge_index(q: int) -> int:
    """Largest k whose bridge polynomials the verify suite evaluates."""
    return 4 if q <= SMALL_FIELD_MAX_Q else 3


def bridge_checks(field: FiniteField, k_max: int, seed: int = 0) -> list[CheckResult]:
    """F_k, G_k and H_k evaluated on the Carlitz module and random modules of rank 2 and 3."""

    def identity() -> tuple[bool, str]:
        failures = get_bridge(field, k_max).identity_failures(seed)
        return not failures, f"k <= {k_max}, mismatches: {', '.join(failures) or 'none'}"

    return [_check("bridge F_k(e) = H_k(E) = g_k", identity)]


def delta_checks(q: int, guard: int) -> list[CheckResult]:
    """Product-formula Delta against g_2 from the Eisenstein route, rank 2."""
    N = 3 * (q - 1) + q + guard

    def dual_route() -> tuple[bool, str]:
        ctx = ExpansionContext.concrete(q, N)
        routes = delta_dual_route(ctx)
        order, lead = routes.product.leading()
        ok = routes.agree and order == q - 1 and lead == ctx.ring.from_int(-1)
        return ok, f"first difference {routes.first_difference}, lead t^{order}"

    return [_check(f"delta dual route q={q}", dual_route)]


def u_order_checks(q: int, r: int) -> list[CheckResult]:
    """ord u_k = -(q-1)(q^k-1)/(q^r-1) for every k."""
    results = []
    for rank in sorted({2, r}):
        for k in range(1, rank):

            def order(rank: int = rank, k: int = k) -> tuple[bool, str]:
                if rank == 2:
                    ctx = ExpansionContext.concrete(q, (q - 1) + 2)
                else:
                    ctx = ExpansionContext.symbolic(q, rank, (q - 1) + 2)
                u = u_expansion(k, ctx)
                found = Fraction(u.order, ctx.grid_denom)
                expected = Fraction(-(q - 1) * (q**k - 1), q**rank - 1)
                return found == expected, f"ord u_{k} = {found}, expected {expected}"

            results.append(_check(f"u order r={rank} k={k}", order))
    return results


def sublattice_order_checks(n: PolyA, guard: int) -> list[CheckResult]:
    """Orders of the rank-2 sublattice u_1 for every shape of level n."""
    q = n.field.q
    if n.degree > VERIFY_MAX_DEGREE:
        return [
            CheckResult(
                name=f"sublattice orders n={n}",
                status=CheckStatus.REPORTED,
                detail=f"skipped above degree {VERIFY_MAX_DEGREE}",
            )
        ]
    ctx = ExpansionContext.concrete(q, (q - 1) + guard)
    tors = torsion_algebra(n) if n.degree >= 1 else None
    results = []
    for M in enumerate_cyclic_sublattices(n, 2):
        shape = SublatticeShape.from_matrix(M)

        def order(shape: SublatticeShape = shape) -> tuple[bool, str]:
            u = sublattice_u_expansion(1, shape, ctx, tors)
            found = Fraction(u.order, ctx.grid_denom)
            expected = sublattice_order_fraction(1, shape, q)
            return found == expected, f"order {found}, expected {expected}"

        results.append(_check(f"sublattice order {shape.label()}", order))
    return results


def tower_checks(q: int, r: int) -> list[CheckResult]:
    """Every cyclic level-T^2 sublattice sits in exactly one cyclic level-T one."""

    def unique_parent() -> tuple[bool, str]:
        parents = tower_parents(2, r, q)
        counts = sorted({len(p) for p in parents.values()})
        return counts == [1], f"{len(parents)} sublattices, parent counts {counts}"

    return [_check(f"tower T^2 -> T r={r}", unique_parent)]


def galois_checks(n: PolyA, precision: int | None) -> list[CheckResult]:
    """x -> rho_b(x) permutes the conjugates of level n."""
    if not 1 <= n.degree <= VERIFY_MAX_DEGREE:
        return []
    one = PolyA.constant(n.field, 1)
    candidates = [
        b
        for b in enumerate_below(n.field, int(n.degree))
        if b and b != one and poly_gcd(b, n) == one
    ]
    if not candidates:
        return [
            CheckResult(
                name=f"galois n={n}",
                status=CheckStatus.REPORTED,
                detail="no nontrivial automorphism of the torsion algebra",
            )
        ]
    b = candidates[0]

    def stable() -> tuple[bool, str]:
        data = conjugate_data(n, precision)
        return data.galois_stable(b), f"b = {b}, {len(data.conjugates)} conjugates"

    return [_check(f"galois n={n} b={b}", stable)]


def _run_verify(config: JobConfig) -> VerifyPayload:
    field = _field(config)
    n = _level(config)
    q, r = config.q, config.r
    guard = settings.precision_guard
    checks: list[CheckResult] = []
    checks += counting_checks(field, r)
    checks += bridge_checks(field, bridge_index(q), config.seed)
    checks += delta_checks(q, guard)
    checks += u_order_checks(q, r)
    checks += sublattice_order_checks(n, guard)
    checks += tower_checks(q, r)
    checks += galois_checks(n, config.precision)
    if r >= 2:
        checks += leading_order_check(n, r, q)

    nc = noncancellation_check(q, max(r, 2), seed=config.seed)
    checks.append(
        CheckResult(
            name=f"non-cancellation r={max(r, 2)}",
            status=CheckStatus.PASSED if nc.ok else CheckStatus.FAILED,
            detail=f"{nc.passed}/{nc.samples} with the predicted order",
        )
    )
    report = VerificationReport(q=q, seed=config.seed, checks=checks)
    logger.info(
        "Verification finished",
        extra={"checks": len(checks), "passed": report.passed},
    )
    return VerifyPayload(report=report, non_cancellation=nc, passed=report.passed)


_HANDLERS: dict[Command, Callable[[JobConfig], Payload]] = {
    Command.COUNT: _run_count,
    Command.ENUMERATE: _run_enumerate,
    Command.SNF: _run_snf,
    Command.BRIDGE: _run_bridge,
    Command.EXPAND: _run_expand,
    Command.MODPOLY: _run_modpoly,
    Command.VERIFY: _run_verify,
}
