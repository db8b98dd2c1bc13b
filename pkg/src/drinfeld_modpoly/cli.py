#!/usr/bin/env python3
"""Command-line interface for drinfeld-modpoly.

Usage:
    # Number of cyclic sublattices of level T in rank 2 over F_2
    uv run python -m src.drinfeld_modpoly count --q 2 --r 2 --n T

    # Smith normal form over F_2[T]
    uv run python -m src.drinfeld_modpoly snf --q 2 --matrix "T,1;0,T"

    # Modular polynomial of level T, as JSON
    uv run python -m src.drinfeld_modpoly modpoly --q 2 --n T --format json
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import TextIO

from pydantic import ValidationError

from src.drinfeld_modpoly.config import settings
from src.drinfeld_modpoly.errors import ConfigError, ModpolyError
from src.drinfeld_modpoly.pipeline.runner import run_job
from src.drinfeld_modpoly.types.job import ExpandTarget, JobConfig, OutputFormat
from src.drinfeld_modpoly.types.payloads import (
    BridgePayload,
    CountPayload,
    ErrorPayload,
    ExpansionPayload,
    ModpolyPayload,
    Payload,
    SnfPayload,
    VerifyPayload,
)
from src.drinfeld_modpoly.types.reports import CheckStatus
from src.drinfeld_modpoly.utils.logging import set_package_log_level

# Exit code of a verify run with a failing check
VERIFICATION_FAILED = 4

# =============================================================================
# Output Formatting
# =============================================================================


class Colors:
    """ANSI color codes for terminal output."""

    HEADER = "\033[95m"
    BLUE = "\033[94m"
    CYAN = "\033[96m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    BOLD = "\033[1m"
    DIM = "\033[2m"
    RESET = "\033[0m"


_color_disabled = False


def supports_color() -> bool:
    """Check if terminal supports colors."""
    return (
        not _color_disabled
        and hasattr(sys.stdout, "isatty")
        and sys.stdout.isatty()
        and os.environ.get("TERM") != "dumb"
        and os.environ.get("NO_COLOR") is None
    )


def colorize(text: str, color: str) -> str:
    """Apply color if supported."""
    if supports_color():
        return f"{color}{text}{Colors.RESET}"
    return text


STATUS_COLORS = {
    CheckStatus.PASSED: Colors.GREEN,
    CheckStatus.FAILED: Colors.RED,
    CheckStatus.REPORTED: Colors.YELLOW,
}


def _rule(file: TextIO, width: int = 60) -> None:
    print(colorize("=" * width, Colors.DIM), file=file)


def format_count_text(payload: CountPayload, file: TextIO) -> None:
    print(payload.count, file=file)
    print(
        colorize(
            f"cyclic sublattices of level {payload.n}, rank {payload.r}, q = {payload.q}; "
            f"displayed product formula gives {payload.displayed_count}",
            Colors.DIM,
        ),
        file=file,
    )
    for M in payload.matrices or []:
        print(";".join(",".join(row) for row in M), file=file)


def format_snf_text(payload: SnfPayload, file: TextIO) -> None:
    print(", ".join(payload.invariant_factors), file=file)


def format_bridge_text(payload: BridgePayload, file: TextIO) -> None:
    _rule(file)
    print(colorize(f"Bridge polynomials, q = {payload.q}", Colors.BOLD), file=file)
    _rule(file)
    for name in ("F", "G", "H"):
        for k, poly in enumerate(getattr(payload, name), start=1):
            print(f"{name}_{k} = {poly}", file=file)
    ok = payload.identity_holds
    print(
        colorize(
            f"H_k = F_k(G_1, ..., G_k): {'holds' if ok else 'FAILS'}",
            Colors.GREEN if ok else Colors.RED,
        ),
        file=file,
    )


def format_expansion_text(payload: ExpansionPayload, file: TextIO) -> None:
    print(colorize(f"{payload.label} (q = {payload.q}, r = {payload.r})", Colors.BOLD), file=file)
    series = payload.series
    if series.root_exponent:
        print(f"(-1)^({series.root_exponent}) * ({series.text})", file=file)
    else:
        print(series.text, file=file)


def format_modpoly_text(payload: ModpolyPayload, file: TextIO) -> None:
    _rule(file)
    print(
        colorize(f"Modular polynomial of level {payload.n}, q = {payload.q}", Colors.BOLD),
        file=file,
    )
    _rule(file)
    print(payload.rendered, file=file)
    print(file=file)
    print(
        colorize(
            f"degree {payload.degree}, monic {payload.monic}, integral {payload.integral}, "
            f"precision {payload.precision}",
            Colors.DIM,
        ),
        file=file,
    )
    print(
        colorize(f"symmetry: {payload.symmetry.status}", STATUS_COLORS[payload.symmetry.status]),
        file=file,
    )
    print(file=file)
    print(colorize("BOUNDS:", Colors.BOLD), file=file)
    print(colorize("-" * 40, Colors.DIM), file=file)
    for row in payload.bound_report.rows:
        mark = colorize("ok", Colors.GREEN) if row.sharp_ok else colorize("VIOLATED", Colors.RED)
        print(
            f"  a_{row.i}: w = {row.weight}  sharp <= {row.sharp_bound} {mark}  "
            f"theorem <= {row.theorem_bound}  proof <= {row.proof_bound}",
            file=file,
        )
    for line in payload.bound_report.discrepancies:
        print(colorize(f"  note: {line}", Colors.YELLOW), file=file)


def format_verify_text(payload: VerifyPayload, file: TextIO) -> None:
    _rule(file)
    print(colorize(f"Verification, q = {payload.report.q}", Colors.BOLD), file=file)
    _rule(file)
    for check in payload.report.checks:
        status = colorize(f"{check.status.upper():<8}", STATUS_COLORS[check.status])
        print(f"  {status} {check.name}", file=file)
        if check.detail:
            print(colorize(f"           {check.detail}", Colors.DIM), file=file)
    verdict = "ALL PASSED" if payload.passed else "FAILURES"
    print(colorize(verdict, Colors.GREEN if payload.passed else Colors.RED), file=file)


def format_result_text(payload: Payload, file: TextIO = sys.stdout) -> None:
    """Format a payload for human-readable terminal output."""
    if isinstance(payload, CountPayload):
        format_count_text(payload, file)
    elif isinstance(payload, SnfPayload):
        format_snf_text(payload, file)
    elif isinstance(payload, BridgePayload):
        format_bridge_text(payload, file)
    elif isinstance(payload, ExpansionPayload):
        format_expansion_text(payload, file)
    elif isinstance(payload, ModpolyPayload):
        format_modpoly_text(payload, file)
    elif isinstance(payload, VerifyPayload):
        format_verify_text(payload, file)


def format_result_json(payload: Payload, file: TextIO = sys.stdout) -> None:
    """Format a payload as sorted, byte-stable JSON."""
    print(json.dumps(payload.to_dict(), indent=2, sort_keys=True), file=file)


def format_error(error: ModpolyError, output: OutputFormat, file: TextIO = sys.stderr) -> None:
    payload = ErrorPayload(**error.to_dict(), exit_code=error.exit_code)
    if output == OutputFormat.JSON:
        print(json.dumps(payload.to_dict(), sort_keys=True), file=file)
        return
    print(colorize(f"Error [{payload.error}]: {payload.message}", Colors.RED), file=file)
    for key, value in payload.details.items():
        print(colorize(f"  {key}: {value}", Colors.DIM), file=file)


# =============================================================================
# Argument Parsing
# =============================================================================


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=settings.default_q, help="Field size q")
    common.add_argument("--r", type=int, default=settings.default_rank, help="Rank r")
    common.add_argument("--n", default="T", help="Monic level polynomial (default: T)")
    common.add_argument("--precision", type=int, default=None, help="Working grid precision")
    common.add_argument(
        "-f",
        "--format",
        dest="output",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="Output format (default: text)",
    )
    common.add_argument(
        "--json", dest="output", action="store_const", const="json", help="Alias of --format json"
    )
    common.add_argument(
        "--seed", type=int, default=settings.random_seed, help="Seed for randomized checks"
    )
    common.add_argument("--cache-dir", default=None, help="Read and write the bridge cache here")
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
        help="Log level for stderr records",
    )
    common.add_argument("--no-color", action="store_true", help="Disable ANSI colors")
    common.add_argument(
        "--primitive",
        action="store_true",
        help="Use the primitive torsion factor as the torsion modulus",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="drinfeld-modpoly",
        description="Exact cusp expansions and modular polynomials for Drinfeld modules",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s count --q 2 --r 2 --n T
  %(prog)s enumerate --q 3 --r 2 --n "T^2"
  %(prog)s snf --q 2 --matrix "T,1;0,T"
  %(prog)s expand --q 2 --what delta --precision 8
  %(prog)s modpoly --q 2 --n T --json > phi_T.json
  %(prog)s verify --q 3 --r 3 --seed 7
        """,
    )
    parser.add_argument("--version", action="version", version="drinfeld-modpoly 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("count", parents=[common], help="Count cyclic sublattices of level n")
    sub.add_parser("enumerate", parents=[common], help="List cyclic sublattices of level n")

    snf = sub.add_parser("snf", parents=[common], help="Smith normal form of a matrix over A")
    snf.add_argument("--matrix", required=True, help='Rows separated by ";", entries by ","')

    bridge = sub.add_parser("bridge", parents=[common], help="Bridge polynomials F, G and H")
    bridge.add_argument("--k-max", type=int, default=3, help="Largest index (default: 3)")

    expand = sub.add_parser("expand", parents=[common], help="Expansion at the cusp")
    expand.add_argument(
        "--what",
        choices=[t.value for t in ExpandTarget],
        default=ExpandTarget.J.value,
        help="Quantity to expand (default: j)",
    )
    expand.add_argument("--k", type=int, default=1, help="Index k (default: 1)")
    expand.add_argument("--a", default="T", help="Polynomial a for q-scaled (default: T)")
    expand.add_argument("--shape", type=int, default=None, help="Sublattice index for sublattice")

    sub.add_parser("modpoly", parents=[common], help="Rank-2 modular polynomial of level n")
    sub.add_parser("verify", parents=[common], help="Run the property suites")
    return parser


def build_config(args: argparse.Namespace) -> JobConfig:
    """Validate parsed arguments into a ``JobConfig``; raises ``ConfigError``."""
    fields = {
        "command": args.command,
        "q": args.q,
        "r": args.r,
        "n": args.n,
        "precision": args.precision,
        "output": args.output,
        "seed": args.seed,
        "cache_dir": args.cache_dir,
        "primitive": args.primitive,
    }
    for name in ("matrix", "what", "k", "a", "shape", "k_max"):
        if hasattr(args, name):
            fields[name] = getattr(args, name)
    try:
        return JobConfig(**fields)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "config"
        raise ConfigError(f"{location}: {first['msg']}", command=args.command) from e


# =============================================================================
# Entry Point
# =============================================================================


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point.

    Args:
        argv: Command-line arguments (defaults to sys.argv[1:]).

    Returns:
        Exit code: 0 on success, 2 for parse errors, 3 for domain errors,
        4 for verification failures.
    """
    global _color_disabled

    args = build_parser().parse_args(argv)
    _color_disabled = args.no_color
    output = OutputFormat(args.output)
    if args.log_level:
        set_package_log_level(args.log_level)
    if args.cache_dir:
        settings.cache_dir = Path(args.cache_dir)
        settings.use_bridge_cache = True

    try:
        config = build_config(args)
        payload = run_job(config)
    except ModpolyError as e:
        format_error(e, output, sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        print("\n\nInterrupted.", file=sys.stderr)
        return 130

    if output == OutputFormat.JSON:
        format_result_json(payload, sys.stdout)
    else:
        format_result_text(payload, sys.stdout)

    if isinstance(payload, VerifyPayload) and not payload.passed:
        return VERIFICATION_FAILED
    return 0


if __name__ == "__main__":
    sys.exit(main())
