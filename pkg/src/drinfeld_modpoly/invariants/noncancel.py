"""Order of f(v_1, ..., v_{r-1}) for series v_k with independent formal leading coefficients.

Each v_k = a_k x^(-c (q^k - 1)/(q^r - 1)) + b_{k,1} x^(...+1/(q^r-1)) + ... with
a_k, b_{k,i} free symbols. The order of f(v) is then -c w(f) and its leading
coefficient is the weighted leading form of f evaluated at the a_k.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any

from src.drinfeld_modpoly.algebra.field import field_for_q
from src.drinfeld_modpoly.algebra.fraction import fraction_field
from src.drinfeld_modpoly.algebra.multipoly import MultiPoly, MultiPolyRing, multipoly_ring
from src.drinfeld_modpoly.algebra.polya import PolyA
from src.drinfeld_modpoly.algebra.series import FracLaurentSeries
from src.drinfeld_modpoly.config import settings
from src.drinfeld_modpoly.invariants.weighted import (
    WeightedPoly,
    weighted_degree,
    weighted_leading_form,
    weighted_ring,
)
from src.drinfeld_modpoly.types.reports import NonCancellationReport
from src.drinfeld_modpoly.utils.logging import setup_logger

logger = setup_logger(__name__)


def random_weighted_poly(
    rng: random.Random, q: int, r: int, max_terms: int = 4, max_exponent: int | None = None
) -> WeightedPoly:
    """A nonzero random polynomial in u_1..u_{r-1} with small coefficients in A."""
    ring = weighted_ring(q, r)
    field = field_for_q(q)
    top = max_exponent if max_exponent is not None else q + 2
    terms = {}
    while not terms:
        for _ in range(rng.randint(1, max_terms)):
            alpha = tuple(rng.randint(0, top) for _ in range(r - 1))
            coeffs = [rng.randrange(q) for _ in range(2)]
            coeffs[rng.randrange(2)] = rng.randrange(1, q)
            c = ring.base.coerce(PolyA(field, coeffs))
            terms[alpha] = c
    return WeightedPoly(MultiPoly(ring, terms), r, q)


def formal_symbol_ring(q: int, r: int, tail: int) -> MultiPolyRing:
    names = [f"a{k}" for k in range(1, r)]
    names += [f"b{k}_{i}" for k in range(1, r) for i in range(1, tail + 1)]
    return multipoly_ring(fraction_field(field_for_q(q)), tuple(names))


def formal_series(q: int, r: int, scale: int, tail: int) -> list[FracLaurentSeries]:
    """The v_k on the grid 1/(q^r - 1), known to relative precision tail + 1."""
    ring = formal_symbol_ring(q, r, tail)
    D = q**r - 1
    out = []
    for k in range(1, r):
        o = -scale * (q**k - 1)
        terms = {o: ring.gen(f"a{k}")}
        for i in range(1, tail + 1):
            terms[o + i] = ring.gen(f"b{k}_{i}")
        out.append(FracLaurentSeries(ring, terms, o + tail + 1, D))
    return out


def order_matches(f: WeightedPoly, scale: int = 1, tail: int = 2) -> bool:
    """Whether ord f(v) = -scale w(f) with leading coefficient wlf(f)(a)."""
    values = formal_series(f.q, f.r, scale, tail)
    ring = values[0].ring
    D = values[0].denom
    zero = FracLaurentSeries.zero(ring, denom=D)

    def constant(c: Any) -> FracLaurentSeries:
        return FracLaurentSeries(ring, {0: ring.coerce(c)}, denom=D)

    image = f.evaluate(values, constant, zero)
    expected = -scale * weighted_degree(f) * D
    if expected.denominator != 1 or not image.terms:
        return False
    order, lead = image.leading()
    symbols = [ring.gen(f"a{k}") for k in range(1, f.r)]
    lead_form = weighted_leading_form(f).evaluate(symbols, ring.coerce, ring.zero())
    return Fraction(order) == expected and lead == lead_form


def noncancellation_check(
    q: int,
    r: int,
    c: int = 1,
    samples: int | None = None,
    seed: int | None = None,
    tail: int = 2,
) -> NonCancellationReport:
    """Run the non-cancellation experiment on seeded random weighted polynomials."""
    samples = settings.property_samples if samples is None else samples
    seed = settings.random_seed if seed is None else seed
    rng = random.Random(seed)
    passed = 0
    failures = []
    for _ in range(samples):
        f = random_weighted_poly(rng, q, r)
        if order_matches(f, c, tail):
            passed += 1
        else:
            failures.append(str(f))
    logger.info(
        "Non-cancellation check finished",
        extra={"q": q, "r": r, "samples": samples, "passed": passed},
    )
    return NonCancellationReport(
        q=q, r=r, scale=c, seed=seed, samples=samples, passed=passed, failures=failures
    )
