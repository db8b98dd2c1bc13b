"""Universal polynomials linking exponential coefficients, Eisenstein series and g_k.

With e_k = e_{q^k}(L), E_k = E_{q^k - 1}(L) and [k] = T^(q^k) - T:

* g_k = F_k(e_1, ..., e_k) from [k] e_k = g_k + sum_{j<k} g_j e_{k-j}^(q^j),
* e_k = G_k(E_1, ..., E_k) from e_k = E_k + sum_{i<k} e_i E_{k-i}^(q^i),
* g_k = H_k(E_1, ..., E_k) = F_k(G_1, ..., G_k).

The polynomials do not depend on the lattice or its rank; they are computed
once per (field, k_max) and shared.
"""

from __future__ import annotations

import random
import threading
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from src.drinfeld_modpoly.algebra.field import FiniteField, field_for_q
from src.drinfeld_modpoly.algebra.multipoly import MultiPoly, MultiPolyRing, multipoly_ring
from src.drinfeld_modpoly.algebra.polya import poly_ring
from src.drinfeld_modpoly.algebra.quotient import QuotientAlgebra, residue_field
from src.drinfeld_modpoly.algebra.rings import CommutativeRing
from src.drinfeld_modpoly.algebra.series import FracLaurentSeries, series_inverse, series_mul
from src.drinfeld_modpoly.config import settings
from src.drinfeld_modpoly.drinfeld.module import (
    DrinfeldModule,
    bracket,
    carlitz,
    exponential_coefficients,
)
from src.drinfeld_modpoly.errors import GrammarError, ShapeError
from src.drinfeld_modpoly.utils.cache import BridgeCache
from src.drinfeld_modpoly.utils.logging import setup_logger

logger = setup_logger(__name__)


def x_ring(field: FiniteField, k_max: int) -> MultiPolyRing:
    """A[X1, ..., Xk]: the exponential-coefficient side."""
    return multipoly_ring(poly_ring(field), tuple(f"X{k}" for k in range(1, k_max + 1)))


def y_ring(base: CommutativeRing, k_max: int) -> MultiPolyRing:
    """base[Y1, ..., Yk]: the Eisenstein side."""
    return multipoly_ring(base, tuple(f"Y{k}" for k in range(1, k_max + 1)))


def _check_k_max(k_max: int) -> None:
    if k_max < 1:
        raise ShapeError("bridge polynomials need k_max >= 1", k_max=k_max)


def compute_F(k_max: int, field: FiniteField) -> list[MultiPoly]:
    """[F_1, ..., F_k_max] over A."""
    _check_k_max(k_max)
    ring = x_ring(field, k_max)
    X = ring.gens()
    F: list[MultiPoly] = []
    for k in range(1, k_max + 1):
        acc = X[k - 1] * ring.coerce(bracket(field, k))
        for j in range(1, k):
            acc = acc - F[j - 1] * X[k - j - 1] ** (field.q**j)
        F.append(acc)
    return F


def compute_G(k_max: int, field: FiniteField) -> list[MultiPoly]:
    """[G_1, ..., G_k_max] over F_q."""
    _check_k_max(k_max)
    ring = y_ring(field, k_max)
    Y = ring.gens()
    G: list[MultiPoly] = []
    for k in range(1, k_max + 1):
        acc = Y[k - 1]
        for i in range(1, k):
            acc = acc + G[i - 1] * Y[k - i - 1] ** (field.q**i)
        G.append(acc)
    return G


def compute_H(
    k_max: int,
    field: FiniteField,
    F: Sequence[MultiPoly] | None = None,
    G: Sequence[MultiPoly] | None = None,
) -> list[MultiPoly]:
    """[H_1, ..., H_k_max] over A, H_k = F_k(G_1, ..., G_k)."""
    _check_k_max(k_max)
    F = F if F is not None else compute_F(k_max, field)
    G = G if G is not None else compute_G(k_max, field)
    target = y_ring(poly_ring(field), k_max)
    lifted = [g.map_coefficients(target.base.coerce, target) for g in G]
    return [f.evaluate(lifted, target.coerce, target.zero()) for f in F]


def evaluation_ring(field: FiniteField, k_max: int) -> QuotientAlgebra:
    """A/(pi) with deg pi = k_max + 1, where [1], ..., [k_max] are all units."""
    return residue_field(field, k_max + 1)


def sample_modules(
    field: FiniteField, k_max: int, seed: int = 0, ranks: Sequence[int] = (2, 3)
) -> list[DrinfeldModule]:
    """The Carlitz module and one random module per rank over ``evaluation_ring``."""
    ring = evaluation_ring(field, k_max)
    rng = random.Random(seed)
    elements = field.elements()

    def draw() -> Any:
        return ring.reduce([rng.choice(elements) for _ in range(ring.rank)])

    modules = [carlitz(field.q, ring)]
    for r in ranks:
        delta = draw()
        while not delta:
            delta = draw()
        modules.append(DrinfeldModule(ring, [draw() for _ in range(r - 1)] + [delta]))
    return modules


@dataclass(frozen=True)
class BridgePolynomials:
    """F, G and H up to index k_max over one constant field."""

    field: FiniteField
    k_max: int
    F: tuple[MultiPoly, ...]
    G: tuple[MultiPoly, ...]
    H: tuple[MultiPoly, ...]

    @property
    def q(self) -> int:
        return self.field.q

    @classmethod
    def compute(cls, field: FiniteField, k_max: int) -> BridgePolynomials:
        F = compute_F(k_max, field)
        G = compute_G(k_max, field)
        H = compute_H(k_max, field, F, G)
        logger.info("Computed bridge polynomials", extra={"q": field.q, "k_max": k_max})
        return cls(field, k_max, tuple(F), tuple(G), tuple(H))

    def mismatches(self, dm: DrinfeldModule) -> list[str]:
        """Names of the polynomials that disagree with one concrete module.

        Checks F_k(e) = g_k, G_k(E) = e_k and H_k(E) = g_k, where e_k are the
        exponential coefficients of ``dm`` and E_k = E_{q^k - 1} is read off
        the inverse of the exponential series.
        """
        ring = dm.ring
        q, k_max = self.q, self.k_max
        e = exponential_coefficients(dm, k_max)
        eisenstein = full_eisenstein_sequence(ring, e, q**k_max)
        E = [eisenstein[q**k - 1] for k in range(1, k_max + 1)]
        zero = ring.zero()
        out = []
        for k in range(1, k_max + 1):
            g_k = dm.coefficient(k)
            if self.F[k - 1].evaluate(e[1:], ring.coerce, zero) != g_k:
                out.append(f"F_{k}")
            if self.G[k - 1].evaluate(E, ring.coerce, zero) != e[k]:
                out.append(f"G_{k}")
            if self.H[k - 1].evaluate(E, ring.coerce, zero) != g_k:
                out.append(f"H_{k}")
        return out

    def identity_failures(self, seed: int = 0) -> list[str]:
        """Mismatches over the Carlitz module and random modules of rank 2 and 3."""
        return [
            f"{name} (rank {dm.rank})"
            for dm in sample_modules(self.field, self.k_max, seed)
            for name in self.mismatches(dm)
        ]

    def identity_holds(self, seed: int = 0) -> bool:
        return not self.identity_failures(seed)

    def to_payload(self) -> dict[str, Any]:
        return {
            "q": self.field.q,
            "k_max": self.k_max,
            "F": [str(f) for f in self.F],
            "G": [str(g) for g in self.G],
            "H": [str(h) for h in self.H],
        }

    @classmethod
    def from_payload(cls, field: FiniteField, payload: dict[str, Any]) -> BridgePolynomials:
        k_max = int(payload["k_max"])
        if int(payload["q"]) != field.q or any(
            len(payload[key]) != k_max for key in ("F", "G", "H")
        ):
            raise GrammarError("bridge payload does not match its header", q=field.q)
        xr = x_ring(field, k_max)
        gr = y_ring(field, k_max)
        hr = y_ring(poly_ring(field), k_max)
        return cls(
            field,
            k_max,
            tuple(xr.parse(text) for text in payload["F"]),
            tuple(gr.parse(text) for text in payload["G"]),
            tuple(hr.parse(text) for text in payload["H"]),
        )

    @classmethod
    def from_cache_or_compute(
        cls, q: int, k_max: int, cache: BridgeCache | None = None
    ) -> BridgePolynomials:
        field = field_for_q(q)
        if cache is not None:
            payload = cache.get(q, field.p, field.e, k_max)
            if payload is not None:
                try:
                    return cls.from_payload(field, payload)
                except (GrammarError, KeyError, TypeError, ValueError) as e:
                    logger.warning("Discarding unreadable bridge payload", extra={"error": str(e)})
        bridge = cls.compute(field, k_max)
        if cache is not None:
            cache.set(q, field.p, field.e, k_max, bridge.to_payload())
        return bridge


# =============================================================================
# Shared in-process store
# =============================================================================

_BRIDGES: dict[tuple[Any, int], BridgePolynomials] = {}
_BRIDGE_LOCK = threading.Lock()


def get_bridge(field: FiniteField, k_max: int) -> BridgePolynomials:
    """Write-once store of bridge polynomials, shared by concurrent readers."""
    key = (field.key, k_max)
    bridge = _BRIDGES.get(key)
    if bridge is not None:
        return bridge
    with _BRIDGE_LOCK:
        bridge = _BRIDGES.get(key)
        if bridge is None:
            cache = BridgeCache() if settings.use_bridge_cache else None
            if cache is not None and field == field_for_q(field.q):
                bridge = BridgePolynomials.from_cache_or_compute(field.q, k_max, cache)
            else:
                bridge = BridgePolynomials.compute(field, k_max)
            _BRIDGES[key] = bridge
    return bridge


# =============================================================================
# Concrete sequences
# =============================================================================


def eisenstein_from_exponential(e: Sequence[Any]) -> list[Any]:
    """[E_1, ..., E_k] from [e_0 = 1, e_1, ..., e_k] (indices are q-powers).

    Runs e_k = E_k + sum_{i<k} e_i E_{k-i}^(q^i) backwards, so that the
    exponential coefficients may live in any ring with a Frobenius.
    """
    if not e:
        return []
    ring_frob = _frobenius_of(e[0])
    E: list[Any] = [None]
    for k in range(1, len(e)):
        acc = e[k]
        for i in range(1, k):
            acc = acc - e[i] * ring_frob(E[k - i], i)
        E.append(acc)
    return E[1:]


def exponential_from_eisenstein(E: Sequence[Any], one: Any) -> list[Any]:
    """[e_0 = 1, e_1, ..., e_k] from [E_1, ..., E_k]."""
    ring_frob = _frobenius_of(one)
    e = [one]
    for k in range(1, len(E) + 1):
        acc = E[k - 1]
        for i in range(1, k):
            acc = acc + e[i] * ring_frob(E[k - i - 1], i)
        e.append(acc)
    return e


def _frobenius_of(sample: Any) -> Any:
    """x, i -> x^(q^i) using the Frobenius of the element's ring."""
    ring = _ring_of(sample)

    def frob(x: Any, i: int) -> Any:
        for _ in range(i):
            x = ring.frobenius(x)
        return x

    return frob


def _ring_of(x: Any) -> CommutativeRing:
    from src.drinfeld_modpoly.algebra.fraction import RationalFunc, fraction_field

    if isinstance(x, RationalFunc):
        return fraction_field(x.field)
    for attr in ("ring", "alg", "field"):
        ring = getattr(x, attr, None)
        if isinstance(ring, CommutativeRing):
            return ring
    raise ShapeError(f"cannot determine the ring of {type(x).__name__}")


def exponential_series(ring: CommutativeRing, e: Sequence[Any], precision: int) -> FracLaurentSeries:
    """sum_i e_i z^(q^i - 1) known below z^precision."""
    q = ring.q
    needed = sum(1 for i in range(precision) if q**i - 1 < precision)
    if len(e) < needed:
        raise ShapeError("not enough exponential coefficients for this precision")
    terms = {q**i - 1: ring.coerce(c) for i, c in enumerate(e) if q**i - 1 < precision}
    return FracLaurentSeries(ring, terms, precision)


def full_eisenstein_sequence(
    ring: CommutativeRing, e: Sequence[Any], precision: int
) -> list[Any]:
    """[E_0 = -1, E_1, ..., E_{precision-1}] from -1 / sum e_i z^(q^i - 1)."""
    inverse = series_inverse(exponential_series(ring, e, precision), precision)
    return [-inverse.terms.get(j, ring.zero()) for j in range(precision)]


def product_identity_holds(
    ring: CommutativeRing, e: Sequence[Any], E: Sequence[Any], precision: int
) -> bool:
    """(sum e_i z^(q^i - 1)) (sum_j E_j z^j) == -1 below z^precision, with E_0 = -1."""
    left = exponential_series(ring, e, precision)
    right = FracLaurentSeries(ring, {j: ring.coerce(c) for j, c in enumerate(E[:precision])}, precision)
    product = series_mul(left, right)
    return product.agrees_with(FracLaurentSeries(ring, {0: -ring.one()}), precision)
