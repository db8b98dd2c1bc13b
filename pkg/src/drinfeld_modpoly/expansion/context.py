"""Expansion contexts: the lower-rank lattice, its coefficient ring and the working precision.

Rank-r invariants are expanded in t = 1/e(z_r) over a fixed rank-(r-1)
lattice normalized to Delta = 1. For r = 2 the lower module is the Carlitz
module and coefficients are concrete (A for the module, K for Eisenstein
data). For r >= 3 the free generators e1, ..., e{r-2} stand for the
exponential coefficients e_{q^k} of the lower lattice; everything else is
derived from them.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from typing import Any

from src.drinfeld_modpoly.algebra.field import FiniteField, field_for_q
from src.drinfeld_modpoly.algebra.fraction import fraction_field
from src.drinfeld_modpoly.algebra.multipoly import MultiPolyRing, multipoly_ring
from src.drinfeld_modpoly.algebra.polya import poly_ring
from src.drinfeld_modpoly.algebra.rings import CommutativeRing
from src.drinfeld_modpoly.drinfeld.module import DrinfeldModule, carlitz, exponential_coefficients
from src.drinfeld_modpoly.errors import ShapeError
from src.drinfeld_modpoly.expansion.bridge import eisenstein_from_exponential, get_bridge


@dataclass(frozen=True)
class ExpansionContext:
    """Everything an expansion needs besides the quantity being expanded.

    Attributes:
        q: Size of the constant field.
        r: Rank of the lattices being expanded.
        precision: Expansions in t are known below t^precision.
        field: The constant field F_q.
        ring: Coefficient ring of Eisenstein and g_k expansions.
        lattice_ring: Coefficient ring of the lower module (A for r = 2).
        lower: The rank-(r-1) module with Delta = 1, over ``lattice_ring``.
        exponential_module: The same module over ``ring`` (used for e_{q^k}).
        generators: Names of the free symbolic generators (empty for r = 2).
    """

    q: int
    r: int
    precision: int
    field: FiniteField
    ring: CommutativeRing
    lattice_ring: CommutativeRing
    lower: DrinfeldModule
    exponential_module: DrinfeldModule
    generators: tuple[str, ...] = ()
    cache: dict[Any, Any] = field(default_factory=dict, compare=False, repr=False)

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def concrete(cls, q: int, precision: int) -> ExpansionContext:
        """Rank 2 over the Carlitz module."""
        fq = field_for_q(q)
        A = poly_ring(fq)
        K = fraction_field(fq)
        return cls(
            q=q,
            r=2,
            precision=precision,
            field=fq,
            ring=K,
            lattice_ring=A,
            lower=carlitz(q, A),
            exponential_module=carlitz(q, K),
        )

    @classmethod
    def symbolic(
        cls,
        q: int,
        r: int,
        precision: int,
        extra_generators: Sequence[str] = (),
        prefix: str = "e",
    ) -> ExpansionContext:
        """Rank r over a lower lattice with free exponential coefficients ``prefix``1.. ."""
        names = tuple(f"{prefix}{k}" for k in range(1, r - 1)) + tuple(extra_generators)
        ring = multipoly_ring(fraction_field(field_for_q(q)), names)
        return cls.over_ring(q, r, precision, ring, names[: r - 2])

    @classmethod
    def over_ring(
        cls,
        q: int,
        r: int,
        precision: int,
        ring: MultiPolyRing,
        generators: Sequence[str],
    ) -> ExpansionContext:
        """Rank r with the lower lattice's e_{q^k} (k <= r-2) given by ``generators`` of ``ring``."""
        if r < 2:
            raise ShapeError("expansions need rank at least 2", rank=r)
        if len(generators) != r - 2:
            raise ShapeError("need r - 2 free generators", rank=r, generators=list(generators))
        fq = field_for_q(q)
        bridge = get_bridge(fq, r)
        gens = [ring.gen(name) for name in generators]
        padded = gens + [ring.zero()] * (bridge.k_max - len(gens))
        g = [
            bridge.F[k - 1].evaluate(padded, ring.coerce, ring.zero()) for k in range(1, r - 1)
        ]
        lower = DrinfeldModule(ring, [*g, ring.one()])
        return cls(
            q=q,
            r=r,
            precision=precision,
            field=fq,
            ring=ring,
            lattice_ring=ring,
            lower=lower,
            exponential_module=lower,
            generators=tuple(generators),
        )

    def with_precision(self, precision: int) -> ExpansionContext:
        """Same lattice data at another precision; the precision-free caches are shared."""
        return replace(self, precision=precision, cache=self.cache)

    # -------------------------------------------------------------------------
    # Lower-lattice constants
    # -------------------------------------------------------------------------

    @property
    def grid_denom(self) -> int:
        """q^r - 1, the exponent denominator of the u_k expansions."""
        return self.q**self.r - 1

    @property
    def is_symbolic(self) -> bool:
        return self.r >= 3 or isinstance(self.ring, MultiPolyRing)

    def exponential(self, k: int) -> Any:
        """e_{q^k} of the lower lattice, as an element of ``ring``."""
        coeffs = self.cache.get("exponential")
        if coeffs is None or len(coeffs) <= k:
            coeffs = exponential_coefficients(self.exponential_module, max(k, self.r))
            self.cache["exponential"] = coeffs
        return coeffs[k]

    def eisenstein_constant(self, m: int) -> Any:
        """E_{q^m - 1} of the lower lattice."""
        values = eisenstein_from_exponential([self.exponential(k) for k in range(m + 1)])
        return values[m - 1]

    def lower_g(self, k: int) -> Any:
        """g_k of the lower lattice (g_{r-1} = Delta = 1, zero beyond)."""
        return self.ring.coerce(self.exponential_module.coefficient(k))
