"""Sparse multivariate polynomials over a pluggable coefficient ring."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from functools import cache
from typing import Any

from src.drinfeld_modpoly.algebra.rings import CommutativeRing, needs_parens
from src.drinfeld_modpoly.errors import RingMismatchError, ZeroDivisorError

Exponent = tuple[int, ...]


class MultiPoly:
    """sum of coefficient * X^alpha, stored as {alpha: coefficient} without zeros."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: MultiPolyRing, terms: Mapping[Exponent, Any]) -> None:
        self.ring = ring
        self.terms = {alpha: c for alpha, c in terms.items() if c}

    @classmethod
    def _raw(cls, ring: MultiPolyRing, terms: dict[Exponent, Any]) -> MultiPoly:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # -------------------------------------------------------------------------
    # Operators
    # -------------------------------------------------------------------------

    def _coerce(self, other: Any) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(
                    "polynomials over different rings", left=self.ring, right=other.ring
                )
            return other
        try:
            return self.ring.coerce(other)
        except RingMismatchError:
            return None

    def __add__(self, other: Any) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for alpha, c in o.terms.items():
            prev = out.get(alpha)
            if prev is None:
                out[alpha] = c
            else:
                s = prev + c
                if s:
                    out[alpha] = s
                else:
                    del out[alpha]
        return MultiPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.ring, {alpha: -c for alpha, c in self.terms.items()})

    def __sub__(self, other: Any) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return self.ring.zero()
        out: dict[Exponent, Any] = {}
        for a1, c1 in self.terms.items():
            for a2, c2 in o.terms.items():
                alpha = tuple(x + y for x, y in zip(a1, a2, strict=True))
                prod = c1 * c2
                prev = out.get(alpha)
                out[alpha] = prod if prev is None else prev + prod
        return MultiPoly._raw(self.ring, {alpha: c for alpha, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        return self.ring.power(self, n)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            o = self.ring.coerce(other)
        except RingMismatchError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        return self.ring.format(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.ring.format(self)!r})"

    # -------------------------------------------------------------------------
    # Structure
    # -------------------------------------------------------------------------

    def is_constant(self) -> bool:
        return all(not any(alpha) for alpha in self.terms)

    def constant_term(self) -> Any:
        return self.terms.get(self.ring.zero_exponent, self.ring.base.zero())

    def map_coefficients(self, fn: Callable[[Any], Any], ring: MultiPolyRing) -> MultiPoly:
        """Apply ``fn`` to every coefficient, landing in ``ring`` (same arity)."""
        if len(ring.names) != len(self.ring.names):
            raise RingMismatchError("coefficient map between rings of different arity")
        return MultiPoly(ring, {alpha: fn(c) for alpha, c in self.terms.items()})

    def evaluate(self, values: Sequence[Any], coerce: Callable[[Any], Any], zero: Any) -> Any:
        """Substitute ``values[i]`` for the i-th generator.

        ``coerce`` maps coefficients into the target; the values must support
        ``*``, ``+`` and ``**`` with integer exponents.
        """
        if len(values) != len(self.ring.names):
            raise RingMismatchError(
                "wrong number of substitution values",
                expected=len(self.ring.names),
                got=len(values),
            )
        power_cache: dict[tuple[int, int], Any] = {}

        def power(i: int, e: int) -> Any:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = values[i] ** e
            return power_cache[key]

        total = zero
        for alpha in sorted(self.terms):
            term = coerce(self.terms[alpha])
            for i, e in enumerate(alpha):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total


class MultiPolyRing(CommutativeRing):
    """base[names...]; the Frobenius raises generators and coefficients to the q-th power."""

    def __init__(self, base: CommutativeRing, names: Sequence[str]) -> None:
        if len(set(names)) != len(names):
            raise RingMismatchError("duplicate generator names", names=list(names))
        self.base = base
        self.names = tuple(names)
        self.zero_exponent: Exponent = (0,) * len(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiPolyRing) and (self.base, self.names) == (
            other.base,
            other.names,
        )

    def __hash__(self) -> int:
        return hash(("MultiPolyRing", self.base, self.names))

    def __repr__(self) -> str:
        return f"MultiPolyRing({self.base!r}, {list(self.names)})"

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def q(self) -> int:
        return self.base.q

    def zero(self) -> MultiPoly:
        return MultiPoly._raw(self, {})

    def one(self) -> MultiPoly:
        return MultiPoly._raw(self, {self.zero_exponent: self.base.one()})

    def gen(self, name: str | int) -> MultiPoly:
        index = self.names.index(name) if isinstance(name, str) else name
        alpha = tuple(1 if i == index else 0 for i in range(len(self.names)))
        return MultiPoly._raw(self, {alpha: self.base.one()})

    def gens(self) -> list[MultiPoly]:
        return [self.gen(i) for i in range(len(self.names))]

    def monomial(self, alpha: Iterable[int], coeff: Any = None) -> MultiPoly:
        c = self.base.one() if coeff is None else self.base.coerce(coeff)
        return MultiPoly(self, {tuple(alpha): c})

    def coerce(self, value: Any) -> MultiPoly:
        if isinstance(value, MultiPoly):
            if value.ring != self:
                raise RingMismatchError("polynomial from a different ring")
            return value
        c = self.base.coerce(value)
        return MultiPoly._raw(self, {self.zero_exponent: c} if c else {})

    def is_unit(self, x: MultiPoly) -> bool:
        return x.is_constant() and bool(x) and self.base.is_unit(x.constant_term())

    def inv(self, x: MultiPoly) -> MultiPoly:
        if not x.is_constant() or not x:
            raise ZeroDivisorError("only constant units are invertible", value=self.format(x))
        return self.coerce(self.base.inv(x.constant_term()))

    def frobenius(self, x: MultiPoly) -> MultiPoly:
        q = self.q
        return MultiPoly._raw(
            self,
            {
                tuple(e * q for e in alpha): self.base.frobenius(c)
                for alpha, c in x.terms.items()
            },
        )

    def variables(self) -> dict[str, Any]:
        names: dict[str, Any] = {k: self.coerce(v) for k, v in self.base.variables().items()}
        names.update({name: self.gen(name) for name in self.names})
        return names

    def monomial_text(self, alpha: Exponent) -> str:
        parts = []
        for name, e in zip(self.names, alpha, strict=True):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def format(self, x: MultiPoly) -> str:
        if not x.terms:
            return "0"
        ordered = sorted(x.terms, key=lambda alpha: (sum(alpha), alpha), reverse=True)
        out = []
        for alpha in ordered:
            coeff = self.base.format(x.terms[alpha])
            mono = self.monomial_text(alpha)
            if not mono:
                out.append(coeff)
            elif coeff == "1":
                out.append(mono)
            else:
                out.append(f"({coeff})*{mono}" if needs_parens(coeff) else f"{coeff}*{mono}")
        return "+".join(out)


@cache
def multipoly_ring(base: CommutativeRing, names: tuple[str, ...]) -> MultiPolyRing:
    return MultiPolyRing(base, names)
