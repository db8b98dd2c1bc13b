"""Skew polynomials R{tau} with tau * c = c^q * tau.

``TauPoly`` is stored as its coefficient list [c_0, c_1, ...] and stands for
the F_q-linear polynomial sum c_i X^(q^i); multiplication is composition.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from typing import Any

from src.drinfeld_modpoly.algebra.rings import CommutativeRing, wrap
from src.drinfeld_modpoly.errors import RingMismatchError, ZeroPolynomialError


def _trim(coeffs: list[Any]) -> tuple[Any, ...]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def frobenius_iterates(ring: CommutativeRing, c: Any, count: int) -> list[Any]:
    """[c, c^q, c^(q^2), ..., c^(q^(count-1))]."""
    out = [c]
    for _ in range(count - 1):
        out.append(ring.frobenius(out[-1]))
    return out


class TauPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CommutativeRing, coeffs: Iterable[Any] = ()) -> None:
        self.ring = ring
        self.coeffs = _trim([ring.coerce(c) for c in coeffs])

    @classmethod
    def _raw(cls, ring: CommutativeRing, coeffs: tuple[Any, ...]) -> TauPoly:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.coeffs = coeffs
        return obj

    @classmethod
    def tau(cls, ring: CommutativeRing, power: int = 1) -> TauPoly:
        zero = ring.zero()
        return cls._raw(ring, tuple([zero] * power + [ring.one()]))

    @classmethod
    def constant(cls, ring: CommutativeRing, c: Any) -> TauPoly:
        return cls(ring, [c])

    @property
    def degree(self) -> int | float:
        """Degree in tau."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def coefficient(self, i: int) -> Any:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero()

    def leading(self) -> Any:
        if not self.coeffs:
            raise ZeroPolynomialError("zero tau-polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _check(self, other: TauPoly) -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError("tau-polynomials over different rings")

    def __add__(self, other: TauPoly) -> TauPoly:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return TauPoly._raw(
            self.ring, _trim([self.coefficient(i) + other.coefficient(i) for i in range(n)])
        )

    def __neg__(self) -> TauPoly:
        return TauPoly._raw(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other: TauPoly) -> TauPoly:
        return self + (-other)

    def __mul__(self, other: TauPoly) -> TauPoly:
        if isinstance(other, TauPoly):
            return tau_mul(self, other)
        c = self.ring.coerce(other)
        return TauPoly._raw(self.ring, _trim([x * c for x in self.coeffs]))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TauPoly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("TauPoly", self.coeffs))

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"TauPoly({self.to_str()!r})"

    def frobenius_twist(self) -> TauPoly:
        """tau * f * tau^(-1): every coefficient raised to the q-th power."""
        return TauPoly._raw(self.ring, tuple(self.ring.frobenius(c) for c in self.coeffs))

    def to_additive_coefficients(self) -> dict[int, Any]:
        """{q^i: c_i} for the nonzero c_i."""
        q = self.ring.q
        return {q**i: c for i, c in enumerate(self.coeffs) if c}

    def evaluate(self, x: Any, frobenius: Callable[[Any], Any] | None = None) -> Any:
        """sum c_i x^(q^i); ``frobenius`` computes x -> x^q when x is not in ``ring``."""
        frob = frobenius or self.ring.frobenius
        total = None
        power = x
        for i, c in enumerate(self.coeffs):
            if i:
                power = frob(power)
            if c:
                term = power * c
                total = term if total is None else total + term
        return self.ring.zero() if total is None else total

    def to_str(self, var: str = "X") -> str:
        """The additive polynomial in ``var``, descending."""
        if not self.coeffs:
            return "0"
        q = self.ring.q
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = var if i == 0 else f"{var}^{q**i}"
            text = self.ring.format(c)
            parts.append(mono if text == "1" else f"{wrap(text)}*{mono}")
        return "+".join(parts)


def tau_mul(f: TauPoly, g: TauPoly) -> TauPoly:
    """f * g, i.e. the composition f(g(X)) of the additive polynomials."""
    f._check(g)
    if not f.coeffs or not g.coeffs:
        return TauPoly._raw(f.ring, ())
    ring = f.ring
    zero = ring.zero()
    out = [zero] * (len(f.coeffs) + len(g.coeffs) - 1)
    # twisted[j] holds g_j^(q^i) for the current i
    twisted = list(g.coeffs)
    for i, a in enumerate(f.coeffs):
        if i:
            twisted = [ring.frobenius(b) if b else b for b in twisted]
        if not a:
            continue
        for j, b in enumerate(twisted):
            if b:
                out[i + j] = out[i + j] + a * b
    return TauPoly._raw(ring, _trim(out))
