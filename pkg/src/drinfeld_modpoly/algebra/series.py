"""Truncated Laurent series on the exponent grid (1/D)·Z.

A ``FracLaurentSeries`` stores exponent numerators: the term ``c * t^(n/D)``
is ``terms[n] = c``. Everything at or above ``prec / D`` is unknown; exact
series (Laurent polynomials) have ``prec = math.inf``. Every operation
returns the precision it can guarantee from the precisions of its inputs,
so recomputing at a higher precision only ever extends a result.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from fractions import Fraction
from typing import Any

from src.drinfeld_modpoly.algebra.rings import CommutativeRing, wrap
from src.drinfeld_modpoly.errors import (
    CompositionError,
    PrecisionError,
    RingMismatchError,
    ZeroDivisorError,
)

INF = math.inf

Precision = int | float


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class FracLaurentSeries:
    """sum terms[n] * t^(n/denom) + O(t^(prec/denom))."""

    __slots__ = ("ring", "denom", "terms", "prec", "lead_cancelled")

    def __init__(
        self,
        ring: CommutativeRing,
        terms: Mapping[int, Any] | None = None,
        prec: Precision = INF,
        denom: int = 1,
        lead_cancelled: bool = False,
    ) -> None:
        if denom < 1:
            raise RingMismatchError(f"grid denominator must be positive, got {denom}")
        self.ring = ring
        self.denom = denom
        self.prec = prec
        self.terms = {n: c for n, c in (terms or {}).items() if c and n < prec}
        self.lead_cancelled = lead_cancelled

    @classmethod
    def _raw(
        cls, ring: CommutativeRing, terms: dict[int, Any], prec: Precision, denom: int
    ) -> FracLaurentSeries:
        obj = cls.__new__(cls)
        obj.ring, obj.terms, obj.prec, obj.denom = ring, terms, prec, denom
        obj.lead_cancelled = False
        return obj

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def zero(cls, ring: CommutativeRing, prec: Precision = INF, denom: int = 1) -> FracLaurentSeries:
        return cls._raw(ring, {}, prec, denom)

    @classmethod
    def one(cls, ring: CommutativeRing, prec: Precision = INF, denom: int = 1) -> FracLaurentSeries:
        return cls._raw(ring, {0: ring.one()} if prec > 0 else {}, prec, denom)

    @classmethod
    def monomial(
        cls,
        ring: CommutativeRing,
        n: int,
        coeff: Any = None,
        prec: Precision = INF,
        denom: int = 1,
    ) -> FracLaurentSeries:
        c = ring.one() if coeff is None else ring.coerce(coeff)
        return cls(ring, {n: c}, prec, denom)

    # -------------------------------------------------------------------------
    # Structure
    # -------------------------------------------------------------------------

    @property
    def order(self) -> Precision:
        """Numerator of the lowest known nonzero exponent (``prec`` if none)."""
        return min(self.terms) if self.terms else self.prec

    @property
    def is_exact(self) -> bool:
        return self.prec == INF

    @property
    def relative_precision(self) -> Precision:
        return self.prec - self.order

    def leading(self) -> tuple[int, Any]:
        if not self.terms:
            raise PrecisionError("series is zero to the known precision", prec=self.prec)
        n = min(self.terms)
        return n, self.terms[n]

    def coefficient(self, n: int) -> Any:
        if n >= self.prec:
            raise PrecisionError(
                "coefficient beyond the known precision", exponent=n, prec=self.prec
            )
        return self.terms.get(n, self.ring.zero())

    def exponent(self, n: int) -> Fraction:
        return Fraction(n, self.denom)

    def items(self) -> list[tuple[int, Any]]:
        return sorted(self.terms.items())

    def _check(self, other: FracLaurentSeries) -> None:
        if self.denom != other.denom:
            raise RingMismatchError(
                "series on different exponent grids", left=self.denom, right=other.denom
            )
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError(
                "series over different coefficient rings", left=self.ring, right=other.ring
            )

    def _lift(self, other: Any) -> FracLaurentSeries | None:
        if isinstance(other, FracLaurentSeries):
            self._check(other)
            return other
        try:
            c = self.ring.coerce(other)
        except (RingMismatchError, TypeError):
            return None
        return FracLaurentSeries._raw(self.ring, {0: c} if c else {}, INF, self.denom)

    # -------------------------------------------------------------------------
    # Operators
    # -------------------------------------------------------------------------

    def __add__(self, other: Any) -> FracLaurentSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return series_add(self, o)

    __radd__ = __add__

    def __neg__(self) -> FracLaurentSeries:
        return FracLaurentSeries._raw(
            self.ring, {n: -c for n, c in self.terms.items()}, self.prec, self.denom
        )

    def __sub__(self, other: Any) -> FracLaurentSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return series_add(self, -o)

    def __rsub__(self, other: Any) -> FracLaurentSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return series_add(o, -self)

    def __mul__(self, other: Any) -> FracLaurentSeries:
        if isinstance(other, FracLaurentSeries):
            return series_mul(self, other)
        try:
            c = self.ring.coerce(other)
        except (RingMismatchError, TypeError):
            return NotImplemented
        return series_scale(self, c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> FracLaurentSeries:
        return series_pow(self, n)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FracLaurentSeries):
            return NotImplemented
        return (self.denom, self.prec, self.terms) == (other.denom, other.prec, other.terms)

    def __hash__(self) -> int:
        return hash((self.denom, self.prec, frozenset(self.terms)))

    def __repr__(self) -> str:
        return f"FracLaurentSeries({format_series(self)!r})"

    def __str__(self) -> str:
        return format_series(self)

    def agrees_with(self, other: FracLaurentSeries, upto: Precision | None = None) -> bool:
        """Coefficient-wise agreement below min(precisions, upto)."""
        self._check(other)
        bound = min(self.prec, other.prec, INF if upto is None else upto)
        keys = {n for n in self.terms if n < bound} | {n for n in other.terms if n < bound}
        zero = self.ring.zero()
        return all(self.terms.get(n, zero) == other.terms.get(n, zero) for n in keys)

    def first_difference(self, other: FracLaurentSeries) -> int | None:
        self._check(other)
        bound = min(self.prec, other.prec)
        zero = self.ring.zero()
        keys = sorted({n for n in self.terms if n < bound} | {n for n in other.terms if n < bound})
        for n in keys:
            if self.terms.get(n, zero) != other.terms.get(n, zero):
                return n
        return None


# =============================================================================
# Arithmetic
# =============================================================================


def series_add(a: FracLaurentSeries, b: FracLaurentSeries) -> FracLaurentSeries:
    a._check(b)
    prec = min(a.prec, b.prec)
    out = {n: c for n, c in a.terms.items() if n < prec}
    for n, c in b.terms.items():
        if n >= prec:
            continue
        prev = out.get(n)
        if prev is None:
            out[n] = c
        else:
            s = prev + c
            if s:
                out[n] = s
            else:
                del out[n]
    return FracLaurentSeries._raw(a.ring, out, prec, a.denom)


def series_sub(a: FracLaurentSeries, b: FracLaurentSeries) -> FracLaurentSeries:
    return series_add(a, -b)


def series_neg(a: FracLaurentSeries) -> FracLaurentSeries:
    return -a


def series_scale(a: FracLaurentSeries, c: Any) -> FracLaurentSeries:
    """c * a for a ring element c."""
    out = {}
    for n, x in a.terms.items():
        y = x * c
        if y:
            out[n] = y
    return FracLaurentSeries._raw(a.ring, out, a.prec, a.denom)


def series_mul(a: FracLaurentSeries, b: FracLaurentSeries) -> FracLaurentSeries:
    """Product with precision min(prec(a) + ord(b), prec(b) + ord(a)).

    When both leading coefficients are nonzero but multiply to zero (a zero
    divisor pair), the result has ``lead_cancelled`` set.
    """
    a._check(b)
    oa, ob = a.order, b.order
    prec = min(a.prec + ob, b.prec + oa)
    if not a.terms or not b.terms:
        return FracLaurentSeries._raw(a.ring, {}, prec, a.denom)
    b_items = sorted(b.terms.items())
    out: dict[int, Any] = {}
    for i, ci in a.terms.items():
        if i + ob >= prec:
            continue
        for j, cj in b_items:
            n = i + j
            if n >= prec:
                break
            p = ci * cj
            prev = out.get(n)
            out[n] = p if prev is None else prev + p
    result = FracLaurentSeries._raw(a.ring, {n: c for n, c in out.items() if c}, prec, a.denom)
    if oa + ob < prec and not (a.terms[oa] * b.terms[ob]):
        result.lead_cancelled = True
    return result


def series_inverse(a: FracLaurentSeries, precision: Precision | None = None) -> FracLaurentSeries:
    """1/a; the leading coefficient must be a unit.

    The absolute precision of the result is prec(a) - 2*ord(a); exact inputs
    need an explicit target ``precision``.
    """
    if not a.terms:
        raise ZeroDivisorError("inverse of a series that is zero to its precision")
    o, c = a.leading()
    cinv = a.ring.inv(c)
    target = a.prec - 2 * o
    if precision is not None:
        target = min(target, precision)
    if target == INF:
        raise PrecisionError("inverting an exact series needs a target precision")
    target = int(target)
    count = target + o
    zero = a.ring.zero()
    alpha = [(i - o, ci) for i, ci in sorted(a.terms.items()) if i > o]
    beta: list[Any] = []
    for n in range(max(count, 0)):
        if n == 0:
            beta.append(cinv)
            continue
        acc = None
        for off, ai in alpha:
            if off > n:
                break
            bj = beta[n - off]
            if bj:
                p = ai * bj
                acc = p if acc is None else acc + p
        beta.append(-(acc * cinv) if acc else zero)
    terms = {n - o: b for n, b in enumerate(beta) if b}
    return FracLaurentSeries._raw(a.ring, terms, target, a.denom)


def series_truncate(a: FracLaurentSeries, prec: Precision) -> FracLaurentSeries:
    if prec >= a.prec:
        return a
    return FracLaurentSeries._raw(
        a.ring, {n: c for n, c in a.terms.items() if n < prec}, prec, a.denom
    )


def series_shift(a: FracLaurentSeries, k: int) -> FracLaurentSeries:
    """a * t^(k/D)."""
    return FracLaurentSeries._raw(
        a.ring, {n + k: c for n, c in a.terms.items()}, a.prec + k, a.denom
    )


def series_regrid(a: FracLaurentSeries, denom: int) -> FracLaurentSeries:
    """Re-express a on the grid (1/denom)·Z."""
    if denom == a.denom:
        return a
    if denom % a.denom == 0:
        f = denom // a.denom
        return FracLaurentSeries._raw(
            a.ring, {n * f: c for n, c in a.terms.items()}, a.prec * f, denom
        )
    if a.denom % denom == 0:
        f = a.denom // denom
        if any(n % f for n in a.terms):
            raise RingMismatchError(
                "series has exponents off the coarser grid", old=a.denom, new=denom
            )
        prec = a.prec if a.prec == INF else _ceil_div(int(a.prec), f)
        return FracLaurentSeries._raw(
            a.ring, {n // f: c for n, c in a.terms.items()}, prec, denom
        )
    raise RingMismatchError("incompatible exponent grids", old=a.denom, new=denom)


def series_frobenius(a: FracLaurentSeries) -> FracLaurentSeries:
    """a^q = sum c^q t^(q n / D), exact in characteristic p."""
    q = a.ring.q
    frob = a.ring.frobenius
    return FracLaurentSeries._raw(
        a.ring, {n * q: frob(c) for n, c in a.terms.items()}, a.prec * q, a.denom
    )


def series_pow(a: FracLaurentSeries, n: int, precision: Precision | None = None) -> FracLaurentSeries:
    """a**n; negative n inverts first (``precision`` is passed to the inversion)."""
    if n < 0:
        return series_pow(series_inverse(a, precision), -n)
    q = a.ring.q
    result = FracLaurentSeries.one(a.ring, denom=a.denom)
    image = a
    while n:
        n, digit = divmod(n, q)
        if digit:
            factor = image
            for _ in range(digit - 1):
                factor = series_mul(factor, image)
            result = series_mul(result, factor)
        if n:
            image = series_frobenius(image)
    return result


def series_change_ring(a: FracLaurentSeries, ring: CommutativeRing) -> FracLaurentSeries:
    """Coerce every coefficient into ``ring``."""
    if ring == a.ring:
        return a
    return FracLaurentSeries(ring, {n: ring.coerce(c) for n, c in a.terms.items()}, a.prec, a.denom)


def series_map(a: FracLaurentSeries, fn: Any, ring: CommutativeRing) -> FracLaurentSeries:
    return FracLaurentSeries(ring, {n: fn(c) for n, c in a.terms.items()}, a.prec, a.denom)


def series_leading(a: FracLaurentSeries) -> tuple[Fraction, Any]:
    n, c = a.leading()
    return Fraction(n, a.denom), c


def series_coefficient(a: FracLaurentSeries, exponent: Fraction | int) -> Any:
    e = Fraction(exponent) * a.denom
    if e.denominator != 1:
        return a.ring.zero()
    return a.coefficient(int(e))


def laurent_polynomial(
    ring: CommutativeRing, terms: Iterable[tuple[int, Any]], denom: int = 1
) -> FracLaurentSeries:
    """Exact series from (exponent numerator, coefficient) pairs; repeated exponents add."""
    out: dict[int, Any] = {}
    for n, c in terms:
        c = ring.coerce(c)
        out[n] = out[n] + c if n in out else c
    return FracLaurentSeries(ring, out, INF, denom)


# =============================================================================
# Rational powers
# =============================================================================


def binomial_mod_p(x: Fraction, n: int, p: int) -> int:
    """binom(x, n) mod p for a p-integral rational x."""
    if x.denominator % p == 0:
        raise CompositionError("rational exponent is not p-integral", exponent=x, p=p)
    b = Fraction(1)
    for k in range(n):
        b = b * (x - k) / (k + 1)
    if b.denominator % p == 0:
        raise CompositionError("binomial coefficient is not p-integral", exponent=x, n=n)
    return b.numerator * pow(b.denominator, -1, p) % p


def series_binomial_power(
    a: FracLaurentSeries, x: Fraction | int, precision: Precision | None = None
) -> FracLaurentSeries:
    """(1 + B)^x for a series 1 + B with ord B > 0 and x a p-integral rational.

    The binomial coefficients are reduced mod p; the result keeps the
    absolute precision of the input (or ``precision`` for exact inputs).
    """
    x = Fraction(x)
    ring = a.ring
    target = a.prec if precision is None else min(a.prec, precision)
    if target == INF:
        raise PrecisionError("rational power of an exact series needs a target precision")
    target = int(target)
    one = ring.one()
    if a.terms.get(0) != one or any(n < 0 for n in a.terms):
        raise CompositionError("binomial power needs a series of the form 1 + O(t)")
    delta = series_truncate(a - one, target)
    if not delta.terms:
        return FracLaurentSeries.one(ring, target, a.denom)
    step = delta.order
    top = _ceil_div(target, int(step)) - 1
    p = ring.characteristic
    coeffs = [binomial_mod_p(x, k, p) for k in range(top + 1)]
    result = FracLaurentSeries.zero(ring, INF, a.denom)
    for k in range(top, -1, -1):
        result = series_truncate(series_mul(result, delta), target)
        if coeffs[k]:
            result = result + ring.from_int(coeffs[k])
    return series_truncate(result, target)


class RootScaledSeries:
    """(-1)^exponent * series, with (-1)^exponent a fixed formal root.

    The sign folds into the series as soon as the exponent is an integer; in
    characteristic 2 it is always trivial. Exponents are kept modulo 2.
    """

    __slots__ = ("exponent", "series")

    def __init__(self, exponent: Fraction | int, series: FracLaurentSeries) -> None:
        e = Fraction(exponent)
        if series.ring.characteristic == 2:
            e = Fraction(0)
        elif e.denominator == 1:
            if e.numerator % 2:
                series = -series
            e = Fraction(0)
        else:
            e = e - 2 * math.floor(e / 2)
        self.exponent = e
        self.series = series

    @property
    def ring(self) -> CommutativeRing:
        return self.series.ring

    @property
    def order(self) -> Precision:
        return self.series.order

    @property
    def denom(self) -> int:
        return self.series.denom

    @property
    def prec(self) -> Precision:
        return self.series.prec

    def is_plain(self) -> bool:
        return self.exponent == 0

    def to_series(self) -> FracLaurentSeries:
        if self.exponent:
            raise CompositionError("series still carries a root of -1", exponent=self.exponent)
        return self.series

    def __mul__(self, other: RootScaledSeries | FracLaurentSeries) -> RootScaledSeries:
        if isinstance(other, FracLaurentSeries):
            return RootScaledSeries(self.exponent, series_mul(self.series, other))
        return RootScaledSeries(self.exponent + other.exponent, series_mul(self.series, other.series))

    def __pow__(self, n: int) -> RootScaledSeries:
        return RootScaledSeries(self.exponent * n, series_pow(self.series, n))

    def __repr__(self) -> str:
        if not self.exponent:
            return f"RootScaledSeries({format_series(self.series)!r})"
        return f"RootScaledSeries((-1)^({self.exponent}) * {format_series(self.series)!r})"


# =============================================================================
# Substitution
# =============================================================================


def series_compose_scale(
    a: FracLaurentSeries, sub: FracLaurentSeries, precision: Precision | None = None
) -> FracLaurentSeries:
    """a(sub(t)) for ``a`` in s on the grid 1/D and ``sub`` an integral-grid series in t.

    ``sub`` must have positive order m; exponents of ``a`` off the integer grid
    need the leading coefficient of ``sub`` to be 1 so that
    sub^(rho/D) = t^(m rho / D) (1 + B)^(rho / D) is determined. The result is
    on the grid 1/D with precision min(m prec(a), m ord(a) + D relprec(sub)).
    """
    if a.ring is not sub.ring and a.ring != sub.ring:
        raise RingMismatchError("composition over different coefficient rings")
    if sub.denom != 1:
        raise CompositionError("substituted series must be on the integer grid", denom=sub.denom)
    if not sub.terms:
        raise CompositionError("substituted series is zero to its precision")
    m, lead = sub.leading()
    if m <= 0:
        raise CompositionError("substituted series must have positive order", order=m)
    D = a.denom
    ring = a.ring
    target: Precision = m * a.prec
    if a.terms:
        target = min(target, m * a.order + D * sub.relative_precision)
    if precision is not None:
        target = min(target, precision)
    if target == INF:
        raise PrecisionError("exact composition needs a target precision")
    target = int(target)
    relevant = {n: c for n, c in a.terms.items() if m * n < target}
    if not relevant:
        return FracLaurentSeries.zero(ring, target, D)

    groups: dict[int, dict[int, Any]] = {}
    for n, c in relevant.items():
        rho, k = n % D, n // D
        groups.setdefault(rho, {})[k] = c
    if any(rho for rho in groups) and lead != ring.one():
        raise CompositionError("fractional exponents need a substitution with leading coefficient 1")

    unit = None
    total = FracLaurentSeries.zero(ring, target, D)
    for rho in sorted(groups):
        coeffs = groups[rho]
        kmin, kmax = min(coeffs), max(coeffs)
        # t-precision this residue class must reach
        need_t = _ceil_div(target - m * rho, D)
        rel = need_t - m * kmin
        sub_t = series_truncate(sub, m + rel)
        h = FracLaurentSeries.zero(ring, INF)
        for k in range(kmax, kmin - 1, -1):
            h = series_truncate(series_mul(h, sub_t), rel)
            if k in coeffs:
                h = h + coeffs[k]
        if kmin >= 0:
            inner = series_mul(h, series_pow(sub_t, kmin))
        else:
            inner = series_mul(h, series_pow(series_inverse(sub_t, need_t + m), -kmin))
        if rho:
            if unit is None:
                unit = series_shift(series_truncate(sub, m + rel), -m)
            inner = series_mul(inner, series_binomial_power(unit, Fraction(rho, D), rel))
        inner = series_truncate(inner, need_t)
        piece = series_shift(series_regrid(inner, D), m * rho)
        total = series_add(total, piece)
    return series_truncate(total, target)


def compose_reciprocal(
    a: FracLaurentSeries, L: FracLaurentSeries, precision: Precision | None = None
) -> FracLaurentSeries:
    """a(1/L) for an integral-grid series a and an exact Laurent polynomial L.

    L must have order -m < 0 with leading coefficient 1, so 1/L = s^m (1 + ...).
    With P = prec(a) the result is H / L^(P-1) where H = sum a_i L^(P-1-i) is
    exact; its precision is m P.
    """
    if a.denom != 1 or L.denom != 1:
        raise CompositionError("reciprocal substitution works on the integer grid")
    if not L.is_exact:
        raise CompositionError("reciprocal substitution needs an exact Laurent polynomial")
    ring = L.ring
    if a.ring != ring:
        a = series_change_ring(a, ring)
    m_neg, lead = L.leading()
    if m_neg >= 0 or lead != ring.one():
        raise CompositionError(
            "reciprocal substitution needs negative order and leading coefficient 1", order=m_neg
        )
    m = -m_neg
    P = a.prec
    if precision is not None:
        P = min(P, _ceil_div(int(precision), m) if precision != INF else P)
    if P == INF:
        raise PrecisionError("exact reciprocal substitution needs a target precision")
    P = int(P)
    if not a.terms or a.order >= P:
        return FracLaurentSeries.zero(ring, m * P)
    o = int(a.order)
    h = FracLaurentSeries.zero(ring, INF)
    for i in range(o, P):
        h = series_mul(h, L)
        c = a.terms.get(i)
        if c:
            h = h + c
    target = m * P + m * (P - 1 - o)
    denom_inv = series_inverse(series_pow(L, P - 1), target)
    result = series_truncate(series_mul(h, denom_inv), m * P)
    if precision is not None:
        result = series_truncate(result, precision)
    return result


# =============================================================================
# Text
# =============================================================================


def format_series(a: FracLaurentSeries, var: str = "t") -> str:
    parts = []
    for n, c in a.items():
        coeff = a.ring.format(c)
        e = Fraction(n, a.denom)
        if e == 0:
            parts.append(coeff)
            continue
        exp = f"{var}^({e})" if e.denominator != 1 or e < 0 else (var if e == 1 else f"{var}^{e}")
        parts.append(exp if coeff == "1" else f"{wrap(coeff)}*{exp}")
    if a.prec != INF:
        e = Fraction(int(a.prec), a.denom)
        parts.append(f"O({var}^({e}))" if e.denominator != 1 or e < 0 else f"O({var}^{e})")
    return " + ".join(parts) if parts else "0"
