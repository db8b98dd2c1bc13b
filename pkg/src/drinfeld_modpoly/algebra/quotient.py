"""Univariate polynomials over a base ring and quotient algebras R[x]/(psi).

The quotient algebras need not be fields: for a composite level the torsion
modulus factors, and inverting a zero divisor raises ``ZeroDivisorError``.
Over R = F_q a quotient by an irreducible pi in T is the finite A-field A/(pi).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any

from src.drinfeld_modpoly.algebra.field import FiniteField
from src.drinfeld_modpoly.algebra.fraction import FractionFieldK, fraction_field
from src.drinfeld_modpoly.algebra.polya import PolyA, PolyRingA, enumerate_monic
from src.drinfeld_modpoly.algebra.rings import CommutativeRing, ring_power, wrap
from src.drinfeld_modpoly.errors import RingMismatchError, ZeroDivisorError, ZeroPolynomialError


def _trim(coeffs: list[Any]) -> tuple[Any, ...]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def format_univariate(base: CommutativeRing, coeffs: Sequence[Any], var: str) -> str:
    """Canonical text of sum coeffs[k] * var^k (descending, zero terms dropped)."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        text = base.format(c)
        if k == 0:
            terms.append(text)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        terms.append(mono if text == "1" else f"{wrap(text)}*{mono}")
    return "+".join(terms) if terms else "0"


# =============================================================================
# Univariate polynomials
# =============================================================================


class UPoly:
    """Dense univariate polynomial over ``ring.base`` in the variable ``ring.var``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: UPolyRing, coeffs: Iterable[Any] = ()) -> None:
        self.ring = ring
        self.coeffs = _trim([ring.base.coerce(c) for c in coeffs])

    @classmethod
    def _raw(cls, ring: UPolyRing, coeffs: tuple[Any, ...]) -> UPoly:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.coeffs = coeffs
        return obj

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    @property
    def lead(self) -> Any:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Any:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.base.zero()

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.base.one()

    def _coerce(self, other: Any) -> UPoly | None:
        if isinstance(other, UPoly):
            if other.ring != self.ring:
                raise RingMismatchError("univariate polynomials over different rings")
            return other
        try:
            return self.ring.coerce(other)
        except RingMismatchError:
            return None

    def __add__(self, other: Any) -> UPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly._raw(self.ring, _trim(out))

    __radd__ = __add__

    def __neg__(self) -> UPoly:
        return UPoly._raw(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Any) -> UPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> UPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> UPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return self.ring.zero()
        zero = self.ring.base.zero()
        out = [zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return UPoly._raw(self.ring, _trim(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UPoly:
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Any) -> tuple[UPoly, UPoly]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        base = self.ring.base
        if not o.coeffs:
            raise ZeroPolynomialError("division by the zero polynomial")
        inv_lead = base.inv(o.coeffs[-1])
        rem = list(self.coeffs)
        db = len(o.coeffs) - 1
        quot = [base.zero()] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = c * inv_lead
            quot[k - db] = c
            for i, b in enumerate(o.coeffs):
                if b:
                    rem[k - db + i] = rem[k - db + i] - c * b
        return UPoly._raw(self.ring, _trim(quot)), UPoly._raw(self.ring, _trim(rem[:db]))

    def __floordiv__(self, other: Any) -> UPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: Any) -> UPoly:
        return divmod(self, other)[1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UPoly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        try:
            o = self.ring.coerce(other)
        except RingMismatchError:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(("UPoly", self.coeffs))

    def __str__(self) -> str:
        return self.ring.format(self)

    def __repr__(self) -> str:
        return f"UPoly({self.ring.format(self)!r})"

    def monic(self) -> UPoly:
        return self * self.ring.base.inv(self.lead)

    def derivative(self) -> UPoly:
        return UPoly._raw(
            self.ring,
            _trim([c * self.ring.base.from_int(i) for i, c in enumerate(self.coeffs)][1:]),
        )

    def evaluate(self, x: Any, ring: CommutativeRing | None = None) -> Any:
        """Horner evaluation; coefficients are coerced into ``ring`` when given."""
        target = ring or self.ring.base
        acc = target.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + target.coerce(c)
        return acc

    def map_coefficients(self, ring: UPolyRing) -> UPoly:
        return UPoly(ring, [ring.base.coerce(c) for c in self.coeffs])


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over a field base."""
    if not a and not b:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a.monic()


def upoly_xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """(g, s, t) with g = s*a + t*b monic, over a field base."""
    ring = a.ring
    r0, r1 = a, b
    s0, s1 = ring.one(), ring.zero()
    t0, t1 = ring.zero(), ring.one()
    while r1:
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    if not r0:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    inv = ring.base.inv(r0.lead)
    return r0 * inv, s0 * inv, t0 * inv


def upoly_lcm(a: UPoly, b: UPoly) -> UPoly:
    return ((a * b) // upoly_gcd(a, b)).monic()


class UPolyRing(CommutativeRing):
    """base[var]."""

    def __init__(self, base: CommutativeRing, var: str = "X") -> None:
        self.base = base
        self.var = var

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UPolyRing) and (self.base, self.var) == (other.base, other.var)

    def __hash__(self) -> int:
        return hash(("UPolyRing", self.base, self.var))

    def __repr__(self) -> str:
        return f"UPolyRing({self.base!r}, {self.var!r})"

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def gen(self) -> UPoly:
        return UPoly._raw(self, (self.base.zero(), self.base.one()))

    def zero(self) -> UPoly:
        return UPoly._raw(self, ())

    def one(self) -> UPoly:
        return UPoly._raw(self, (self.base.one(),))

    def monomial(self, k: int, coeff: Any = None) -> UPoly:
        c = self.base.one() if coeff is None else self.base.coerce(coeff)
        return UPoly(self, [self.base.zero()] * k + [c])

    def coerce(self, value: Any) -> UPoly:
        if isinstance(value, UPoly):
            if value.ring != self:
                raise RingMismatchError("univariate polynomial from a different ring")
            return value
        c = self.base.coerce(value)
        return UPoly._raw(self, (c,) if c else ())

    def is_unit(self, x: UPoly) -> bool:
        return len(x.coeffs) == 1 and self.base.is_unit(x.coeffs[0])

    def inv(self, x: UPoly) -> UPoly:
        if len(x.coeffs) != 1:
            raise ZeroDivisorError("non-constant polynomial is not a unit", value=self.format(x))
        return self.coerce(self.base.inv(x.coeffs[0]))

    def frobenius(self, x: UPoly) -> UPoly:
        q = self.q
        out = [self.base.zero()] * (max(len(x.coeffs) - 1, 0) * q + 1)
        for k, c in enumerate(x.coeffs):
            out[k * q] = self.base.frobenius(c)
        return UPoly(self, out)

    def format(self, x: UPoly) -> str:
        return format_univariate(self.base, x.coeffs, self.var)

    def variables(self) -> dict[str, Any]:
        names = {k: self.coerce(v) for k, v in self.base.variables().items()}
        names[self.var] = self.gen
        return names


# =============================================================================
# Quotient algebras
# =============================================================================


class QElem:
    """Residue class in R[x]/(psi), represented by coefficients of degree < deg psi."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: QuotientAlgebra, coeffs: tuple[Any, ...]) -> None:
        self.alg = alg
        self.coeffs = coeffs

    def _coerce(self, other: Any) -> QElem | None:
        if isinstance(other, QElem):
            if other.alg is not self.alg and other.alg != self.alg:
                raise RingMismatchError("elements of different quotient algebras")
            return other
        try:
            return self.alg.coerce(other)
        except RingMismatchError:
            return None

    def __add__(self, other: Any) -> QElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return QElem(self.alg, _trim(out))

    __radd__ = __add__

    def __neg__(self) -> QElem:
        return QElem(self.alg, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Any) -> QElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> QElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> QElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.alg.multiply(self, o)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QElem:
        return self.alg.power(self, n)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QElem):
            return self.alg == other.alg and self.coeffs == other.coeffs
        try:
            o = self.alg.coerce(other)
        except RingMismatchError:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(("QElem", self.coeffs))

    def __str__(self) -> str:
        return self.alg.format(self)

    def __repr__(self) -> str:
        return f"QElem({self.alg.format(self)!r})"


class QuotientAlgebra(CommutativeRing):
    """R[x]/(psi) for a monic psi over R (R = A, K or F_q)."""

    def __init__(self, modulus: UPoly, var: str = "x") -> None:
        if not modulus.is_monic() or modulus.degree < 1:
            raise ZeroDivisorError("quotient modulus must be monic of positive degree")
        self.base = modulus.ring.base
        self.modulus = modulus
        self.var = var
        self.rank = int(modulus.degree)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QuotientAlgebra) and (self.modulus, self.var) == (
            other.modulus,
            other.var,
        )

    def __hash__(self) -> int:
        return hash(("QuotientAlgebra", self.modulus, self.var))

    def __repr__(self) -> str:
        return f"QuotientAlgebra({self.base!r}, {self.var}: {self.modulus})"

    @property
    def is_field(self) -> bool:  # type: ignore[override]
        return self.rank == 1 and self.base.is_field

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def gen(self) -> QElem:
        return self.reduce([self.base.zero(), self.base.one()])

    def zero(self) -> QElem:
        return QElem(self, ())

    def one(self) -> QElem:
        return QElem(self, (self.base.one(),))

    def reduce(self, coeffs: Sequence[Any]) -> QElem:
        """Reduce a coefficient list (lowest first) modulo the monic modulus."""
        rem = list(coeffs)
        mod = self.modulus.coeffs
        d = self.rank
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if not c:
                continue
            for i in range(d):
                if mod[i]:
                    rem[k - d + i] = rem[k - d + i] - c * mod[i]
            rem[k] = self.base.zero()
        return QElem(self, _trim(rem[:d]))

    def multiply(self, a: QElem, b: QElem) -> QElem:
        if not a.coeffs or not b.coeffs:
            return self.zero()
        if len(b.coeffs) == 1:
            c = b.coeffs[0]
            return QElem(self, _trim([x * c for x in a.coeffs]))
        if len(a.coeffs) == 1:
            c = a.coeffs[0]
            return QElem(self, _trim([x * c for x in b.coeffs]))
        zero = self.base.zero()
        out = [zero] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return self.reduce(out)

    def coerce(self, value: Any) -> QElem:
        if isinstance(value, QElem):
            if value.alg != self:
                raise RingMismatchError("element of a different quotient algebra")
            return value
        if isinstance(value, UPoly):
            return self.reduce([self.base.coerce(c) for c in value.coeffs])
        if isinstance(value, PolyA) and isinstance(self.base, FiniteField):
            # T maps to the class of x
            return self.reduce([value.coefficient(k) for k in range(len(value.coeffs))])
        c = self.base.coerce(value)
        return QElem(self, (c,) if c else ())

    def coordinates(self, x: QElem) -> list[Any]:
        """Coefficients of 1, x, ..., x^{d-1}."""
        zero = self.base.zero()
        return list(x.coeffs) + [zero] * (self.rank - len(x.coeffs))

    def base_part(self, x: QElem) -> Any | None:
        """The base-ring value when x lies in R, else None."""
        if len(x.coeffs) <= 1:
            return x.coeffs[0] if x.coeffs else self.base.zero()
        return None

    def _fraction_base(self) -> FractionFieldK | FiniteField:
        if isinstance(self.base, FractionFieldK | FiniteField):
            return self.base
        if isinstance(self.base, PolyRingA):
            return fraction_field(self.base.field)
        raise RingMismatchError("inversion needs a base ring inside K", base=self.base)

    def inv(self, x: QElem) -> QElem:
        K = self._fraction_base()
        kring = UPolyRing(K, self.var)
        a = UPoly(kring, [K.coerce(c) for c in x.coeffs])
        psi = UPoly(kring, [K.coerce(c) for c in self.modulus.coeffs])
        if not a:
            raise ZeroDivisorError("inverse of zero in a quotient algebra")
        g, s, _ = upoly_xgcd(a, psi)
        if g.degree > 0:
            raise ZeroDivisorError(
                "element shares a factor with the modulus",
                element=self.format(x),
                common_factor=kring.format(g),
            )
        coeffs = list(s.coeffs)
        if isinstance(self.base, PolyRingA):
            if any(not c.is_polynomial() for c in coeffs):
                raise ZeroDivisorError(
                    "inverse exists over K but not over A", element=self.format(x)
                )
            return QElem(self, _trim([c.num for c in coeffs]))
        return QElem(self, _trim(coeffs))

    def is_unit(self, x: QElem) -> bool:
        try:
            self.inv(x)
        except ZeroDivisorError:
            return False
        return True

    def frobenius(self, x: QElem) -> QElem:
        result = self.one()
        base, n = x, self.q
        while n:
            if n & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            n >>= 1
        return result

    def power(self, x: QElem, n: int) -> QElem:
        return ring_power(self, x, n)

    def format(self, x: QElem) -> str:
        return format_univariate(self.base, x.coeffs, self.var)

    def variables(self) -> dict[str, Any]:
        names = {k: self.coerce(v) for k, v in self.base.variables().items()}
        names[self.var] = self.gen
        return names


def residue_field(field: FiniteField, degree: int) -> QuotientAlgebra:
    """A/(pi) for the first monic irreducible pi of the given degree, written in T."""
    pi = next(f for f in enumerate_monic(field, degree) if f.is_irreducible())
    modulus = UPoly(UPolyRing(field, "T"), [pi.coefficient(k) for k in range(degree + 1)])
    return QuotientAlgebra(modulus, "T")
