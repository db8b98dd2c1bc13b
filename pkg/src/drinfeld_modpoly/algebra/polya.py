"""The polynomial ring A = F_q[T].

``PolyA`` stores its coefficients as a tuple of field values (see
``FiniteField``), lowest degree first, without trailing zeros. The zero
polynomial has the empty tuple and degree ``DEGREE_OF_ZERO``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Sequence
from functools import cache
from typing import Any

from src.drinfeld_modpoly.algebra.field import FieldElement, FiniteField
from src.drinfeld_modpoly.algebra.rings import CommutativeRing, wrap
from src.drinfeld_modpoly.errors import RingMismatchError, ZeroDivisorError, ZeroPolynomialError

DEGREE_OF_ZERO = float("-inf")

# Both factors need at least this many coefficients before packing pays off.
_KRONECKER_THRESHOLD = 8


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


# =============================================================================
# Coefficient kernels
# =============================================================================


def _add_coeffs(field: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    add = field.add_values
    for i, c in enumerate(b):
        if c:
            out[i] = add(out[i], c)
    return _trim(out)


def _neg_coeffs(field: FiniteField, a: Sequence[int]) -> tuple[int, ...]:
    return tuple(field.neg_value(c) for c in a)


def _kronecker_mul(p: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Multiply over a prime field by packing coefficients into one integer."""
    bound = (p - 1) * (p - 1) * min(len(a), len(b))
    width = max(1, (bound.bit_length() + 3) // 4)
    fmt = f"0{width}x"
    ia = int("".join(format(c, fmt) for c in reversed(a)), 16)
    ib = int("".join(format(c, fmt) for c in reversed(b)), 16)
    text = format(ia * ib, "x")
    size = len(a) + len(b) - 1
    text = text.rjust(size * width, "0")
    out = [0] * size
    for i in range(size):
        end = len(text) - i * width
        out[i] = int(text[end - width : end], 16) % p
    return out


def _mul_coeffs(field: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    if field.is_prime_field:
        p = field.p
        if len(a) >= _KRONECKER_THRESHOLD and len(b) >= _KRONECKER_THRESHOLD:
            return _trim(_kronecker_mul(p, a, b))
        acc = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    acc[i + j] += ai * bj
        return _trim([c % p for c in acc])
    add, mul = field.add_values, field.mul_values
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add(out[i + j], mul(ai, bj))
    return _trim(out)


def _scale_coeffs(field: FiniteField, a: Sequence[int], c: int) -> tuple[int, ...]:
    if c == 0:
        return ()
    if c == 1:
        return tuple(a)
    mul = field.mul_values
    return tuple(mul(x, c) for x in a)


def _divmod_coeffs(
    field: FiniteField, a: Sequence[int], b: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroPolynomialError("division by the zero polynomial")
    if len(a) < len(b):
        return (), tuple(a)
    rem = list(a)
    db = len(b) - 1
    inv_lead = field.inv_value(b[-1])
    quot = [0] * (len(a) - db)
    sub, mul = field.sub_values, field.mul_values
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        c = mul(c, inv_lead)
        quot[k - db] = c
        for i, bi in enumerate(b):
            if bi:
                rem[k - db + i] = sub(rem[k - db + i], mul(c, bi))
    return _trim(quot), _trim(rem[:db])


# =============================================================================
# PolyA
# =============================================================================


class PolyA:
    """An element of F_q[T]."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable[int] = ()) -> None:
        self.field = field
        self.coeffs = _trim(list(coeffs))

    @classmethod
    def _raw(cls, field: FiniteField, coeffs: tuple[int, ...]) -> PolyA:
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    @classmethod
    def constant(cls, field: FiniteField, value: int) -> PolyA:
        return cls._raw(field, (value,) if value else ())

    @classmethod
    def monomial(cls, field: FiniteField, degree: int, value: int = 1) -> PolyA:
        if not value:
            return cls._raw(field, ())
        return cls._raw(field, (0,) * degree + (value,))

    # -------------------------------------------------------------------------
    # Basic structure
    # -------------------------------------------------------------------------

    @property
    def ring(self) -> PolyRingA:
        return poly_ring(self.field)

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else DEGREE_OF_ZERO

    def norm(self) -> int:
        """|f| = q^deg f; undefined on zero."""
        if not self.coeffs:
            raise ZeroPolynomialError("|0| is undefined")
        return self.field.q ** (len(self.coeffs) - 1)

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> FieldElement:
        return FieldElement(self.field, self.coeffs[k] if 0 <= k < len(self.coeffs) else 0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def monic(self) -> PolyA:
        if not self.coeffs:
            raise ZeroPolynomialError("cannot normalize the zero polynomial")
        if self.coeffs[-1] == 1:
            return self
        return PolyA._raw(
            self.field, _scale_coeffs(self.field, self.coeffs, self.field.inv_value(self.coeffs[-1]))
        )

    # -------------------------------------------------------------------------
    # Operators
    # -------------------------------------------------------------------------

    def _coerce(self, other: Any) -> PolyA | None:
        if isinstance(other, PolyA):
            if other.field is not self.field and other.field != self.field:
                raise RingMismatchError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return PolyA.constant(self.field, self.field.value_of_int(other))
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise RingMismatchError("constant from a different field")
            return PolyA.constant(self.field, other.value)
        return None

    def __add__(self, other: Any) -> PolyA:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyA._raw(self.field, _add_coeffs(self.field, self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self) -> PolyA:
        return PolyA._raw(self.field, _neg_coeffs(self.field, self.coeffs))

    def __sub__(self, other: Any) -> PolyA:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyA._raw(
            self.field, _add_coeffs(self.field, self.coeffs, _neg_coeffs(self.field, o.coeffs))
        )

    def __rsub__(self, other: Any) -> PolyA:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> PolyA:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.coeffs) == 1:
            return PolyA._raw(self.field, _scale_coeffs(self.field, self.coeffs, o.coeffs[0]))
        if len(self.coeffs) == 1:
            return PolyA._raw(self.field, _scale_coeffs(self.field, o.coeffs, self.coeffs[0]))
        return PolyA._raw(self.field, _mul_coeffs(self.field, self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> PolyA:
        if n < 0:
            raise ZeroDivisorError("negative power of a polynomial")
        return self.ring.power(self, n)

    def __divmod__(self, other: Any) -> tuple[PolyA, PolyA]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        quot, rem = _divmod_coeffs(self.field, self.coeffs, o.coeffs)
        return PolyA._raw(self.field, quot), PolyA._raw(self.field, rem)

    def __floordiv__(self, other: Any) -> PolyA:
        return divmod(self, other)[0]

    def __mod__(self, other: Any) -> PolyA:
        return divmod(self, other)[1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyA):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int | FieldElement):
            o = self._coerce(other)
            return o is not None and self.coeffs == o.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(("PolyA", self.coeffs))

    def __lt__(self, other: PolyA) -> bool:
        """Order by degree, then by coefficients from the top (deterministic listings)."""
        return (len(self.coeffs), self.coeffs[::-1]) < (len(other.coeffs), other.coeffs[::-1])

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"PolyA({self.to_str()!r})"

    def to_str(self, var: str = "T") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            coeff = self.field.format_value(c)
            if k == 0:
                terms.append(coeff)
                continue
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{wrap(coeff)}*{mono}")
        return "+".join(terms)

    # -------------------------------------------------------------------------
    # Polynomial operations
    # -------------------------------------------------------------------------

    def derivative(self) -> PolyA:
        p = self.field.p
        return PolyA(
            self.field,
            [self.field.mul_values(c, i % p) if i % p else 0 for i, c in enumerate(self.coeffs)][1:],
        )

    def frobenius(self) -> PolyA:
        """f^q = sum c_i T^{iq} (coefficients are fixed by the q-power map)."""
        q = self.field.q
        if len(self.coeffs) <= 1:
            return self
        out = [0] * ((len(self.coeffs) - 1) * q + 1)
        for i, c in enumerate(self.coeffs):
            out[i * q] = c
        return PolyA._raw(self.field, tuple(out))

    def compose(self, g: PolyA) -> PolyA:
        result = PolyA._raw(self.field, ())
        for c in reversed(self.coeffs):
            result = result * g + PolyA.constant(self.field, c)
        return result

    def eval(self, x: FieldElement | int) -> FieldElement:
        v = x.value if isinstance(x, FieldElement) else self.field.value_of_int(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.field.add_values(self.field.mul_values(acc, v), c)
        return FieldElement(self.field, acc)

    def evaluate(self, ring: CommutativeRing, x: Any) -> Any:
        """Horner evaluation at an element of any ring containing F_q."""
        acc = ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + ring.coerce(FieldElement(self.field, c))
        return acc

    def powmod(self, n: int, modulus: PolyA) -> PolyA:
        result = PolyA.constant(self.field, 1) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def pth_root(self) -> PolyA:
        """g with g^p = self; requires self to be a polynomial in T^p."""
        p, q = self.field.p, self.field.q
        out = []
        for i, c in enumerate(self.coeffs):
            if i % p:
                if c:
                    raise ValueError("not a p-th power")
                continue
            out.append(self.field.pow_value(c, q // p))
        return PolyA(self.field, out)

    def radical(self) -> PolyA:
        """Monic product of the distinct irreducible factors."""
        f = self.monic()
        if f.is_constant():
            return PolyA.constant(self.field, 1)
        d = f.derivative()
        if not d:
            return f.pth_root().radical()
        w = f // poly_gcd(f, d)
        y = f // w
        while True:
            z = poly_gcd(y, w)
            if z.is_constant():
                break
            y = y // z
        if y.is_constant():
            return w
        return w * y.radical()

    def squarefree_part(self) -> PolyA:
        return self.radical()

    def distinct_degree_degrees(self) -> list[int]:
        """Degrees of the distinct monic irreducible factors, ascending."""
        h = self.radical()
        x = PolyA.monomial(self.field, 1)
        degrees: list[int] = []
        power = x
        i = 0
        while not h.is_constant():
            i += 1
            if 2 * i > h.degree:
                degrees.append(int(h.degree))
                break
            power = power.powmod(self.field.q, h)
            g = poly_gcd(power - x, h)
            if not g.is_constant():
                degrees.extend([i] * (int(g.degree) // i))
                h = h // g
                power = power % h
        return sorted(degrees)

    def is_irreducible(self) -> bool:
        """Rabin's test: f | X^{q^d} - X and gcd(f, X^{q^{d/l}} - X) = 1 for primes l | d."""
        if not self.coeffs or self.is_constant():
            return False
        f = self.monic()
        d = int(f.degree)
        if d == 1:
            return True
        x = PolyA.monomial(self.field, 1)
        primes = [ell for ell in range(2, d + 1) if d % ell == 0 and all(ell % m for m in range(2, ell))]
        frob_powers = {0: x % f}
        power = x
        for k in range(1, d + 1):
            power = power.powmod(self.field.q, f)
            frob_powers[k] = power
        if frob_powers[d] != x % f:
            return False
        return all(poly_gcd(frob_powers[d // ell] - x, f).is_constant() for ell in primes)

    def prime_factors(self) -> list[tuple[PolyA, int]]:
        """Monic factorization by trial division over monic irreducibles (small inputs only)."""
        f = self.monic()
        factors: list[tuple[PolyA, int]] = []
        d = 1
        while not f.is_constant():
            if 2 * d > f.degree:
                factors.append((f, 1))
                break
            for cand in enumerate_monic(self.field, d):
                if f.degree < d:
                    break
                if not cand.is_irreducible():
                    continue
                mult = 0
                while True:
                    quot, rem = divmod(f, cand)
                    if rem:
                        break
                    f, mult = quot, mult + 1
                if mult:
                    factors.append((cand, mult))
            d += 1
        merged: dict[PolyA, int] = {}
        for prime, mult in factors:
            merged[prime] = merged.get(prime, 0) + mult
        return sorted(merged.items(), key=lambda item: item[0].sort_key())

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.coeffs), self.coeffs[::-1])


# =============================================================================
# Module-level helpers
# =============================================================================


def poly_divmod(a: PolyA, b: PolyA) -> tuple[PolyA, PolyA]:
    """a = q*b + r with deg r < deg b; raises ``ZeroPolynomialError`` if b = 0."""
    return divmod(a, b)


def poly_gcd(a: PolyA, b: PolyA) -> PolyA:
    """Monic gcd; raises ``ZeroPolynomialError`` when both inputs are zero."""
    if not a and not b:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: PolyA, b: PolyA) -> tuple[PolyA, PolyA, PolyA]:
    """(g, s, t) with g = s*a + t*b monic."""
    if not a and not b:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    field = a.field
    r0, r1 = a, b
    s0, s1 = PolyA.constant(field, 1), PolyA.constant(field, 0)
    t0, t1 = PolyA.constant(field, 0), PolyA.constant(field, 1)
    while r1:
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    inv = FieldElement(field, field.inv_value(r0.lead))
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(a: PolyA, b: PolyA) -> PolyA:
    return (a * b // poly_gcd(a, b)).monic()


def enumerate_monic(field: FiniteField, degree: int) -> Iterator[PolyA]:
    """All monic polynomials of the given degree in increasing ``sort_key`` order."""
    for lower in itertools.product(range(field.q), repeat=degree):
        yield PolyA(field, tuple(reversed(lower)) + (1,))


def enumerate_below(field: FiniteField, degree: int) -> Iterator[PolyA]:
    """All polynomials of degree < ``degree`` (zero included)."""
    for digits in itertools.product(range(field.q), repeat=degree):
        yield PolyA(field, tuple(reversed(digits)))


def monic_divisors(n: PolyA) -> list[PolyA]:
    """Monic divisors of n, sorted by ``sort_key``."""
    divisors = [PolyA.constant(n.field, 1)]
    for prime, mult in n.prime_factors():
        divisors = [d * prime**k for d in divisors for k in range(mult + 1)]
    return sorted(divisors, key=PolyA.sort_key)


# =============================================================================
# The ring object
# =============================================================================


class PolyRingA(CommutativeRing):
    """A = F_q[T] as a ring object."""

    def __init__(self, field: FiniteField) -> None:
        self.field = field

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyRingA) and other.field == self.field

    def __hash__(self) -> int:
        return hash(("PolyRingA", self.field))

    def __repr__(self) -> str:
        return f"PolyRingA(q={self.field.q})"

    @property
    def characteristic(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def T(self) -> PolyA:
        return PolyA.monomial(self.field, 1)

    def zero(self) -> PolyA:
        return PolyA._raw(self.field, ())

    def one(self) -> PolyA:
        return PolyA._raw(self.field, (1,))

    def coerce(self, value: Any) -> PolyA:
        if isinstance(value, PolyA):
            if value.field != self.field:
                raise RingMismatchError("polynomial over a different field")
            return value
        if isinstance(value, int):
            return PolyA.constant(self.field, self.field.value_of_int(value))
        if isinstance(value, FieldElement):
            if value.field != self.field:
                raise RingMismatchError("constant from a different field")
            return PolyA.constant(self.field, value.value)
        from src.drinfeld_modpoly.algebra.fraction import RationalFunc

        if isinstance(value, RationalFunc) and value.is_polynomial():
            return value.num
        raise RingMismatchError(f"cannot coerce {type(value).__name__} into A")

    def is_unit(self, x: PolyA) -> bool:
        return len(x.coeffs) == 1

    def inv(self, x: PolyA) -> PolyA:
        if len(x.coeffs) != 1:
            raise ZeroDivisorError("only nonzero constants are units in A", value=x)
        return PolyA._raw(self.field, (self.field.inv_value(x.coeffs[0]),))

    def frobenius(self, x: PolyA) -> PolyA:
        return x.frobenius()

    def format(self, x: PolyA) -> str:
        return x.to_str()

    def variables(self) -> dict[str, Any]:
        names: dict[str, Any] = {"T": self.T}
        names.update({k: self.coerce(v) for k, v in self.field.variables().items()})
        return names


@cache
def poly_ring(field: FiniteField) -> PolyRingA:
    return PolyRingA(field)
