"""Finite fields F_q, q = p^e.

Elements are stored as integers in ``range(q)`` whose base-p digits are the
coefficients of the element as a polynomial in the generator ``a`` (lowest
digit = constant term). Prime fields use plain modular arithmetic; extension
fields multiply through exp/log tables built from a deterministic primitive
element.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from functools import cache
from typing import Any

import sympy

from src.drinfeld_modpoly.algebra.rings import CommutativeRing
from src.drinfeld_modpoly.errors import FieldError, RingMismatchError, ZeroDivisorError

_TABLE_LIMIT = 1 << 16


class FieldElement:
    """An element of a ``FiniteField`` with Python operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int) -> None:
        self.field = field
        self.value = value

    def _other(self, other: Any) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise RingMismatchError(
                    "field elements from different fields",
                    left=self.field,
                    right=other.field,
                )
            return other.value
        if isinstance(other, int):
            return self.field.value_of_int(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Any) -> FieldElement:
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add_values(self.value, v))

    __radd__ = __add__

    def __sub__(self, other: Any) -> FieldElement:
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_values(self.value, v))

    def __rsub__(self, other: Any) -> FieldElement:
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_values(v, self.value))

    def __mul__(self, other: Any) -> FieldElement:
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_values(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> FieldElement:
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_values(self.value, self.field.inv_value(v)))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field.neg_value(self.value))

    def __pow__(self, n: int) -> FieldElement:
        return FieldElement(self.field, self.field.pow_value(self.value, n))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.value_of_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("F", self.field.q, self.value))

    def __str__(self) -> str:
        return self.field.format_value(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.field.format_value(self.value)!r} in F_{self.field.q})"


class FiniteField(CommutativeRing):
    """The field F_{p^e} defined by a monic irreducible modulus over F_p."""

    is_field = True

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]) -> None:
        self.p = p
        self.e = e
        self.modulus = modulus
        self.size = p**e
        self._prime = e == 1
        self._exp: list[int] = []
        self._log: list[int] = []
        self._add_table: list[list[int]] | None = None
        if not self._prime and self.size <= _TABLE_LIMIT:
            self._build_tables()

    # -------------------------------------------------------------------------
    # Identity
    # -------------------------------------------------------------------------

    @property
    def key(self) -> tuple[int, int, tuple[int, ...]]:
        return (self.p, self.e, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and self.key == other.key

    def __hash__(self) -> int:
        return hash(("FiniteField",) + self.key)

    def __repr__(self) -> str:
        if self._prime:
            return f"FiniteField(p={self.p})"
        return f"FiniteField(p={self.p}, e={self.e}, modulus={self.format_modulus()!r})"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def q(self) -> int:
        return self.size

    @property
    def is_prime_field(self) -> bool:
        return self._prime

    # -------------------------------------------------------------------------
    # Digit representation
    # -------------------------------------------------------------------------

    def digits(self, value: int) -> list[int]:
        out = []
        for _ in range(self.e):
            value, d = divmod(value, self.p)
            out.append(d)
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        value = 0
        for d in reversed(digits):
            value = value * self.p + d % self.p
        return value

    def value_of_int(self, n: int) -> int:
        return n % self.p

    # -------------------------------------------------------------------------
    # Value-level arithmetic (used by the polynomial kernels)
    # -------------------------------------------------------------------------

    def add_values(self, x: int, y: int) -> int:
        if self._prime:
            s = x + y
            return s - self.p if s >= self.p else s
        if self.p == 2:
            return x ^ y
        if self._add_table is not None:
            return self._add_table[x][y]
        return self.from_digits([a + b for a, b in zip(self.digits(x), self.digits(y), strict=True)])

    def neg_value(self, x: int) -> int:
        if self._prime:
            return (-x) % self.p
        if self.p == 2:
            return x
        return self.from_digits([-d for d in self.digits(x)])

    def sub_values(self, x: int, y: int) -> int:
        return self.add_values(x, self.neg_value(y))

    def mul_values(self, x: int, y: int) -> int:
        if self._prime:
            return x * y % self.p
        if x == 0 or y == 0:
            return 0
        if self._exp:
            return self._exp[(self._log[x] + self._log[y]) % (self.size - 1)]
        return self._mul_slow(x, y)

    def inv_value(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisorError("inverse of zero in a finite field", q=self.size)
        if self._prime:
            return pow(x, -1, self.p)
        if self._exp:
            return self._exp[(-self._log[x]) % (self.size - 1)]
        return self.pow_value(x, self.size - 2)

    def pow_value(self, x: int, n: int) -> int:
        if n < 0:
            x, n = self.inv_value(x), -n
        if self._prime:
            return pow(x, n, self.p)
        if x == 0:
            return 1 if n == 0 else 0
        if self._exp:
            return self._exp[(self._log[x] * n) % (self.size - 1)]
        result = 1
        while n:
            if n & 1:
                result = self._mul_slow(result, x)
            x = self._mul_slow(x, x)
            n >>= 1
        return result

    def _mul_slow(self, x: int, y: int) -> int:
        p, e, mod = self.p, self.e, self.modulus
        a, b = self.digits(x), self.digits(y)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(e):
                    prod[k - e + i] -= c * mod[i]
            prod[k] = 0
        return self.from_digits(prod[:e])

    def _slow_pow(self, x: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._mul_slow(result, x)
            x = self._mul_slow(x, x)
            n >>= 1
        return result

    def _build_tables(self) -> None:
        g = self._find_primitive_slow()
        exp = [1] * (self.size - 1)
        log = [0] * self.size
        for k in range(1, self.size - 1):
            exp[k] = self._mul_slow(exp[k - 1], g)
        for k, v in enumerate(exp):
            log[v] = k
        self._exp, self._log = exp, log
        if self.p != 2 and self.size <= 1024:
            self._add_table = [
                [
                    self.from_digits([a + b for a, b in zip(self.digits(x), self.digits(y), strict=True)])
                    for y in range(self.size)
                ]
                for x in range(self.size)
            ]

    def _find_primitive_slow(self) -> int:
        order = self.size - 1
        if order == 1:
            return 1
        primes = list(sympy.factorint(order))
        for g in range(2, self.size):
            if all(self._slow_pow(g, order // ell) != 1 for ell in primes):
                return g
        raise FieldError("no primitive element found; modulus is not irreducible", q=self.size)

    # -------------------------------------------------------------------------
    # Ring protocol
    # -------------------------------------------------------------------------

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value % self.size if value >= self.size or value < 0 else value)

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator(self) -> FieldElement:
        """The class of ``a`` (equal to 0 for prime fields, where ``a`` is unused)."""
        return FieldElement(self, self.p if not self._prime else 0)

    def coerce(self, value: Any) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise RingMismatchError("cannot coerce between different finite fields")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.value_of_int(value))
        raise RingMismatchError(f"cannot coerce {type(value).__name__} into F_{self.size}")

    def is_unit(self, x: FieldElement) -> bool:
        return x.value != 0

    def inv(self, x: FieldElement) -> FieldElement:
        return FieldElement(self, self.inv_value(x.value))

    def frobenius(self, x: FieldElement) -> FieldElement:
        return x

    def variables(self) -> dict[str, Any]:
        return {} if self._prime else {"a": self.generator}

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.size)]

    def format(self, x: FieldElement) -> str:
        return self.format_value(x.value)

    def format_value(self, value: int) -> str:
        if self._prime:
            return str(value)
        terms = []
        for k, d in reversed(list(enumerate(self.digits(value)))):
            if not d:
                continue
            if k == 0:
                terms.append(str(d))
            else:
                mono = "a" if k == 1 else f"a^{k}"
                terms.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(terms) if terms else "0"

    def format_modulus(self) -> str:
        terms = []
        for k in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms)

    # -------------------------------------------------------------------------
    # Structure
    # -------------------------------------------------------------------------

    def multiplicative_order(self, x: FieldElement) -> int:
        if not x:
            raise ZeroDivisorError("zero has no multiplicative order")
        order = self.size - 1
        for ell, mult in sympy.factorint(order).items():
            for _ in range(mult):
                if self.pow_value(x.value, order // ell) == 1:
                    order //= ell
                else:
                    break
        return order

    def primitive_element(self) -> FieldElement:
        """Least element (by integer encoding) generating F_q^*."""
        for v in range(1, self.size):
            x = FieldElement(self, v)
            if self.multiplicative_order(x) == self.size - 1:
                return x
        raise FieldError("field has no primitive element", q=self.size)

    def embed_into(self, big: FiniteField) -> tuple[int, ...]:
        """Values of the embedding F_q -> big, indexed by the value in F_q.

        The image of ``a`` is the least root of the defining modulus in ``big``.
        """
        if big.p != self.p or big.e % self.e:
            raise FieldError("no embedding between these fields", small=self, big=big)
        if self._prime:
            return tuple(range(self.p))
        root = None
        for w in range(big.size):
            acc = 0
            for c in reversed(self.modulus):
                acc = big.add_values(big.mul_values(acc, w), c % big.p)
            if acc == 0:
                root = w
                break
        if root is None:
            raise FieldError("modulus has no root in the larger field", small=self, big=big)
        powers = [1]
        for _ in range(self.e - 1):
            powers.append(big.mul_values(powers[-1], root))
        images = []
        for v in range(self.size):
            acc = 0
            for d, w in zip(self.digits(v), powers, strict=True):
                if d:
                    acc = big.add_values(acc, big.mul_values(d, w))
            images.append(acc)
        return tuple(images)


# =============================================================================
# Construction
# =============================================================================


def _is_irreducible_mod_p(coeffs: Sequence[int], p: int) -> bool:
    x = sympy.Symbol("x")
    return bool(sympy.Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible)


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lowest monic irreducible of degree e over F_p.

    Candidates are ordered by the integer whose base-p digits are the
    coefficients below the leading one (constant term lowest).
    """
    if e == 1:
        return (0, 1)
    for v in range(p**e):
        coeffs = []
        for _ in range(e):
            v, d = divmod(v, p)
            coeffs.append(d)
        candidate = tuple(coeffs) + (1,)
        if candidate[0] and _is_irreducible_mod_p(candidate, p):
            return candidate
    raise FieldError("no irreducible polynomial found", p=p, e=e)


@cache
def _field(p: int, e: int, modulus: tuple[int, ...]) -> FiniteField:
    return FiniteField(p, e, modulus)


def field_make(p: int, e: int = 1, modulus: Iterable[int] | None = None) -> FiniteField:
    """Return the field F_{p^e}, cached per (p, e, modulus).

    ``modulus`` lists coefficients from the constant term upwards and must be
    monic irreducible of degree e; when omitted and e > 1 the lowest monic
    irreducible is used.
    """
    if not isinstance(p, int) or not sympy.isprime(p):
        raise FieldError(f"characteristic {p} is not prime", p=p)
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}", e=e)
    if modulus is None:
        mod = default_modulus(p, e)
    else:
        mod = tuple(int(c) % p for c in modulus)
        while len(mod) > 1 and mod[-1] == 0:
            mod = mod[:-1]
        if len(mod) != e + 1 or mod[-1] != 1:
            raise FieldError("modulus must be monic of degree e", e=e, modulus=mod)
        if e > 1 and not _is_irreducible_mod_p(mod, p):
            raise FieldError("modulus is reducible over F_p", p=p, modulus=mod)
    return _field(p, e, mod)


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^e; raises ``FieldError`` when q is not a prime power."""
    if q < 2:
        raise FieldError(f"q = {q} is not a prime power", q=q)
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise FieldError(f"q = {q} is not a prime power", q=q)
    ((p, e),) = factors.items()
    return int(p), int(e)


def field_for_q(q: int) -> FiniteField:
    """The field with q elements under the default modulus."""
    p, e = prime_power(q)
    return field_make(p, e)
