"""The rational function field K = F_q(T)."""

from __future__ import annotations

from functools import cache
from typing import Any

from src.drinfeld_modpoly.algebra.field import FieldElement, FiniteField
from src.drinfeld_modpoly.algebra.polya import PolyA, poly_gcd, poly_ring
from src.drinfeld_modpoly.algebra.rings import CommutativeRing, wrap
from src.drinfeld_modpoly.errors import RingMismatchError, ZeroDivisorError


class RationalFunc:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyA, den: PolyA | None = None) -> None:
        if den is None:
            den = PolyA.constant(num.field, 1)
        if not den:
            raise ZeroDivisorError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, PolyA.constant(num.field, 1)
            return
        if not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num // g, den // g
        lead = den.lead
        if lead != 1:
            inv = FieldElement(num.field, num.field.inv_value(lead))
            num, den = num * inv, den * inv
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: PolyA, den: PolyA) -> RationalFunc:
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @property
    def field(self) -> FiniteField:
        return self.num.field

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def _coerce(self, other: Any) -> RationalFunc | None:
        if isinstance(other, RationalFunc):
            if other.field != self.field:
                raise RingMismatchError("rational functions over different fields")
            return other
        if isinstance(other, PolyA | int | FieldElement):
            num = poly_ring(self.field).coerce(other)
            return RationalFunc._raw(num, PolyA.constant(self.field, 1))
        return None

    def __add__(self, other: Any) -> RationalFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_constant() and o.den.is_constant():
            return RationalFunc._raw(self.num + o.num, self.den)
        if self.den == o.den:
            return RationalFunc(self.num + o.num, self.den)
        return RationalFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunc:
        return RationalFunc._raw(-self.num, self.den)

    def __sub__(self, other: Any) -> RationalFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> RationalFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> RationalFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RationalFunc._raw(PolyA.constant(self.field, 0), PolyA.constant(self.field, 1))
        if self.den.is_constant() and o.den.is_constant():
            return RationalFunc._raw(self.num * o.num, self.den)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        g1 = poly_gcd(n1, d2)
        if not g1.is_constant():
            n1, d2 = n1 // g1, d2 // g1
        g2 = poly_gcd(n2, d1)
        if not g2.is_constant():
            n2, d1 = n2 // g2, d1 // g2
        return RationalFunc._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunc:
        if not self.num:
            raise ZeroDivisorError("inverse of zero in K")
        return RationalFunc(self.den, self.num)

    def __truediv__(self, other: Any) -> RationalFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> RationalFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> RationalFunc:
        return fraction_field(self.field).power(self, n)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, PolyA | int | FieldElement):
            return self.den.is_constant() and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.den.is_constant():
            return hash(self.num)
        return hash(("RationalFunc", self.num.coeffs, self.den.coeffs))

    def frobenius(self) -> RationalFunc:
        return RationalFunc._raw(self.num.frobenius(), self.den.frobenius())

    def to_str(self) -> str:
        if self.den.is_constant():
            return self.num.to_str()
        return f"{wrap(self.num.to_str())}/{wrap(self.den.to_str())}"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"RationalFunc({self.to_str()!r})"


class FractionFieldK(CommutativeRing):
    """K = F_q(T) as a ring object."""

    is_field = True

    def __init__(self, field: FiniteField) -> None:
        self.field = field
        self.base = poly_ring(field)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FractionFieldK) and other.field == self.field

    def __hash__(self) -> int:
        return hash(("FractionFieldK", self.field))

    def __repr__(self) -> str:
        return f"FractionFieldK(q={self.field.q})"

    @property
    def characteristic(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    def zero(self) -> RationalFunc:
        return RationalFunc._raw(self.base.zero(), self.base.one())

    def one(self) -> RationalFunc:
        return RationalFunc._raw(self.base.one(), self.base.one())

    def coerce(self, value: Any) -> RationalFunc:
        if isinstance(value, RationalFunc):
            if value.field != self.field:
                raise RingMismatchError("rational function over a different field")
            return value
        return RationalFunc._raw(self.base.coerce(value), self.base.one())

    def is_unit(self, x: RationalFunc) -> bool:
        return bool(x.num)

    def inv(self, x: RationalFunc) -> RationalFunc:
        return x.inverse()

    def frobenius(self, x: RationalFunc) -> RationalFunc:
        return x.frobenius()

    def format(self, x: RationalFunc) -> str:
        return x.to_str()

    def variables(self) -> dict[str, Any]:
        return {name: self.coerce(value) for name, value in self.base.variables().items()}


@cache
def fraction_field(field: FiniteField) -> FractionFieldK:
    return FractionFieldK(field)
