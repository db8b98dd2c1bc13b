"""Common protocol of the coefficient rings.

Elements of every ring support ``+``, ``-``, ``*``, unary ``-``, ``==`` and
truthiness (``bool(x)`` is False exactly for zero). Everything that is not an
operator lives on the ring object: constants, coercion, inversion, the
q-power Frobenius and canonical text output.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any


class CommutativeRing(ABC):
    """A commutative ring of characteristic p carrying the q-power Frobenius."""

    #: True when every nonzero element is a unit.
    is_field: bool = False

    @property
    @abstractmethod
    def characteristic(self) -> int: ...

    @property
    @abstractmethod
    def q(self) -> int:
        """Size of the constant field F_q whose q-power map is ``frobenius``."""

    @abstractmethod
    def zero(self) -> Any: ...

    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def coerce(self, value: Any) -> Any:
        """Map integers and elements of subrings into this ring."""

    @abstractmethod
    def is_unit(self, x: Any) -> bool: ...

    @abstractmethod
    def inv(self, x: Any) -> Any:
        """Multiplicative inverse; raises ``ZeroDivisorError`` on non-units."""

    @abstractmethod
    def frobenius(self, x: Any) -> Any:
        """The ring endomorphism x -> x^q."""

    @abstractmethod
    def format(self, x: Any) -> str:
        """Canonical text of an element."""

    def variables(self) -> dict[str, Any]:
        """Generator names understood by the grammar parser."""
        return {}

    def parse(self, text: str) -> Any:
        from src.drinfeld_modpoly.algebra.grammar import parse_element

        return parse_element(text, self)

    def from_int(self, n: int) -> Any:
        return self.coerce(n)

    def power(self, x: Any, n: int) -> Any:
        return ring_power(self, x, n)


def ring_power(ring: CommutativeRing, x: Any, n: int) -> Any:
    """x**n using the Frobenius for the base-q digits of n.

    x^n = prod_i frob^i(x)^{d_i} where n = sum d_i q^i; each digit power costs at
    most q - 2 multiplications and the Frobenius images are cheap for
    polynomial-like elements.
    """
    if n < 0:
        return ring_power(ring, ring.inv(x), -n)
    result = ring.one()
    if n == 0:
        return result
    q = ring.q
    image = x
    while n:
        n, digit = divmod(n, q)
        if digit:
            factor = image
            for _ in range(digit - 1):
                factor = factor * image
            result = result * factor
        if n:
            image = ring.frobenius(image)
    return result


def needs_parens(text: str) -> bool:
    """Whether an element's text must be parenthesized inside a product."""
    return any(ch in text for ch in "+-/")


def wrap(text: str) -> str:
    return f"({text})" if needs_parens(text) else text
