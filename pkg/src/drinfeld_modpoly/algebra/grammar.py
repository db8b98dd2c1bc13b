"""Parser for the canonical polynomial text grammar.

Integers are read as elements of the prime field, names come from
``ring.variables()`` ("T", "a", "x", "j", "u1", ...), and products may be
written with or without ``*``: ``"T^3+2*T+1"``, ``"2T"`` and ``"(a+1)T^2"``
all parse. Matrices are rows separated by ``;`` with entries separated by
``,``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

from src.drinfeld_modpoly.algebra.field import FiniteField
from src.drinfeld_modpoly.algebra.polya import PolyA, poly_ring
from src.drinfeld_modpoly.algebra.rings import CommutativeRing
from src.drinfeld_modpoly.config import settings
from src.drinfeld_modpoly.errors import GrammarError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op" or "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            break
        number, name, op = match.groups()
        start = match.start(match.lastindex or 0)
        if number is not None:
            tokens.append(Token("int", number, start))
        elif name is not None:
            tokens.append(Token("name", name, start))
        elif op is not None:
            if op not in "+-*/^()":
                raise GrammarError(f"unexpected character {op!r}", text=text, position=start)
            tokens.append(Token("op", op, start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: CommutativeRing) -> None:
        self.text = text
        self.ring = ring
        self.names = ring.variables()
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def error(self, message: str) -> GrammarError:
        return GrammarError(message, text=self.text, position=self.current.pos)

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self.index += 1
            return True
        return False

    def parse(self) -> Any:
        if self.current.kind == "end":
            raise self.error("empty expression")
        value = self.expression()
        if self.current.kind != "end":
            raise self.error(f"unexpected token {self.current.text!r}")
        return value

    def expression(self) -> Any:
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def starts_factor(self) -> bool:
        tok = self.current
        return tok.kind in ("int", "name") or (tok.kind == "op" and tok.text == "(")

    def term(self) -> Any:
        value = self.unary()
        while True:
            if self.accept("*"):
                value = value * self.unary()
            elif self.accept("/"):
                divisor = self.unary()
                try:
                    value = value * self.ring.inv(divisor)
                except ZeroDivisionError as exc:
                    raise self.error(f"division by a non-unit: {exc}") from exc
            elif self.starts_factor():
                value = value * self.power()
            else:
                return value

    def unary(self) -> Any:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Any:
        base = self.atom()
        if not self.accept("^"):
            return base
        sign = -1 if self.accept("-") else 1
        tok = self.advance()
        if tok.kind == "op" and tok.text == "(":
            sign = -1 if self.accept("-") else 1
            tok = self.advance()
            if tok.kind != "int" or not self.accept(")"):
                raise self.error("exponent must be an integer")
        elif tok.kind != "int":
            raise self.error("exponent must be an integer")
        if len(tok.text) > 12 or int(tok.text) > settings.max_exponent:
            raise self.error(f"exponent {tok.text} exceeds the limit {settings.max_exponent}")
        try:
            return self.ring.power(base, sign * int(tok.text))
        except ZeroDivisionError as exc:
            raise self.error(f"negative power of a non-unit: {exc}") from exc

    def atom(self) -> Any:
        tok = self.advance()
        if tok.kind == "int":
            return self.ring.from_int(int(tok.text))
        if tok.kind == "name":
            if tok.text not in self.names:
                self.index -= 1
                raise self.error(f"unknown name {tok.text!r}")
            return self.names[tok.text]
        if tok.kind == "op" and tok.text == "(":
            value = self.expression()
            if not self.accept(")"):
                raise self.error("missing closing parenthesis")
            return value
        if tok.kind != "end":
            self.index -= 1
        raise self.error(f"unexpected token {tok.text!r}" if tok.text else "unexpected end of input")


def parse_element(text: str, ring: CommutativeRing) -> Any:
    """Parse ``text`` into an element of ``ring``."""
    return _Parser(text, ring).parse()


def parse_polya(text: str, field: FiniteField) -> PolyA:
    return parse_element(text, poly_ring(field))


def parse_monic(text: str, field: FiniteField) -> PolyA:
    """A monic element of A, as required for levels n."""
    n = parse_polya(text, field)
    if not n or not n.is_monic():
        raise GrammarError("expected a monic polynomial", text=text)
    return n


def parse_matrix(text: str, ring: CommutativeRing) -> list[list[Any]]:
    """``"a,b;c,d"`` -> [[a, b], [c, d]]; every row must have the same length."""
    if not text.strip():
        raise GrammarError("empty matrix", text=text)
    rows = [[parse_element(cell, ring) for cell in row.split(",")] for row in text.split(";")]
    if len({len(row) for row in rows}) != 1:
        raise GrammarError("matrix rows have different lengths", text=text)
    return rows
