"""Sublattices with cyclic quotient A/nA: closed-form count, enumeration and shapes.

A sublattice of A^r is given by its Hermite basis in the coordinates
(z, xi_1, ..., xi_{r-1}): the first row is n_1 z + lambda_1 xi_1 + ... and the
remaining rows span the part inside the lower lattice, of index n_2 = n / n_1.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

from src.drinfeld_modpoly.algebra.polya import PolyA, enumerate_below, monic_divisors
from src.drinfeld_modpoly.config import settings
from src.drinfeld_modpoly.errors import ShapeError, ZeroPolynomialError
from src.drinfeld_modpoly.lattices.smith import (
    LatticeMatrix,
    contains,
    format_matrix,
    smith_normal_form,
)
from src.drinfeld_modpoly.utils.logging import setup_logger

logger = setup_logger(__name__)


def _check_level(n: PolyA, r: int) -> None:
    if not n:
        raise ZeroPolynomialError("level n must be nonzero")
    if not n.is_monic():
        raise ShapeError("level n must be monic", n=str(n))
    if r < 1:
        raise ShapeError("rank must be at least 1", rank=r)


def _prime_norms(n: PolyA) -> list[int]:
    q = n.field.q
    return [q**d for d in n.radical().distinct_degree_degrees()]


def count_cyclic_sublattices(n: PolyA, r: int) -> int:
    """f(n, r) = |n|^(r-1) prod_{p | n} (|p|^r - 1) / (|p|^r - |p|^(r-1))."""
    _check_level(n, r)
    total = Fraction(n.norm() ** (r - 1))
    for P in _prime_norms(n):
        total *= Fraction(P**r - 1, P**r - P ** (r - 1))
    if total.denominator != 1:
        raise ShapeError("sublattice count is not an integer", n=str(n), rank=r)
    return int(total)


def displayed_count(n: PolyA, r: int) -> Fraction:
    """|n|^(r-1) prod |p|^r / (|p|^r - |p|^(r-1)): the variant with |p|^r upstairs."""
    _check_level(n, r)
    total = Fraction(n.norm() ** (r - 1))
    for P in _prime_norms(n):
        total *= Fraction(P**r, P**r - P ** (r - 1))
    return total


# =============================================================================
# Enumeration
# =============================================================================


def _diagonals(n: PolyA, r: int) -> Iterator[tuple[PolyA, ...]]:
    if r == 1:
        yield (n,)
        return
    for d in monic_divisors(n):
        for rest in _diagonals(n // d, r - 1):
            yield (d, *rest)


def _is_cyclic(M: LatticeMatrix, n: PolyA) -> bool:
    invariants = smith_normal_form(M)
    return all(d.is_constant() for d in invariants[:-1]) and invariants[-1] == n


def enumerate_cyclic_sublattices(n: PolyA, r: int) -> list[LatticeMatrix]:
    """All Hermite bases of determinant n whose Smith form is diag(1, ..., 1, n)."""
    _check_level(n, r)
    if n.degree > settings.max_enumeration_degree:
        raise ShapeError(
            "level too large for exhaustive enumeration",
            degree=int(n.degree),
            limit=settings.max_enumeration_degree,
        )
    field = n.field
    zero = PolyA.constant(field, 0)
    found: list[LatticeMatrix] = []
    for diag in _diagonals(n, r):
        slots = [(i, j) for j in range(r) for i in range(j)]
        choices = [list(enumerate_below(field, int(diag[j].degree))) for _, j in slots]
        for values in itertools.product(*choices):
            rows = [[zero] * r for _ in range(r)]
            for i in range(r):
                rows[i][i] = diag[i]
            for (i, j), v in zip(slots, values, strict=True):
                rows[i][j] = v
            M = tuple(tuple(row) for row in rows)
            if _is_cyclic(M, n):
                found.append(M)
    logger.debug(
        "Enumerated cyclic sublattices", extra={"n": str(n), "rank": r, "count": len(found)}
    )
    return found


# =============================================================================
# Shapes
# =============================================================================


@dataclass(frozen=True)
class SublatticeShape:
    """(n_1, n_2, lambda) of a sublattice with basis n_1 z + lambda and n_2 Lambda_{r-1}.

    For rank 2 ``lam`` holds the single entry lambda with deg lambda < deg n_2;
    in general it is the rest of the first Hermite row.
    """

    n1: PolyA
    n2: PolyA
    lam: tuple[PolyA, ...]
    matrix: LatticeMatrix

    @classmethod
    def from_matrix(cls, M: LatticeMatrix) -> SublatticeShape:
        n1 = M[0][0]
        n2 = n1.ring.one()
        for i in range(1, len(M)):
            n2 = n2 * M[i][i]
        return cls(n1=n1, n2=n2, lam=tuple(M[0][1:]), matrix=M)

    @property
    def n(self) -> PolyA:
        return self.n1 * self.n2

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def lam_value(self) -> PolyA:
        """lambda for rank 2."""
        if self.rank != 2:
            raise ShapeError("a single lambda only exists for rank 2", rank=self.rank)
        return self.lam[0]

    def label(self) -> str:
        lam = ",".join(str(x) for x in self.lam)
        return f"({self.n1}; {self.n2}; {lam})"

    def matrix_text(self) -> str:
        return format_matrix(self.matrix)


def shapes_rank2(n: PolyA) -> list[SublatticeShape]:
    """The (n_1, n_2, lambda) triples of the cyclic rank-2 sublattices of level n."""
    return [SublatticeShape.from_matrix(M) for M in enumerate_cyclic_sublattices(n, 2)]


def tower_parents(s: int, r: int, q: int) -> dict[LatticeMatrix, list[LatticeMatrix]]:
    """For each cyclic level-T^s sublattice, the cyclic level-T^(s-1) ones containing it."""
    from src.drinfeld_modpoly.algebra.field import field_for_q
    from src.drinfeld_modpoly.algebra.polya import poly_ring

    if s < 1:
        raise ShapeError("tower level must be at least 1", s=s)
    T = poly_ring(field_for_q(q)).T
    children = enumerate_cyclic_sublattices(T**s, r)
    parents = enumerate_cyclic_sublattices(T ** (s - 1), r)
    return {child: [p for p in parents if contains(p, child)] for child in children}
