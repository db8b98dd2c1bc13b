"""Smith and Hermite normal forms of square matrices over A = F_q[T]."""

from __future__ import annotations

from collections.abc import Sequence

from src.drinfeld_modpoly.algebra.field import FieldElement
from src.drinfeld_modpoly.algebra.polya import PolyA
from src.drinfeld_modpoly.errors import ShapeError, SingularMatrixError

LatticeMatrix = tuple[tuple[PolyA, ...], ...]


def _as_rows(M: Sequence[Sequence[PolyA]]) -> list[list[PolyA]]:
    rows = [list(row) for row in M]
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ShapeError("expected a non-empty square matrix", rows=n)
    return rows


def freeze(M: Sequence[Sequence[PolyA]]) -> LatticeMatrix:
    return tuple(tuple(row) for row in M)


def format_matrix(M: Sequence[Sequence[PolyA]]) -> str:
    """Rows separated by ";" and entries by ",", in the canonical grammar."""
    return ";".join(",".join(str(x) for x in row) for row in M)


def smith_normal_form(M: Sequence[Sequence[PolyA]]) -> list[PolyA]:
    """Monic invariant factors d_1 | d_2 | ... | d_r of a nonsingular matrix.

    Raises:
        ShapeError: If the matrix is not square.
        SingularMatrixError: If the determinant is zero.
    """
    A = _as_rows(M)
    n = len(A)
    for t in range(n):
        while True:
            pivot = None
            for i in range(t, n):
                for j in range(t, n):
                    x = A[i][j]
                    if x and (pivot is None or x.degree < A[pivot[0]][pivot[1]].degree):
                        pivot = (i, j)
            if pivot is None:
                raise SingularMatrixError("matrix has determinant zero", size=n)
            i, j = pivot
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]

            p = A[t][t]
            clean = True
            for i in range(t + 1, n):
                if A[i][t]:
                    quot, rem = divmod(A[i][t], p)
                    A[i] = [x - quot * y for x, y in zip(A[i], A[t], strict=True)]
                    clean = clean and not rem
            for j in range(t + 1, n):
                if A[t][j]:
                    quot, rem = divmod(A[t][j], p)
                    for row in A:
                        row[j] = row[j] - quot * row[t]
                    clean = clean and not rem
            if not clean:
                continue
            # the pivot must divide the whole remaining block
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad], strict=True)]
    return [A[i][i].monic() for i in range(n)]


def hermite_normal_form(M: Sequence[Sequence[PolyA]]) -> LatticeMatrix:
    """Upper-triangular basis of the row lattice of M.

    Diagonal entries are monic and every entry above a diagonal entry is
    reduced modulo it (degree below the degree of its column's pivot).
    """
    A = _as_rows(M)
    n = len(A)
    for t in range(n):
        while True:
            live = [i for i in range(t, n) if A[i][t]]
            if not live:
                raise SingularMatrixError("matrix has determinant zero", size=n)
            i = min(live, key=lambda k: A[k][t].degree)
            A[t], A[i] = A[i], A[t]
            done = True
            for k in range(t + 1, n):
                if A[k][t]:
                    quot = A[k][t] // A[t][t]
                    A[k] = [x - quot * y for x, y in zip(A[k], A[t], strict=True)]
                    done = done and not A[k][t]
            if done:
                break
        field = A[t][t].field
        unit = FieldElement(field, field.inv_value(A[t][t].lead))
        A[t] = [x * unit for x in A[t]]
        for k in range(t):
            if A[k][t]:
                quot = A[k][t] // A[t][t]
                A[k] = [x - quot * y for x, y in zip(A[k], A[t], strict=True)]
    return freeze(A)


def determinant(M: Sequence[Sequence[PolyA]]) -> PolyA:
    """Monic-normalized determinant via the Hermite form (zero raises)."""
    H = hermite_normal_form(M)
    det = H[0][0]
    for i in range(1, len(H)):
        det = det * H[i][i]
    return det


def contains(big: Sequence[Sequence[PolyA]], small: Sequence[Sequence[PolyA]]) -> bool:
    """Whether the row lattice of ``small`` lies in the row lattice of ``big``."""
    H = hermite_normal_form(big)
    n = len(H)
    for row in _as_rows(small):
        if len(row) != n:
            raise ShapeError("matrices of different sizes", big=n, small=len(row))
        v = list(row)
        for j in range(n):
            quot, rem = divmod(v[j], H[j][j])
            if rem:
                return False
            if quot:
                v = [x - quot * y for x, y in zip(v, H[j], strict=True)]
    return True
