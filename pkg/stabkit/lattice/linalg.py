"""Exact linear algebra over the rationals.

Vectors are tuples of Fractions, matrices are tuples of row tuples. Row reduction
follows the usual pivot-column bookkeeping (pivot rows first, free columns recorded).
"""
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from stabkit.errors import InputError

Vector = Tuple[Fraction, ...]
Matrix = Tuple[Vector, ...]


def vector(values: Sequence) -> Vector:
    return tuple(Fraction(v) for v in values)


def matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(vector(r) for r in rows)


def zeros(rows: int, cols: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def shape(m: Matrix) -> Tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Matrix, cols: Optional[int] = None) -> Matrix:
    """Transpose; ``cols`` gives the column count for matrices with no rows."""
    if not m:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*m))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise InputError(f"Dimension mismatch in dot product: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matvec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, v) for row in m)


def matmul(a: Matrix, b: Matrix, cols: Optional[int] = None) -> Matrix:
    """Product a·b; ``cols`` is only needed when ``b`` has no rows."""
    width = len(b[0]) if b else (cols or 0)
    if a and len(a[0]) != len(b):
        raise InputError(f"Cannot multiply {shape(a)} by {shape(b)}")
    columns = transpose(b, width)
    return tuple(tuple(dot(row, col) for col in columns) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise InputError(f"Cannot add {shape(a)} and {shape(b)}")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(m: Matrix, factor) -> Matrix:
    f = Fraction(factor)
    return tuple(tuple(f * x for x in row) for row in m)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(v: Vector, factor) -> Vector:
    f = Fraction(factor)
    return tuple(f * x for x in v)


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def is_symmetric(m: Matrix) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in m]
    if not rows:
        return (), []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: List[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        i_row = next((r for r in range(piv_r, n_rows) if rows[r][piv_c] != 0), None)
        if i_row is None:
            continue
        rows[piv_r], rows[i_row] = rows[i_row], rows[piv_r]
        fp = rows[piv_r][piv_c]
        rows[piv_r] = [x / fp for x in rows[piv_r]]
        for r in range(n_rows):
            fr = rows[r][piv_c]
            if r != piv_r and fr != 0:
                rows[r] = [x - fr * y for x, y in zip(rows[r], rows[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
        if piv_r == n_rows:
            break
    return tuple(tuple(r) for r in rows), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1]) if m else 0


def nullspace(m: Matrix, cols: Optional[int] = None) -> List[Vector]:
    """Basis of {x : m·x = 0}, one vector per free column."""
    n_cols = len(m[0]) if m else (cols or 0)
    if not m:
        return list(identity(n_cols))
    reduced, pivots = rref(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -reduced[r][f]
        basis.append(tuple(x))
    return basis


def solve(a: Matrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """One solution of a·x = b, or None if the system is inconsistent."""
    n_cols = len(a[0]) if a else 0
    augmented = tuple(tuple(row) + (Fraction(bi),) for row, bi in zip(a, b))
    reduced, pivots = rref(augmented)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for r, p in enumerate(pivots):
        x[p] = reduced[r][n_cols]
    return tuple(x)


def det(m: Matrix) -> Fraction:
    n = len(m)
    rows = [list(r) for r in m]
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            result = -result
        result *= rows[c][c]
        for r in range(c + 1, n):
            f = rows[r][c] / rows[c][c]
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return result


def inverse(m: Matrix) -> Matrix:
    """Exact inverse.

    Raises:
        InputError: If the matrix is singular or not square
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise InputError(f"Cannot invert non-square matrix of shape {shape(m)}")
    augmented = tuple(tuple(row) + identity(n)[i] for i, row in enumerate(m))
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise InputError("Matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


def independent(vectors: Sequence[Vector]) -> bool:
    return rank(tuple(vectors)) == len(vectors) if vectors else True


def primitive_integer(v: Sequence[Fraction]) -> Tuple[int, ...]:
    """Smallest integer multiple of v with coprime entries, first nonzero entry positive."""
    if is_zero_vector(v):
        return tuple(0 for _ in v)
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, (abs(x) for x in ints if x), 0)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def format_matrix(m: Matrix) -> List[List[str]]:
    return [[str(x) for x in row] for row in m]
