"""Linear algebra over 𝔽_q and canonical enumeration of subspaces.

A subspace of 𝔽_q^n is represented by its reduced row echelon basis, a tuple of
rows; this representative is unique, so enumeration never produces duplicates.
"""
from itertools import combinations, product
from typing import Iterator, List, Optional, Sequence, Tuple

Row = Tuple[int, ...]
Basis = Tuple[Row, ...]


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of 𝔽_q^n."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def rref_mod(rows: Sequence[Sequence[int]], n: int, q: int) -> Tuple[Basis, List[int]]:
    """Reduced row echelon basis of the row span, zero rows dropped, and pivot columns."""
    work = [[x % q for x in r] for r in rows]
    pivots: List[int] = []
    piv_r = 0
    for c in range(n):
        i_row = next((r for r in range(piv_r, len(work)) if work[r][c]), None)
        if i_row is None:
            continue
        work[piv_r], work[i_row] = work[i_row], work[piv_r]
        inv = pow(work[piv_r][c], q - 2, q)
        work[piv_r] = [(x * inv) % q for x in work[piv_r]]
        for r in range(len(work)):
            f = work[r][c]
            if r != piv_r and f:
                work[r] = [(x - f * y) % q for x, y in zip(work[r], work[piv_r])]
        pivots.append(c)
        piv_r += 1
    return tuple(tuple(r) for r in work[:piv_r]), pivots


def pivot_columns(basis: Basis) -> List[int]:
    return [next(i for i, x in enumerate(row) if x) for row in basis]


def reduce_vector(v: Sequence[int], basis: Basis, q: int) -> Row:
    """Remainder of v after subtracting its component along an RREF basis."""
    out = [x % q for x in v]
    for row, p in zip(basis, pivot_columns(basis)):
        f = out[p]
        if f:
            out = [(x - f * y) % q for x, y in zip(out, row)]
    return tuple(out)


def contains(basis: Basis, v: Sequence[int], q: int) -> bool:
    return not any(reduce_vector(v, basis, q))


def coords_in_basis(v: Sequence[int], basis: Basis, q: int) -> Optional[Row]:
    """Coordinates of v in an RREF basis (its pivot entries), or None if v ∉ span."""
    if not contains(basis, v, q):
        return None
    return tuple(v[p] % q for p in pivot_columns(basis))


def matvec_mod(m: Sequence[Sequence[int]], v: Sequence[int], q: int) -> Row:
    return tuple(sum(a * b for a, b in zip(row, v)) % q for row in m)


def nullspace_mod(rows: Sequence[Sequence[int]], n: int, q: int) -> Basis:
    """RREF basis of {x ∈ 𝔽_q^n : rows·x = 0}."""
    reduced, pivots = rref_mod(rows, n, q) if rows else ((), [])
    free = [c for c in range(n) if c not in pivots]
    vectors = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for r, p in enumerate(pivots):
            x[p] = (-reduced[r][f]) % q
        vectors.append(x)
    return rref_mod(vectors, n, q)[0] if vectors else ()


def span(a: Basis, b: Basis, n: int, q: int) -> Basis:
    return rref_mod(list(a) + list(b), n, q)[0]


def intersection(a: Basis, b: Basis, n: int, q: int) -> Basis:
    """U ∩ W as the annihilator of ann(U) + ann(W)."""
    ann = list(nullspace_mod(a, n, q)) + list(nullspace_mod(b, n, q))
    return nullspace_mod(ann, n, q)


def iter_subspaces(n: int, q: int, dim: Optional[int] = None) -> Iterator[Basis]:
    """All subspaces of 𝔽_q^n (or those of one dimension) in canonical order.

    Ordered by dimension, then pivot positions, then free entries lexicographically.
    """
    dims = range(n + 1) if dim is None else [dim]
    for k in dims:
        for pivots in combinations(range(n), k):
            free_slots = [
                (i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots
            ]
            for values in product(range(q), repeat=len(free_slots)):
                rows = [[0] * n for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, j), val in zip(free_slots, values):
                    rows[i][j] = val
                yield tuple(tuple(r) for r in rows)
