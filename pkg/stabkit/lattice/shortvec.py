"""Exact enumeration of integer vectors with F(x) ≤ R for a positive definite rational F.

The form is completed to squares, F(x) = Σᵢ dᵢ (xᵢ + Σ_{j>i} μᵢⱼ xⱼ)², and coordinates
are fixed from the last to the first, each within the interval its remaining budget
allows. Interval endpoints are rounded outward and every candidate is filtered
exactly, so the result does not depend on float precision.
"""
import logging
import math
from fractions import Fraction
from typing import List, Tuple

from stabkit.errors import BudgetExceededError, InputError
from stabkit.lattice.linalg import Matrix

logger = logging.getLogger(__name__)


def ldl(gram: Matrix) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """Square completion of a positive definite Gram matrix.

    Raises:
        InputError: If the matrix is not positive definite
    """
    n = len(gram)
    a = [list(r) for r in gram]
    d: List[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if a[i][i] <= 0:
            raise InputError("Enumeration form is not positive definite")
        d.append(a[i][i])
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / a[i][i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] -= a[i][j] * a[i][k] / a[i][i]
    return d, mu


def enumerate_short_vectors(
    gram: Matrix, radius: Fraction, limit: int = 10_000_000
) -> List[Tuple[int, ...]]:
    """All integer x (including 0) with xᵀ F x ≤ radius, sorted.

    Raises:
        InputError: If F is not positive definite
        BudgetExceededError: If more than ``limit`` search nodes are visited
    """
    radius = Fraction(radius)
    n = len(gram)
    if n == 0:
        return [()] if radius >= 0 else []
    if radius < 0:
        return []
    d, mu = ldl(gram)
    x = [0] * n
    found: List[Tuple[int, ...]] = []
    visited = 0

    def descend(i: int, remaining: Fraction) -> None:
        nonlocal visited
        center = -sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        half_width = math.sqrt(float(remaining / d[i]))
        lo = math.floor(float(center) - half_width) - 1
        hi = math.ceil(float(center) + half_width) + 1
        for value in range(lo, hi + 1):
            visited += 1
            if visited > limit:
                raise BudgetExceededError(
                    f"Short vector enumeration exceeded {limit} nodes",
                    required=visited,
                    budget=limit,
                )
            offset = value - center
            rest = remaining - d[i] * offset * offset
            if rest < 0:
                continue
            x[i] = value
            if i == 0:
                found.append(tuple(x))
            else:
                descend(i - 1, rest)
        x[i] = 0

    descend(n - 1, radius)
    logger.debug(f"Short vector search: {len(found)} vectors, {visited} nodes, radius {radius}")
    return sorted(found)
