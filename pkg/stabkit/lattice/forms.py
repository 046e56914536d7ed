"""Rational quadratic forms: congruence diagonalization, inertia, definiteness."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from stabkit.errors import InputError
from stabkit.lattice import linalg
from stabkit.lattice.linalg import Matrix, Vector
from stabkit.lattice.rational import parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadraticForm:
    """Q(v) = vᵀ G v for a symmetric rational Gram matrix G."""

    gram: Matrix

    def __post_init__(self):
        gram = linalg.matrix(self.gram)
        if not linalg.is_symmetric(gram):
            raise InputError("Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", gram)

    @classmethod
    def parse(cls, rows: Any) -> "QuadraticForm":
        return cls(tuple(tuple(parse_rational(x) for x in row) for row in rows))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "QuadraticForm":
        n = len(entries)
        return cls(tuple(
            tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        ))

    @property
    def rank(self) -> int:
        """Rank of the ambient lattice (not of the form)."""
        return len(self.gram)

    def bilinear(self, u: Sequence, v: Sequence) -> Fraction:
        """B(u, v) = uᵀ G v, so that Q(v) = B(v, v)."""
        return linalg.dot(u, linalg.matvec(self.gram, linalg.vector(v)))

    def __call__(self, v: Sequence) -> Fraction:
        return self.bilinear(v, v)

    def restricted_gram(self, basis: Sequence[Vector]) -> Matrix:
        return tuple(tuple(self.bilinear(b, c) for c in basis) for b in basis)

    def congruent(self, s: Matrix) -> "QuadraticForm":
        """The form v ↦ Q(S v), i.e. Gram SᵀGS."""
        return QuadraticForm(linalg.matmul(linalg.matmul(linalg.transpose(s), self.gram), s))

    def negated(self) -> "QuadraticForm":
        return QuadraticForm(linalg.scale(self.gram, -1))

    def to_json(self) -> List[List[str]]:
        return linalg.format_matrix(self.gram)


def diagonalize(gram: Matrix) -> Tuple[List[Fraction], Matrix]:
    """Congruence diagonalization P G Pᵀ = diag(d).

    Returns:
        Tuple of the diagonal entries and the rows of P (a rational basis in which
        the form is diagonal)
    """
    n = len(gram)
    a = [list(r) for r in linalg.matrix(gram)]
    p = [list(r) for r in linalg.identity(n)]

    def add_multiple(i: int, k: int, f: Fraction) -> None:
        # row_i += f row_k, col_i += f col_k
        a[i] = [x + f * y for x, y in zip(a[i], a[k])]
        for r in range(n):
            a[r][i] += f * a[r][k]
        p[i] = [x + f * y for x, y in zip(p[i], p[k])]

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        p[i], p[j] = p[j], p[i]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                add_multiple(k, j, Fraction(1))
        for i in range(k + 1, n):
            if a[i][k] != 0:
                add_multiple(i, k, -a[i][k] / a[k][k])
    return [a[i][i] for i in range(n)], tuple(tuple(r) for r in p)


def signature(q: QuadraticForm) -> Tuple[int, int, int]:
    """Sylvester inertia (n_pos, n_neg, n_null)."""
    diag, _ = diagonalize(q.gram)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return pos, neg, len(diag) - pos - neg


def is_positive_definite(gram: Matrix) -> bool:
    """Leading-minor test by elimination without pivoting."""
    a = [list(r) for r in gram]
    n = len(a)
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return True


def _check_basis(q: QuadraticForm, basis: Sequence[Vector]) -> None:
    for b in basis:
        if len(b) != q.rank:
            raise InputError(f"Basis vector of length {len(b)} for a form of rank {q.rank}")
    if not linalg.independent(tuple(basis)):
        raise InputError("Basis vectors are linearly dependent")


def is_negative_definite_on(q: QuadraticForm, basis: Sequence[Sequence]) -> bool:
    """True iff Q restricted to span(basis) is negative definite.

    Raises:
        InputError: If the basis is linearly dependent
    """
    basis = [linalg.vector(b) for b in basis]
    if not basis:
        return True
    _check_basis(q, basis)
    return is_positive_definite(linalg.scale(q.restricted_gram(basis), -1))


def definiteness_witness(q: QuadraticForm, basis: Sequence[Sequence]) -> Optional[Tuple[int, ...]]:
    """Integer vector in span(basis) with Q ≥ 0, or None if Q is negative definite there."""
    basis = [linalg.vector(b) for b in basis]
    if not basis:
        return None
    _check_basis(q, basis)
    diag, p = diagonalize(q.restricted_gram(basis))
    for d, coeffs in zip(diag, p):
        if d >= 0:
            v = [Fraction(0)] * q.rank
            for c, b in zip(coeffs, basis):
                v = [x + c * y for x, y in zip(v, b)]
            witness = linalg.primitive_integer(v)
            logger.debug(f"Definiteness witness {witness} with Q = {q(witness)}")
            return witness
    return None
