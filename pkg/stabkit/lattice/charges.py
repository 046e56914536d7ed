"""Lattice classes and central charges Λ → ℂ."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple

from stabkit.errors import InputError
from stabkit.lattice import linalg
from stabkit.lattice.linalg import Matrix, Vector
from stabkit.lattice.rational import RationalComplex, parse_rational

# Integer coordinate vector in Λ ≅ ℤ^m
Class = Tuple[int, ...]


def as_class(values: Iterable[Any]) -> Class:
    out = []
    for v in values:
        f = parse_rational(v) if not isinstance(v, int) else Fraction(v)
        if f.denominator != 1:
            raise InputError(f"Class coordinates must be integers, got {v!r}")
        out.append(int(f))
    return tuple(out)


def class_add(a: Sequence[int], b: Sequence[int]) -> Class:
    return tuple(x + y for x, y in zip(a, b))


def class_sub(a: Sequence[int], b: Sequence[int]) -> Class:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class CentralCharge:
    """2×m rational matrix; row 0 holds Re Z(eⱼ), row 1 holds Im Z(eⱼ)."""

    matrix: Matrix

    def __post_init__(self):
        m = linalg.matrix(self.matrix)
        if len(m) != 2 or len(m[0]) != len(m[1]):
            raise InputError("Central charge must be a 2×m matrix")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_values(cls, values: Sequence[RationalComplex]) -> "CentralCharge":
        return cls((tuple(z.re for z in values), tuple(z.im for z in values)))

    @classmethod
    def parse(cls, rows: Any) -> "CentralCharge":
        """Decode ``[[re...], [im...]]``."""
        if not isinstance(rows, (list, tuple)) or len(rows) != 2:
            raise InputError(f"Central charge must be [[re...], [im...]], got {rows!r}")
        return cls(tuple(tuple(parse_rational(x) for x in row) for row in rows))

    @property
    def rank(self) -> int:
        return len(self.matrix[0])

    def column(self, j: int) -> RationalComplex:
        return RationalComplex(self.matrix[0][j], self.matrix[1][j])

    def values(self) -> List[RationalComplex]:
        return [self.column(j) for j in range(self.rank)]

    def __call__(self, v: Sequence) -> RationalComplex:
        return evaluate(self, v)

    def __add__(self, other: "CentralCharge") -> "CentralCharge":
        return CentralCharge(linalg.add(self.matrix, other.matrix))

    def __sub__(self, other: "CentralCharge") -> "CentralCharge":
        return CentralCharge(linalg.add(self.matrix, linalg.scale(other.matrix, -1)))

    def scaled(self, factor) -> "CentralCharge":
        return CentralCharge(linalg.scale(self.matrix, factor))

    def transformed(self, g: Matrix) -> "CentralCharge":
        """g∘Z for a rational 2×2 matrix g."""
        return CentralCharge(linalg.matmul(g, self.matrix))

    def extended(self, values: Sequence[RationalComplex]) -> "CentralCharge":
        """Charge on Λ ⊕ ℤ^k taking the given values on the new basis vectors."""
        return CentralCharge((
            self.matrix[0] + tuple(z.re for z in values),
            self.matrix[1] + tuple(z.im for z in values),
        ))

    def on_basis(self, basis: Sequence[Vector]) -> Matrix:
        """2×k matrix of the charge evaluated on the given vectors."""
        cols = [evaluate(self, b) for b in basis]
        return (tuple(z.re for z in cols), tuple(z.im for z in cols))

    def image_rank(self) -> int:
        return linalg.rank(self.matrix)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def to_json(self) -> List[List[str]]:
        return linalg.format_matrix(self.matrix)


def evaluate(z: CentralCharge, v: Sequence) -> RationalComplex:
    """Exact Z(v).

    Raises:
        InputError: If the dimensions disagree
    """
    if len(v) != z.rank:
        raise InputError(f"Class of length {len(v)} for a charge on a rank-{z.rank} lattice")
    v = linalg.vector(v)
    return RationalComplex(linalg.dot(z.matrix[0], v), linalg.dot(z.matrix[1], v))


def kernel(z: CentralCharge) -> List[Vector]:
    """Rational basis of Ker Z, scaled to primitive integer vectors."""
    return [linalg.vector(linalg.primitive_integer(b)) for b in linalg.nullspace(z.matrix)]
