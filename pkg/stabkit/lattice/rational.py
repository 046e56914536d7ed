"""Exact rationals and rational complex numbers."""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple, Union

from stabkit.errors import InputError

RationalLike = Union[int, str, Fraction]


def parse_rational(value: Any) -> Fraction:
    """Decode an integer or a ``"p/q"`` string into a Fraction.

    Floats are rejected: documents must carry exact values.

    Raises:
        InputError: If the value is not an exact rational
    """
    if isinstance(value, bool):
        raise InputError(f"Boolean is not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"Cannot parse rational {value!r}: {e}") from e
    raise InputError(f"Expected integer or 'p/q' string, got {type(value).__name__}: {value!r}")


def format_rational(value: Fraction) -> str:
    """Encode a rational as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(Fraction(value))


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    value = Fraction(value)
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class RationalComplex:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def zero(cls) -> "RationalComplex":
        return cls(Fraction(0), Fraction(0))

    @classmethod
    def parse(cls, value: Any) -> "RationalComplex":
        """Decode ``[re, im]`` or ``{"re": .., "im": ..}``."""
        if isinstance(value, dict):
            return cls(parse_rational(value.get("re", 0)), parse_rational(value.get("im", 0)))
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return cls(parse_rational(value[0]), parse_rational(value[1]))
        raise InputError(f"Expected a [re, im] pair, got {value!r}")

    def to_json(self) -> Tuple[str, str]:
        return (format_rational(self.re), format_rational(self.im))

    def __add__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "RationalComplex":
        return RationalComplex(-self.re, -self.im)

    def scale(self, factor: RationalLike) -> "RationalComplex":
        f = Fraction(factor)
        return RationalComplex(self.re * f, self.im * f)

    def cross(self, other: "RationalComplex") -> Fraction:
        """Re(z)Im(w) - Im(z)Re(w); positive iff w is counterclockwise from z."""
        return self.re * other.im - self.im * other.re

    def dot(self, other: "RationalComplex") -> Fraction:
        return self.re * other.re + self.im * other.im

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def in_upper_half_plane(self) -> bool:
        """Membership in H = {Im > 0} union {Im = 0, Re < 0}."""
        return self.im > 0 or (self.im == 0 and self.re < 0)

    def rotate_quarter(self) -> "RationalComplex":
        """Multiplication by i."""
        return RationalComplex(-self.im, self.re)

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"


def as_vector(values: Sequence[RationalLike]) -> Tuple[Fraction, ...]:
    """Tuple of Fractions from a sequence of exact values."""
    return tuple(parse_rational(v) if not isinstance(v, Fraction) else v for v in values)
