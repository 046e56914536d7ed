"""Polynomials of degree ≤ 2 in the path parameter, with exact root isolation on [0, 1].

A polynomial is the coefficient triple (c₀, c₁, c₂) of c₀ + c₁t + c₂t².
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from stabkit.lattice.rational import RationalComplex, rational_sqrt

Poly = Tuple[Fraction, Fraction, Fraction]

DEFAULT_WIDTH = Fraction(1, 10**9)


def cross_poly(
    e0: RationalComplex, e1: RationalComplex, a0: RationalComplex, a1: RationalComplex
) -> Poly:
    """cross(e0 + t·e1, a0 + t·a1) as a polynomial in t."""
    return (e0.cross(a0), e0.cross(a1) + e1.cross(a0), e1.cross(a1))


def evaluate(p: Poly, t: Fraction) -> Fraction:
    return p[0] + t * (p[1] + t * p[2])


def is_zero(p: Poly) -> bool:
    return all(c == 0 for c in p)


def degree(p: Poly) -> int:
    for d in (2, 1, 0):
        if p[d] != 0:
            return d
    return -1


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Root:
    """A root in [0, 1]: exact when rational, otherwise an isolating interval."""

    lower: Fraction
    upper: Fraction
    exact: bool

    @property
    def value(self) -> Fraction:
        return self.lower if self.exact else (self.lower + self.upper) / 2

    def to_json(self):
        if self.exact:
            return str(self.lower)
        return [str(self.lower), str(self.upper)]


def _bisect(p: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> Root:
    s_lo = sign(evaluate(p, lo))
    while hi - lo > width:
        mid = (lo + hi) / 2
        s_mid = sign(evaluate(p, mid))
        if s_mid == 0:
            return Root(mid, mid, True)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return Root(lo, hi, False)


def roots_in_unit_interval(p: Poly, width: Fraction = DEFAULT_WIDTH) -> List[Root]:
    """Distinct real roots in [0, 1], sorted; the zero polynomial has none by convention."""
    d = degree(p)
    if d <= 0:
        return []
    if d == 1:
        t = -p[0] / p[1]
        return [Root(t, t, True)] if 0 <= t <= 1 else []
    c0, c1, c2 = p
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    root = rational_sqrt(disc)
    if root is not None:
        ts = sorted({(-c1 - root) / (2 * c2), (-c1 + root) / (2 * c2)})
        return [Root(t, t, True) for t in ts if 0 <= t <= 1]
    # irrational pair: isolate by the vertex, then bisect on sign changes
    vertex = -c1 / (2 * c2)
    found: List[Root] = []
    for lo, hi in ((Fraction(0), vertex), (vertex, Fraction(1))):
        lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
        if lo >= hi:
            continue
        if sign(evaluate(p, lo)) * sign(evaluate(p, hi)) < 0:
            found.append(_bisect(p, lo, hi, width))
    return found


def nonnegative_intervals(
    p: Poly, width: Fraction = DEFAULT_WIDTH
) -> List[Tuple[Fraction, Fraction]]:
    """Maximal closed subintervals of [0, 1] on which p ≥ 0.

    Endpoints at irrational roots are the midpoints of their isolating intervals.
    """
    if is_zero(p):
        return [(Fraction(0), Fraction(1))]
    root_values = {r.value for r in roots_in_unit_interval(p, width)}
    cuts = sorted(root_values | {Fraction(0), Fraction(1)})
    pieces = []
    for i, c in enumerate(cuts):
        pieces.append((c, c, c in root_values or evaluate(p, c) >= 0))
        if i + 1 < len(cuts):
            nxt = cuts[i + 1]
            pieces.append((c, nxt, evaluate(p, (c + nxt) / 2) >= 0))
    intervals: List[Tuple[Fraction, Fraction]] = []
    for lo, hi, ok in pieces:
        if not ok:
            continue
        if intervals and intervals[-1][1] == lo:
            intervals[-1] = (intervals[-1][0], hi)
        else:
            intervals.append((lo, hi))
    return intervals
