"""Harder-Narasimhan polygons: left boundary of the hull of subobject charges.

The left boundary z₀ = 0, z₁, …, z_k = Z(E) is extracted by a monotone chain over
the charges sorted by (Im, −Re); a point is dropped whenever the chain would not
turn strictly clockwise there, so collinear points are merged into a single edge.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from stabkit.errors import InputError, InternalInvariantError
from stabkit.lattice import linalg
from stabkit.lattice.charges import CentralCharge, Class
from stabkit.lattice.normalize import KernelData
from stabkit.lattice.phase import heart_charge
from stabkit.lattice.rational import RationalComplex
from stabkit.lattice.shortvec import enumerate_short_vectors

logger = logging.getLogger(__name__)

ZERO = RationalComplex(Fraction(0), Fraction(0))


def sqrt_sum_at_least(
    squares: Sequence[Fraction], rhs_square: Fraction, tolerance: float = 1e-9
) -> bool:
    """Σ √aᵢ ≥ √b, exact for at most two terms and within tolerance otherwise."""
    squares = [Fraction(a) for a in squares]
    b = Fraction(rhs_square)
    if len(squares) == 0:
        return b <= 0
    if len(squares) == 1:
        return squares[0] >= b
    if len(squares) == 2:
        a1, a2 = squares
        gap = b - a1 - a2
        return gap <= 0 or 4 * a1 * a2 >= gap * gap
    return sum(math.sqrt(a) for a in squares) >= math.sqrt(b) - tolerance


@dataclass(frozen=True)
class Mass:
    """Length of the left boundary; exact edges kept next to the float value."""

    edges: Tuple[RationalComplex, ...]

    @property
    def value(self) -> float:
        return math.fsum(abs(e) for e in self.edges)

    @property
    def edge_squares(self) -> List[Fraction]:
        return [e.abs2() for e in self.edges]

    def exact(self) -> str:
        if not self.edges:
            return "0"
        return " + ".join(f"sqrt({a})" for a in self.edge_squares)

    def at_least_abs(self, w: RationalComplex, tolerance: float = 1e-9) -> bool:
        """mass ≥ |w|."""
        return sqrt_sum_at_least(self.edge_squares, w.abs2(), tolerance)


@dataclass(frozen=True)
class HNPolygon:
    """Left extremal points of the hull of subobject charges, ordered upward.

    Attributes:
        vertices: z₀ = 0, …, z_k = Z(E)
        vertex_classes: The subobject class realizing each vertex
        points: Every distinct subobject charge, for display
    """

    vertices: Tuple[RationalComplex, ...]
    vertex_classes: Tuple[Class, ...]
    points: Tuple[RationalComplex, ...] = ()

    def __post_init__(self):
        edges = self.edges()
        for e1, e2 in zip(edges, edges[1:]):
            if e1.cross(e2) >= 0:
                raise InternalInvariantError(
                    "Edge phases of the HN polygon are not strictly decreasing"
                )

    def edges(self) -> List[RationalComplex]:
        return [b - a for a, b in zip(self.vertices, self.vertices[1:])]

    @property
    def is_single_edge(self) -> bool:
        return len(self.vertices) <= 2

    def mass(self) -> Mass:
        return Mass(tuple(self.edges()))

    def is_weakly_right(self, w: RationalComplex) -> bool:
        """True iff w lies in every closed right half plane of the boundary edges."""
        return all(
            (b - a).cross(w - a) <= 0 for a, b in zip(self.vertices, self.vertices[1:])
        )


def hn_polygon(classes: Iterable[Class], z: CentralCharge, v_e: Class) -> HNPolygon:
    """Left boundary of the convex hull of {Z(A)} over the given subobject classes.

    Raises:
        InputError: If 0 or v_e is missing, or the classes exceed v_e
        HeartViolationError: If a nonzero class maps outside H
    """
    classes = [tuple(c) for c in classes]
    v_e = tuple(v_e)
    zero = tuple(0 for _ in v_e)
    if zero not in classes or v_e not in classes:
        raise InputError("Subobject classes must contain 0 and the object class")
    if v_e == zero:
        return HNPolygon((ZERO,), (zero,), (ZERO,))

    charge_to_class: Dict[RationalComplex, Class] = {ZERO: zero}
    for c in sorted(classes):
        if c == zero:
            continue
        value = heart_charge(z, c)
        charge_to_class.setdefault(value, c)

    top = z(v_e)
    points = sorted(charge_to_class, key=lambda w: (w.im, -w.re))
    if points[-1] != top:
        raise InputError(
            f"Class set is not a subobject class set of {v_e}: {points[-1]} lies above Z(E)"
        )

    hull: List[RationalComplex] = []
    for p in points:
        while len(hull) >= 2 and (hull[-1] - hull[-2]).cross(p - hull[-2]) >= 0:
            hull.pop()
        hull.append(p)

    polygon = HNPolygon(tuple(hull), tuple(charge_to_class[w] for w in hull), tuple(points))
    logger.debug(f"HN polygon of {v_e}: {[str(w) for w in hull]}")
    return polygon


@dataclass(frozen=True)
class TruncatedPolygon:
    """Closed polygon spanned by the left extremal points of an HN polygon."""

    polygon: HNPolygon
    charge: CentralCharge

    @property
    def vertices(self) -> Tuple[RationalComplex, ...]:
        return self.polygon.vertices

    def contains(self, w: RationalComplex) -> bool:
        verts = self.vertices
        if len(verts) == 1:
            return w == verts[0]
        if len(verts) == 2:
            a, b = verts
            seg = b - a
            rel = w - a
            return seg.cross(rel) == 0 and 0 <= seg.dot(rel) <= seg.abs2()
        closed = list(verts) + [verts[0]]
        return all((b - a).cross(w - a) <= 0 for a, b in zip(closed, closed[1:]))

    def projection_radius(self) -> float:
        """Upper bound on ‖p(A)‖ for potential destabilizers A.

        ‖p(A)‖ ≤ m(A) ≤ m(E) − Re Z(E) + Re Z(A) with Z(A) inside the polygon.
        """
        top = self.vertices[-1]
        max_re = max(float(v.re) for v in self.vertices)
        return self.polygon.mass().value - float(top.re) + max_re

    def integer_classes_within(
        self, kd: Optional[KernelData] = None, tolerance: float = 1e-9
    ) -> List[Class]:
        """All lattice classes d with Z(d) in the polygon and ‖p(d)‖ within the mass bound.

        Raises:
            InputError: If Ker Z is nontrivial and no kernel data is given
        """
        z = self.charge
        m = z.rank
        if kd is None:
            if linalg.nullspace(z.matrix):
                raise InputError("Kernel data is required when the charge has a kernel")
            coords_gram = linalg.zeros(m, m)
        else:
            c = kd.coords_matrix
            coords_gram = linalg.matmul(linalg.matmul(linalg.transpose(c, m), kd.neg_gram), c, m) \
                if kd.dim else linalg.zeros(m, m)
        charge_gram = linalg.matmul(linalg.transpose(z.matrix), z.matrix)
        form = linalg.add(charge_gram, coords_gram)
        radius_p = self.projection_radius() + tolerance
        radius_z = max(v.abs2() for v in self.vertices)
        radius = radius_z + Fraction(math.ceil(radius_p * radius_p * 10**9) + 1, 10**9)
        found = []
        for d in enumerate_short_vectors(form, radius):
            if not self.contains(z(d)):
                continue
            if kd is not None and kd.dim and kd.norm(d) > radius_p:
                continue
            found.append(d)
        logger.debug(f"{len(found)} lattice classes inside truncated polygon (radius {radius})")
        return found


def truncated_polygon(classes: Iterable[Class], z: CentralCharge, v_e: Class) -> TruncatedPolygon:
    return TruncatedPolygon(hn_polygon(classes, z, v_e), z)
