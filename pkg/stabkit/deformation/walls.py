"""Walls: parameters where the semistability of an object changes along a path.

For a subobject class A of E the phase condition cross(Z_t(E), Z_t(A)) ≥ 0 is a
polynomial inequality in t, of degree one for normal-form paths and at most two for
general affine paths. Candidate parameters are the roots of these polynomials; each
candidate is kept only if a brute-force semistability test on both sides, and at the
parameter itself, shows a change of status.

Roots of different classes whose isolating intervals overlap are treated as one
candidate parameter. The reported destabilizer is the smallest class whose phase
exceeds that of the object on the unstable side.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Set, Tuple

from stabkit.deformation import poly
from stabkit.deformation.direction import operator_norm_below
from stabkit.deformation.path import DeformationPath
from stabkit.errors import InputError
from stabkit.hn.filtration import is_semistable, object_polygon
from stabkit.hn.polygon import TruncatedPolygon
from stabkit.lattice.charges import Class
from stabkit.lattice.forms import QuadraticForm
from stabkit.lattice.normalize import kernel_data
from stabkit.quiver.quiver import Representation
from stabkit.quiver.subobjects import DEFAULT_BUDGET, enumerate_subobject_classes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Wall:
    """A parameter where the status of ``object_class`` changes.

    ``t_value`` is exact when ``exact`` is set; otherwise the wall is an irrational root
    isolated in ``t_interval`` and ``t_value`` is the interval midpoint.
    """

    t_value: Fraction
    object_class: Class
    destabilizer_class: Class
    exact: bool = True
    t_interval: Optional[Tuple[Fraction, Fraction]] = None
    status_before: str = ""
    status_after: str = ""

    def to_json(self) -> Dict[str, Any]:
        data = {
            "t": str(self.t_value),
            "t_float": float(self.t_value),
            "object": list(self.object_class),
            "destabilizer": list(self.destabilizer_class),
            "exact": self.exact,
            "status_before": self.status_before,
            "status_after": self.status_after,
        }
        if self.t_interval is not None:
            data["t_interval"] = [str(x) for x in self.t_interval]
        return data


@dataclass
class RootGroup:
    """Roots of several cross polynomials that cannot be told apart at the working width."""

    lower: Fraction
    upper: Fraction
    exact_value: Optional[Fraction] = None
    members: List[Tuple[Class, poly.Poly]] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.exact_value is not None

    @property
    def value(self) -> Fraction:
        return self.exact_value if self.exact else (self.lower + self.upper) / 2

    @property
    def root(self) -> poly.Root:
        if self.exact:
            return poly.Root(self.exact_value, self.exact_value, True)
        return poly.Root(self.lower, self.upper, False)

    def overlaps(self, root: poly.Root) -> bool:
        if root.lower > self.upper or root.upper < self.lower:
            return False
        # two distinct rational roots never merge
        return not (self.exact and root.exact and root.lower != self.exact_value)

    def absorb(self, root: poly.Root, a: Class, p: poly.Poly) -> None:
        if root.exact:
            self.exact_value = root.lower
            self.lower, self.upper = root.lower, root.lower
        elif not self.exact:
            self.lower, self.upper = min(self.lower, root.lower), max(self.upper, root.upper)
        self.members.append((a, p))


def group_roots(entries: List[Tuple[poly.Root, Class, poly.Poly]]) -> List[RootGroup]:
    """Merge roots with overlapping isolating intervals, sorted by parameter."""
    groups: List[RootGroup] = []
    for root, a, p in sorted(entries, key=lambda e: (e[0].lower, e[0].upper, e[1])):
        target = next((g for g in groups if g.overlaps(root)), None)
        if target is None:
            target = RootGroup(root.lower, root.upper)
            groups.append(target)
        target.absorb(root, a, p)
    return sorted(groups, key=lambda g: g.value)


def choose_destabilizer(members: List[Tuple[Class, poly.Poly]], t: Fraction) -> Class:
    """Smallest class with cross(Z_t(E), Z_t(A)) > 0, i.e. of larger phase than E at t."""
    rising = sorted(a for a, p in members if poly.evaluate(p, t) > 0)
    if rising:
        return rising[0]
    return min(a for a, _ in members)


def _status(r: Representation, path: DeformationPath, t: Fraction, budget: int) -> bool:
    return is_semistable(r, path.charge_at(t), budget)


def status_label(semistable: bool) -> str:
    return "semistable" if semistable else "unstable"


def candidate_classes(
    r: Representation,
    path: DeformationPath,
    form: Optional[QuadraticForm] = None,
    budget: int = DEFAULT_BUDGET,
) -> List[Class]:
    """Potential destabilizers: proper nonzero realizable subobject classes.

    For normal-form paths with ‖u‖ < 1 and a form Q, the set is cut down to the lattice
    classes inside the truncated HN polygons at both ends.
    """
    realizable = enumerate_subobject_classes(r, budget).proper_nonzero()
    if not (path.normal_form and form is not None and path.direction is not None):
        return realizable
    kd0 = kernel_data(form, path.z0)
    if not operator_norm_below(path.direction, kd0, Fraction(1)):
        return realizable
    inside: Set[Class] = set()
    for t in (Fraction(0), Fraction(1)):
        z_t = path.charge_at(t)
        region = TruncatedPolygon(object_polygon(r, z_t, budget), z_t)
        inside.update(region.integer_classes_within(kernel_data(form, z_t)))
    narrowed = [c for c in realizable if c in inside]
    logger.debug(f"Truncated polygons keep {len(narrowed)} of {len(realizable)} candidate classes")
    return narrowed


def find_walls(
    r: Representation,
    path: DeformationPath,
    form: Optional[QuadraticForm] = None,
    budget: int = DEFAULT_BUDGET,
    width: Fraction = poly.DEFAULT_WIDTH,
) -> List[Wall]:
    """Walls of ``r`` along ``path``, sorted by parameter.

    Raises:
        InputError: For the zero object
        BudgetExceededError: If subobject enumeration exceeds ``budget``
        HeartViolationError: If Z_t is not a stability function at a tested parameter
    """
    if r.is_zero:
        raise InputError("Walls are undefined for the zero object")
    if path.is_constant():
        return []
    candidates = candidate_classes(r, path, form, budget)
    entries: List[Tuple[poly.Root, Class, poly.Poly]] = []
    for a in candidates:
        p = path.cross_poly(r.dims, a)
        if poly.is_zero(p):
            continue
        entries.extend((root, a, p) for root in poly.roots_in_unit_interval(p, width))
    groups = group_roots(entries)
    if not groups:
        return []
    # ε stays below a quarter of every gap so test points never cross another candidate
    gaps = [b.lower - a.upper for a, b in zip(groups, groups[1:])]
    gaps += [groups[0].lower - 0, 1 - groups[-1].upper]
    gaps += [g.upper - g.lower for g in groups if not g.exact]
    positive = [g for g in gaps if g > 0]
    eps = min(positive) / 4 if positive else Fraction(1, 4)

    walls: List[Wall] = []
    for group in groups:
        root, t = group.root, group.value
        lo = root.lower - eps if root.lower - eps >= 0 else None
        hi = root.upper + eps if root.upper + eps <= 1 else None
        before = _status(r, path, lo, budget) if lo is not None else None
        after = _status(r, path, hi, budget) if hi is not None else None
        at = _status(r, path, t, budget) if root.exact else None
        states = {s for s in (before, at, after) if s is not None}
        if len(states) < 2:
            continue
        unstable_at = next(
            (x for x, state in ((lo, before), (t, at), (hi, after)) if state is False), t
        )
        destabilizer = choose_destabilizer(group.members, unstable_at)
        walls.append(Wall(
            t_value=t,
            object_class=r.dims,
            destabilizer_class=destabilizer,
            exact=root.exact,
            t_interval=None if root.exact else (root.lower, root.upper),
            status_before=status_label(before if before is not None else at),
            status_after=status_label(after if after is not None else at),
        ))
        if not root.exact:
            logger.warning(f"Wall of {r.dims} at irrational t in [{float(root.lower):.9f}, "
                           f"{float(root.upper):.9f}]")
    logger.info(f"{len(walls)} walls for {r.dims} from {len(candidates)} candidate classes")
    return walls


def destabilizing_intervals(
    path: DeformationPath, e: Class, a: Class, width: Fraction = poly.DEFAULT_WIDTH
) -> List[Tuple[Fraction, Fraction]]:
    """{t ∈ [0, 1] : φ_t(A) ≥ φ_t(E)} as closed intervals, by exact sign analysis."""
    return poly.nonnegative_intervals(path.cross_poly(e, a), width)


def status_profile(r: Representation, path: DeformationPath, walls: List[Wall],
                   budget: int = DEFAULT_BUDGET) -> List[Tuple[Fraction, bool]]:
    """Semistability at the midpoint of every interval between consecutive walls."""
    cuts = sorted({Fraction(0), Fraction(1)} | {w.t_value for w in walls})
    return [((a + b) / 2, _status(r, path, (a + b) / 2, budget)) for a, b in zip(cuts, cuts[1:])]
