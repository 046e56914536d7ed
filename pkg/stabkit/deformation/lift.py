"""Lifting a path of central charges to pre-stability conditions on a fixed heart.

A path with both real and imaginary velocity is split into a real leg followed by an
imaginary leg; the imaginary leg becomes real after conjugation by the rotation −π/2,
so the heart is held fixed on every leg. Each leg is halved until the operator norm of
its direction, measured against the kernel data of the start charge of every piece, is
below the margin. Checks then run on the grid, at piece boundaries, at kernel jumps
and at every wall of the corpus.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from stabkit.deformation import poly
from stabkit.deformation.direction import DeformationDirection, operator_norm, operator_norm_below
from stabkit.deformation.jordan_holder import WallQReport, check_Q_at_wall, jordan_holder
from stabkit.deformation.path import (
    DeformationPath,
    as_parameter,
    is_stability_function_at,
    kernel_jumps,
)
from stabkit.deformation.walls import Wall, find_walls
from stabkit.errors import HeartViolationError, InputError, NotNegativeDefiniteError, PathExitError
from stabkit.hn.filtration import hn_filtration, is_stable
from stabkit.lattice import linalg
from stabkit.lattice.charges import CentralCharge, Class
from stabkit.lattice.forms import QuadraticForm
from stabkit.lattice.gl2 import Gl2Element
from stabkit.lattice.normalize import KernelData, kernel_data
from stabkit.quiver.quiver import Representation
from stabkit.quiver.subobjects import DEFAULT_BUDGET, enumerate_subobject_classes
from stabkit.slicing.distance import distance_rows
from stabkit.slicing.prestability import PreStability, ShiftedObject

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = Fraction(1, 2)
DEFAULT_MAX_SUBDIVISIONS = 8


@dataclass(frozen=True)
class ContinuityReport:
    """d′(σ₀, σ_t) over a sample against (1/π)·arcsin(min(1, t‖u‖))."""

    t: Fraction
    d_prime: float
    bound: float
    linear_bound: float
    witness: str
    tolerance: float = 1e-9

    @property
    def passed(self) -> bool:
        return self.d_prime <= self.bound + self.tolerance

    @property
    def flagged(self) -> bool:
        """Between the linear estimate (1/π)t‖u‖ and the arcsin bound."""
        return self.linear_bound < self.d_prime <= self.bound + self.tolerance

    def to_json(self) -> Dict[str, Any]:
        return {
            "t": str(self.t),
            "d_prime": self.d_prime,
            "bound": self.bound,
            "linear_bound": self.linear_bound,
            "passed": self.passed,
            "flagged": self.flagged,
            "witness": self.witness,
        }


def continuity_check(
    sigma0: PreStability,
    path: DeformationPath,
    t: Any,
    sample: Iterable[ShiftedObject],
    u_norm: Optional[float] = None,
    budget: int = DEFAULT_BUDGET,
    tolerance: float = 1e-9,
) -> ContinuityReport:
    """Compare σ₀ with σ_t = (Z_t, same heart) on the σ₀-semistable sample objects.

    ``u_norm`` defaults to 1, which gives the bound (1/π)·arcsin(t).

    Raises:
        InputError: If t ∉ (0, 1) or no sample object is σ₀-semistable
    """
    t = as_parameter(t)
    z_t = path.charge_at(t)
    if not 0 < t < 1:
        raise InputError(f"Continuity is checked for t in (0, 1), got {t}")
    norm = 1.0 if u_norm is None else u_norm
    sigma_t = replace(sigma0, charge=z_t)
    distances = distance_rows(sigma0, sigma_t, sample, budget)
    scaled = float(t) * norm
    report = ContinuityReport(
        t=t,
        d_prime=distances.d_prime,
        bound=math.asin(min(1.0, scaled)) / math.pi,
        linear_bound=scaled / math.pi,
        witness=distances.witness().label(),
        tolerance=tolerance,
    )
    if report.flagged:
        logger.warning(
            f"d′ = {report.d_prime:.6f} at t = {t} exceeds (1/π)t‖u‖ = {report.linear_bound:.6f}"
        )
    return report


@dataclass(frozen=True)
class Leg:
    index: int
    kind: str
    path: DeformationPath
    conjugation: Gl2Element = field(default_factory=Gl2Element.identity)

    def conjugated_velocity(self) -> CentralCharge:
        """g∘W; real for every leg."""
        return self.conjugation.act_charge(self.path.velocity)


def split_legs(path: DeformationPath) -> List[Leg]:
    """Real leg then imaginary leg; a path moving in one direction only has a single leg."""
    if path.is_constant():
        return []
    if path.is_real:
        return [Leg(0, "real", path)]
    rotate = Gl2Element.quarter_turn(-1)
    if path.is_imaginary:
        return [Leg(0, "imaginary", path, rotate)]
    zero_row = tuple(Fraction(0) for _ in range(path.rank))
    real = DeformationPath(path.z0, (path.w[0], zero_row))
    imaginary = DeformationPath(real.end, (zero_row, path.w[1]))
    return [Leg(0, "real", real), Leg(1, "imaginary", imaginary, rotate)]


@dataclass(frozen=True)
class ObjectStatus:
    dims: Class
    status: str
    factors: Tuple[Class, ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "object": list(self.dims),
            "status": self.status,
            "factors": [list(c) for c in self.factors],
        }


@dataclass(frozen=True)
class LiftRow:
    """All checks at one parameter of one leg."""

    leg: int
    kind: str
    t: Fraction
    global_t: Optional[Fraction]
    kernel_dim: int
    reasons: Tuple[str, ...]
    statuses: Tuple[ObjectStatus, ...]
    support_violations: Tuple[Class, ...]
    wall_checks: Tuple[WallQReport, ...]
    continuity: Optional[ContinuityReport] = None
    continuity_enforced: bool = False

    @property
    def passed(self) -> bool:
        if self.support_violations or not all(w.passed for w in self.wall_checks):
            return False
        if self.continuity is not None and self.continuity_enforced:
            return self.continuity.passed
        return True

    def to_json(self) -> Dict[str, Any]:
        return {
            "leg": self.leg,
            "kind": self.kind,
            "t": str(self.t),
            "t_float": float(self.t),
            "global_t": None if self.global_t is None else str(self.global_t),
            "kernel_dim": self.kernel_dim,
            "reasons": list(self.reasons),
            "objects": [s.to_json() for s in self.statuses],
            "support_violations": [list(c) for c in self.support_violations],
            "wall_checks": [w.to_json() for w in self.wall_checks],
            "continuity": None if self.continuity is None else self.continuity.to_json(),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class LegSummary:
    leg: Leg
    pieces: int
    operator_norm: float
    walls: Tuple[Wall, ...]
    kernel_jumps: Tuple[Fraction, ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "index": self.leg.index,
            "kind": self.leg.kind,
            "conjugation": self.leg.conjugation.to_json(),
            "path": self.leg.path.to_json(),
            "pieces": self.pieces,
            "operator_norm": self.operator_norm,
            "walls": [w.to_json() for w in self.walls],
            "kernel_jumps": [str(t) for t in self.kernel_jumps],
        }


@dataclass(frozen=True)
class LiftReport:
    rows: Tuple[LiftRow, ...]
    legs: Tuple[LegSummary, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def walls(self) -> List[Wall]:
        return [w for leg in self.legs for w in leg.walls]

    def row_at(self, t: Fraction, leg: int = 0) -> LiftRow:
        for row in self.rows:
            if row.leg == leg and row.t == t:
                return row
        raise InputError(f"No row at t = {t} on leg {leg}")

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "legs": [leg.to_json() for leg in self.legs],
            "rows": [row.to_json() for row in self.rows],
        }


def _kernel_or_exit(q: QuadraticForm, z: CentralCharge, t: Fraction, leg: int) -> KernelData:
    try:
        return kernel_data(q, z)
    except NotNegativeDefiniteError as e:
        raise PathExitError(
            f"Path leaves the admissible set on leg {leg} at t = {t}: {e}", witness=e.witness, t=t
        ) from e


def _subdivide(
    leg: Leg, q: QuadraticForm, margin: Fraction, max_subdivisions: int
) -> Tuple[List[Fraction], float]:
    """Breakpoints 0 = s₀ < … < s_n = 1 with every piece's direction below the margin."""
    for level in range(max_subdivisions + 1):
        n = 2 ** level
        piece_velocity = linalg.scale(leg.path.w, Fraction(1, n))
        norms = []
        for i in range(n):
            s = Fraction(i, n)
            kd = _kernel_or_exit(q, leg.path.charge_at(s), s, leg.index)
            u = DeformationDirection.restricted(piece_velocity, kd)
            if not operator_norm_below(u, kd, margin):
                break
            norms.append(operator_norm(u, kd))
        else:
            if level:
                logger.info(f"Leg {leg.index} subdivided into {n} pieces")
            return [Fraction(i, n) for i in range(n + 1)], max(norms)
        logger.debug(f"Leg {leg.index}: operator norm not below {margin} with {n} pieces")
    raise PathExitError(
        f"Operator norm on leg {leg.index} stays ≥ {margin} after {2 ** max_subdivisions} pieces",
        witness=leg.index,
    )


def _heart_classes(corpus: Sequence[Representation], budget: int) -> List[Class]:
    classes: Set[Class] = set()
    for r in corpus:
        if not r.is_zero:
            classes.update(enumerate_subobject_classes(r, budget).nonzero())
    return sorted(classes)


def _row(
    leg: Leg,
    s: Fraction,
    reasons: Tuple[str, ...],
    q: QuadraticForm,
    corpus: Sequence[Representation],
    heart_classes: Sequence[Class],
    single_leg: bool,
    budget: int,
    tolerance: float = 1e-9,
) -> LiftRow:
    z_s = leg.path.charge_at(s)
    kd = _kernel_or_exit(q, z_s, s, leg.index)
    check = is_stability_function_at(leg.path, s, heart_classes)
    if not check:
        raise HeartViolationError(
            f"Leg {leg.index} at t = {s}: {check.detail}", witness=check.witness
        )
    statuses: List[ObjectStatus] = []
    violations: Set[Class] = set()
    wall_checks: List[WallQReport] = []
    for r in corpus:
        if r.is_zero:
            continue
        hn = hn_filtration(r, z_s, budget)
        factors = tuple(hn.factor_classes)
        violations.update(c for c in factors if q(c) < 0)
        if len(factors) > 1:
            status = "unstable"
        elif is_stable(r, z_s, budget):
            status = "stable"
        else:
            status = "strictly semistable"
            jh = jordan_holder(r, z_s, budget=budget)
            wall_checks.append(check_Q_at_wall(jh, q, kd, tolerance))
        statuses.append(ObjectStatus(r.dims, status, factors))
    return LiftRow(
        leg=leg.index,
        kind=leg.kind,
        t=s,
        global_t=s if single_leg else None,
        kernel_dim=kd.dim,
        reasons=reasons,
        statuses=tuple(statuses),
        support_violations=tuple(sorted(violations)),
        wall_checks=tuple(wall_checks),
    )


def lift_path(
    sigma0: PreStability,
    q: QuadraticForm,
    path: DeformationPath,
    steps: int,
    corpus: Optional[Sequence[Representation]] = None,
    budget: int = DEFAULT_BUDGET,
    margin: Fraction = DEFAULT_MARGIN,
    max_subdivisions: int = DEFAULT_MAX_SUBDIVISIONS,
    tolerance: float = 1e-9,
    corpus_max_dim: int = 2,
    width: Fraction = poly.DEFAULT_WIDTH,
) -> LiftReport:
    """Lift ``path`` starting at σ₀ and verify the support property along the way.

    ``width`` bounds the isolating intervals of irrational walls.

    Raises:
        InputError: If σ₀ is not validated, the charges disagree or ``steps`` < 1
        PathExitError: If Ker Z_t is not Q-negative-definite at a tested parameter, or a
            leg cannot be subdivided below the norm margin
        HeartViolationError: If Z_t stops being a stability function on the corpus
    """
    if not sigma0.validated:
        raise InputError("Lifting needs a validated pre-stability condition")
    if sigma0.charge != path.z0:
        raise InputError("Path does not start at the charge of σ₀")
    if steps < 1:
        raise InputError(f"Need at least one grid step, got {steps}")
    corpus = list(corpus) if corpus is not None else list(sigma0.heart.corpus(corpus_max_dim))
    heart_classes = _heart_classes(corpus, budget)
    legs = split_legs(path)
    logger.info(f"Lifting over {len(legs)} legs with {len(corpus)} corpus objects")

    if not legs:
        start = Leg(0, "constant", path)
        row = _row(start, Fraction(0), ("start",), q, corpus, heart_classes, True, budget,
                   tolerance)
        return LiftReport((row,), ())

    rows: List[LiftRow] = []
    summaries: List[LegSummary] = []
    for leg in legs:
        breakpoints, norm = _subdivide(leg, q, margin, max_subdivisions)
        jumps = kernel_jumps(leg.path)
        reasons: Dict[Fraction, List[str]] = {}
        for i in range(steps + 1):
            reasons.setdefault(Fraction(i, steps), []).append("grid")
        for s in breakpoints:
            reasons.setdefault(s, []).append("piece")
        for s in jumps:
            reasons.setdefault(s, []).append("kernel jump")
        # stability function and kernel first, so walls are only searched on admissible legs
        for s in sorted(reasons):
            _kernel_or_exit(q, leg.path.charge_at(s), s, leg.index)
            check = is_stability_function_at(leg.path, s, heart_classes)
            if not check:
                raise HeartViolationError(
                    f"Leg {leg.index} at t = {s}: {check.detail}", witness=check.witness
                )
        walls: List[Wall] = []
        for r in corpus:
            if not r.is_zero:
                walls.extend(find_walls(r, leg.path, q, budget, width))
        walls.sort(key=lambda w: (w.t_value, w.object_class))
        for w in walls:
            reasons.setdefault(w.t_value, []).append(f"wall {list(w.object_class)}")

        single = len(legs) == 1
        leg_rows = [
            _row(leg, s, tuple(reasons[s]), q, corpus, heart_classes, single, budget, tolerance)
            for s in sorted(reasons)
        ]
        leg_rows = _attach_continuity(leg, leg_rows, corpus, sigma0, q, budget, tolerance)
        rows.extend(leg_rows)
        summaries.append(LegSummary(leg, len(breakpoints) - 1, norm, tuple(walls), tuple(jumps)))
        logger.info(
            f"Leg {leg.index} ({leg.kind}): {len(leg_rows)} checkpoints, {len(walls)} walls"
        )
    return LiftReport(tuple(rows), tuple(summaries))


def _attach_continuity(
    leg: Leg,
    rows: List[LiftRow],
    corpus: Sequence[Representation],
    sigma0: PreStability,
    q: QuadraticForm,
    budget: int,
    tolerance: float,
) -> List[LiftRow]:
    z_a = leg.path.z0
    sigma_a = replace(sigma0, charge=z_a)
    sample = [ShiftedObject(r) for r in corpus if not r.is_zero]
    u_norm = None
    if leg.path.normal_form and leg.path.direction is not None:
        u_norm = operator_norm(leg.path.direction, kernel_data(q, z_a))
    out = []
    for row in rows:
        if 0 < row.t < 1:
            try:
                report = continuity_check(
                    sigma_a, leg.path, row.t, sample, u_norm, budget, tolerance
                )
            except InputError:
                report = None
            row = replace(row, continuity=report, continuity_enforced=leg.path.normal_form)
        out.append(row)
    return out
