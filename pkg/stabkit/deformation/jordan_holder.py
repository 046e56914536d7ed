"""Jordan-Hölder factors of semistable objects and the Q ≥ 0 check at walls."""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from stabkit.errors import InputError, InternalInvariantError, NotSemistableError
from stabkit.hn.filtration import is_stable, semistability_check
from stabkit.lattice.charges import CentralCharge, Class
from stabkit.lattice.forms import QuadraticForm
from stabkit.lattice.normalize import KernelData
from stabkit.lattice.phase import PhasePoint, heart_charge
from stabkit.quiver.quiver import Representation
from stabkit.quiver.subobjects import (
    DEFAULT_BUDGET,
    Subrepresentation,
    iter_subrepresentations,
    quotient,
)

logger = logging.getLogger(__name__)

CandidateOrder = Callable[[List[Subrepresentation]], List[Subrepresentation]]


@dataclass(frozen=True)
class JHDecomposition:
    """Multiset of stable factor classes, all of the object's phase."""

    object_class: Class
    factor_classes: Tuple[Class, ...]
    aligned_phase: PhasePoint
    charge: CentralCharge

    def __post_init__(self):
        total = tuple(sum(col) for col in zip(*self.factor_classes))
        if total != tuple(self.object_class):
            raise InternalInvariantError(
                f"JH factors sum to {total}, object class is {self.object_class}"
            )

    @property
    def is_strictly_semistable(self) -> bool:
        return len(self.factor_classes) > 1

    def to_json(self) -> Dict[str, Any]:
        return {
            "object": list(self.object_class),
            "factors": [list(c) for c in self.factor_classes],
            "aligned_phase": self.aligned_phase.to_json(),
        }


def _same_phase_subobjects(
    r: Representation, z: CentralCharge, budget: int
) -> List[Subrepresentation]:
    total = heart_charge(z, r.dims)
    return [
        s for s in iter_subrepresentations(r, budget)
        if any(s.dims) and s.dims != r.dims and total.cross(heart_charge(z, s.dims)) == 0
    ]


def jordan_holder(
    r: Representation,
    z: CentralCharge,
    candidate_order: Optional[CandidateOrder] = None,
    budget: int = DEFAULT_BUDGET,
) -> JHDecomposition:
    """Peel stable subobjects of the same phase until the remainder is stable.

    ``candidate_order`` reorders the same-phase subobjects before each choice; the
    default is the canonical enumeration order.

    Raises:
        InputError: For the zero object
        NotSemistableError: If ``r`` is not semistable; the witness is a destabilizing class
    """
    if r.is_zero:
        raise InputError("Jordan-Hölder factors of the zero object are empty")
    check = semistability_check(r, z, budget)
    if not check:
        raise NotSemistableError(f"Object {r.dims} is not semistable", witness=check.witness)
    aligned = PhasePoint(heart_charge(z, r.dims))
    factors: List[Class] = []
    current = r
    while True:
        if is_stable(current, z, budget):
            factors.append(current.dims)
            break
        candidates = _same_phase_subobjects(current, z, budget)
        if candidate_order is not None:
            candidates = candidate_order(list(candidates))
        chosen = next((s for s in candidates if is_stable(s.as_representation(), z, budget)), None)
        if chosen is None:
            raise InternalInvariantError(f"No stable same-phase subobject in {current.dims}")
        factors.append(chosen.dims)
        current = quotient(current, chosen)
    logger.debug(f"JH factors of {r.dims}: {sorted(factors)}")
    return JHDecomposition(r.dims, tuple(sorted(factors)), aligned, z)


@dataclass(frozen=True)
class WallQReport:
    """Q on the JH factors and on the object, with the triangle-inequality chain in floats.

    ``chain_applicable`` is False when some factor has Q < 0; the inequality chain then
    says nothing and the object value is only reported. Otherwise, when the chain was
    computed, it must hold up to ``tolerance``.
    """

    object_class: Class
    factor_values: Tuple[Tuple[Class, Fraction], ...]
    total: Fraction
    chain_applicable: bool
    charge_sum: Optional[float] = None
    projection_sum: Optional[float] = None
    projection_of_sum: Optional[float] = None
    tolerance: float = 1e-9

    @property
    def chain_holds(self) -> Optional[bool]:
        if not self.chain_applicable or self.charge_sum is None:
            return None
        return (
            self.charge_sum + self.tolerance >= self.projection_sum
            and self.projection_sum + self.tolerance >= self.projection_of_sum
        )

    @property
    def passed(self) -> bool:
        return self.total >= 0 and self.chain_holds is not False

    @property
    def equality(self) -> bool:
        return self.total == 0

    def to_json(self) -> Dict[str, Any]:
        return {
            "object": list(self.object_class),
            "factor_Q": [{"class": list(c), "Q": str(v)} for c, v in self.factor_values],
            "Q": str(self.total),
            "passed": self.passed,
            "equality": self.equality,
            "chain_applicable": self.chain_applicable,
            "chain_holds": self.chain_holds,
            "chain": {
                "sum_abs_Z": self.charge_sum,
                "sum_norm_p": self.projection_sum,
                "norm_sum_p": self.projection_of_sum,
            },
        }


def _sum(classes: Sequence[Class]) -> Tuple[int, ...]:
    return tuple(sum(col) for col in zip(*classes))


def check_Q_at_wall(
    jh: JHDecomposition,
    q: QuadraticForm,
    kd: Optional[KernelData] = None,
    tolerance: float = 1e-9,
) -> WallQReport:
    """Evaluate Q on the JH factors and on the object.

    With kernel data the chain Σ|Z(Eᵢ)| ≥ Σ‖p(Eᵢ)‖ ≥ ‖Σ p(Eᵢ)‖ is computed in floats and,
    when every factor has Q ≥ 0, checked within ``tolerance``.
    """
    values = tuple((c, q(c)) for c in jh.factor_classes)
    total = q(jh.object_class)
    applicable = all(v >= 0 for _, v in values)
    if not applicable:
        negative = [c for c, v in values if v < 0]
        logger.warning(
            f"JH factors {negative} of {jh.object_class} have Q < 0; chain not applicable"
        )
    charge_sum = projection_sum = projection_of_sum = None
    if kd is not None:
        charge_sum = math.fsum(abs(jh.charge(c)) for c in jh.factor_classes)
        projection_sum = math.fsum(kd.norm(c) for c in jh.factor_classes)
        projection_of_sum = kd.norm(_sum(jh.factor_classes))
    report = WallQReport(jh.object_class, values, total, applicable, charge_sum, projection_sum,
                         projection_of_sum, tolerance)
    if report.chain_holds is False:
        logger.warning(
            f"Inequality chain fails on the JH factors of {jh.object_class}: "
            f"{charge_sum:.12f} ≥ {projection_sum:.12f} ≥ {projection_of_sum:.12f}"
        )
    if report.equality:
        logger.info(f"Q vanishes on strictly semistable {jh.object_class}")
    return report
