"""HN filtrations, semistability and mass of quiver representations.

Everything here works by brute force over the subrepresentations enumerated in
:mod:`stabkit.quiver.subobjects`; phase comparisons are exact cross products.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from stabkit.errors import CheckResult, InputError, InternalInvariantError
from stabkit.hn.polygon import HNPolygon, Mass, hn_polygon
from stabkit.lattice.charges import CentralCharge, Class, class_sub
from stabkit.lattice.phase import PhasePoint, heart_charge
from stabkit.quiver.quiver import Representation
from stabkit.quiver.subobjects import (
    DEFAULT_BUDGET,
    Subrepresentation,
    enumerate_subobject_classes,
    iter_subrepresentations,
    quotient,
    subrep_witness,
    zero_subobject,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiltrationStep:
    """Eᵢ together with the phase of Eᵢ/Eᵢ₋₁."""

    dims: Class
    witness: Subrepresentation
    phase: PhasePoint


@dataclass(frozen=True)
class HNFactor:
    dims: Class
    phase: PhasePoint
    representation: Representation


@dataclass(frozen=True)
class HNFiltration:
    """0 = E₀ ⊂ E₁ ⊂ … ⊂ E_k = E with semistable factors of strictly decreasing phase."""

    steps: Tuple[FiltrationStep, ...]
    factors: Tuple[HNFactor, ...]
    polygon: HNPolygon

    def __post_init__(self):
        for a, b in zip(self.factors, self.factors[1:]):
            if not b.phase < a.phase:
                raise InternalInvariantError("HN factor phases are not strictly decreasing")

    @property
    def factor_classes(self) -> List[Class]:
        return [f.dims for f in self.factors]

    @property
    def phi_plus(self) -> PhasePoint:
        return self.factors[0].phase

    @property
    def phi_minus(self) -> PhasePoint:
        return self.factors[-1].phase

    def to_json(self) -> Dict[str, Any]:
        return {
            "steps": [list(s.dims) for s in self.steps],
            "factors": [
                {"class": list(f.dims), "phase": f.phase.to_json()} for f in self.factors
            ],
            "vertices": [list(v.to_json()) for v in self.polygon.vertices],
        }


def object_polygon(r: Representation, z: CentralCharge, budget: int = DEFAULT_BUDGET) -> HNPolygon:
    """HN polygon of a representation from its enumerated subobject classes."""
    return hn_polygon(enumerate_subobject_classes(r, budget), z, r.dims)


def semistability_check(
    r: Representation, z: CentralCharge, budget: int = DEFAULT_BUDGET
) -> CheckResult:
    """Search for a subobject of strictly larger phase.

    Returns:
        CheckResult whose witness is the first destabilizing class in canonical order
    """
    if r.is_zero:
        raise InputError("Semistability is undefined for the zero object")
    total = heart_charge(z, r.dims)
    for c in enumerate_subobject_classes(r, budget).nonzero():
        value = heart_charge(z, c)
        if total.cross(value) > 0:
            logger.debug(f"Class {c} destabilizes {r.dims}: cross = {total.cross(value)}")
            return CheckResult(False, c, f"φ({c}) > φ({r.dims})")
    return CheckResult(True)


def is_semistable(r: Representation, z: CentralCharge, budget: int = DEFAULT_BUDGET) -> bool:
    return semistability_check(r, z, budget).passed


def is_stable(r: Representation, z: CentralCharge, budget: int = DEFAULT_BUDGET) -> bool:
    """No proper nonzero subobject has phase ≥ φ(E)."""
    if r.is_zero:
        raise InputError("Stability is undefined for the zero object")
    total = heart_charge(z, r.dims)
    for c in enumerate_subobject_classes(r, budget).proper_nonzero():
        if total.cross(heart_charge(z, c)) >= 0:
            return False
    return True


def hn_filtration(
    r: Representation, z: CentralCharge, budget: int = DEFAULT_BUDGET
) -> HNFiltration:
    """HN filtration read off the left boundary of the HN polygon.

    Each polygon vertex is realized by a witness subobject; consecutive witnesses
    must be nested and their quotients semistable.

    Raises:
        InputError: For the zero object
        HeartViolationError: If a subobject class maps outside H
        InternalInvariantError: If the witnesses do not form a filtration
    """
    if r.is_zero:
        raise InputError("HN filtration of the zero object is empty")
    polygon = object_polygon(r, z, budget)
    previous = zero_subobject(r)
    steps: List[FiltrationStep] = []
    factors: List[HNFactor] = []
    edges = zip(polygon.vertices, polygon.vertices[1:])
    for dims, (a, b) in zip(polygon.vertex_classes[1:], edges):
        witness = subrep_witness(r, dims, budget)
        if witness is None:
            raise InternalInvariantError(f"No subobject realizes polygon vertex class {dims}")
        if not witness.contains(previous):
            raise InternalInvariantError(
                f"Witness of class {dims} does not contain the previous step {previous.dims}"
            )
        factor_rep = quotient(witness.as_representation(), previous.relative_to(witness))
        factor_dims = class_sub(dims, previous.dims)
        if factor_rep.dims != factor_dims:
            raise InternalInvariantError(
                f"Quotient has class {factor_rep.dims}, expected {factor_dims}"
            )
        check = semistability_check(factor_rep, z, budget)
        if not check:
            raise InternalInvariantError(
                f"HN factor {factor_dims} is destabilized by {check.witness}"
            )
        step_phase = PhasePoint(b - a)
        steps.append(FiltrationStep(dims, witness, step_phase))
        factors.append(HNFactor(factor_dims, step_phase, factor_rep))
        previous = witness
    filtration = HNFiltration(tuple(steps), tuple(factors), polygon)
    logger.debug(f"HN filtration of {r.dims}: factors {filtration.factor_classes}")
    return filtration


def mass(r: Representation, z: CentralCharge, budget: int = DEFAULT_BUDGET) -> Mass:
    """Length of the left boundary of the HN polygon; the zero object has mass 0."""
    if r.is_zero:
        return Mass(())
    return object_polygon(r, z, budget).mass()


def greedy_hn_oracle(
    r: Representation, z: CentralCharge, budget: int = DEFAULT_BUDGET
) -> List[Class]:
    """HN factor classes by repeatedly splitting off the maximal destabilizing subobject.

    Independent of the polygon: among nonzero subobjects of maximal phase the one of
    largest |Z| is removed and the procedure continues on the quotient.
    """
    factors: List[Class] = []
    current = r
    while not current.is_zero:
        best: Optional[Subrepresentation] = None
        best_phase: Optional[PhasePoint] = None
        for s in iter_subrepresentations(current, budget):
            if not any(s.dims):
                continue
            value = heart_charge(z, s.dims)
            ph = PhasePoint(value)
            longer = best is not None and ph == best_phase and z(best.dims).abs2() < value.abs2()
            if best is None or best_phase < ph or longer:
                best, best_phase = s, ph
        factors.append(best.dims)
        current = quotient(current, best)
    return factors
