"""Pre-stability conditions assembled from a quiver heart and a stability function."""
import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, List, Optional, Tuple

from stabkit.errors import InputError
from stabkit.hn.filtration import HNFiltration, hn_filtration
from stabkit.lattice.charges import CentralCharge
from stabkit.lattice.gl2 import Gl2Element
from stabkit.lattice.phase import PhasePoint, heart_charge
from stabkit.quiver.quiver import QuiverHeart, Representation
from stabkit.quiver.subobjects import DEFAULT_BUDGET, enumerate_subobject_classes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShiftedObject:
    """E[shift] for a heart object E."""

    representation: Representation
    shift: int = 0

    @property
    def dims(self):
        return self.representation.dims

    def label(self) -> str:
        suffix = f"[{self.shift}]" if self.shift else ""
        return f"{list(self.dims)}{suffix}"


@dataclass(frozen=True)
class PreStability:
    """A stability function on a fixed heart, transported by a GL₂⁺ lift.

    ``charge`` is the stability function on ``heart``; the pre-stability condition it
    describes is ``action`` applied to the pair, so its central charge is g∘Z and its
    phases are g̃ applied to the heart phases. The HN filtrations do not depend on
    ``action``.
    """

    charge: CentralCharge
    heart: QuiverHeart
    generators: Tuple[Representation, ...] = ()
    validated: bool = False
    action: Gl2Element = field(default_factory=Gl2Element.identity)

    @property
    def central_charge(self) -> CentralCharge:
        return self.action.act_charge(self.charge)

    def act(self, g: Gl2Element) -> "PreStability":
        return replace(self, action=g.compose(self.action))

    def transport(self, heart_phase: PhasePoint) -> PhasePoint:
        """Phase under this pre-stability of an object with the given heart phase."""
        charge, shift = self.action.act_phase_pair(heart_phase.charge, heart_phase.shift)
        return PhasePoint(charge, shift)

    def filtration(self, r: Representation, budget: int = DEFAULT_BUDGET) -> HNFiltration:
        if not self.heart.contains(r):
            raise InputError("Object does not belong to the heart of this pre-stability")
        return hn_filtration(r, self.charge, budget)


def make_prestability(
    z: CentralCharge,
    heart: QuiverHeart,
    generator_objects: Optional[Iterable[Representation]] = None,
    budget: int = DEFAULT_BUDGET,
) -> PreStability:
    """Validate Z as a stability function with the HN property on the given generators.

    Every class of every generator and of each of its subobjects must land in H, and
    each generator must admit an HN filtration.

    Raises:
        InputError: If a generator lies outside the heart or has the wrong rank
        HeartViolationError: If some class maps outside H (VanishingChargeError for Z = 0)
    """
    if generator_objects is None:
        generator_objects = heart.generators()
    generators = tuple(generator_objects)
    if z.rank != heart.quiver.vertex_count:
        raise InputError(
            f"Charge of rank {z.rank} on a quiver with {heart.quiver.vertex_count} vertices"
        )
    for r in generators:
        if not heart.contains(r):
            raise InputError(f"Generator {r.dims} is not an object of the heart")
        if r.is_zero:
            continue
        for c in enumerate_subobject_classes(r, budget).nonzero():
            heart_charge(z, c)
        hn_filtration(r, z, budget)
    logger.info(f"Validated stability function on {len(generators)} generators")
    return PreStability(z, heart, generators, True)


def phi_bounds(
    r: Representation, sigma: PreStability, shift: int = 0, budget: int = DEFAULT_BUDGET
) -> Tuple[PhasePoint, PhasePoint]:
    """(φ⁻, φ⁺) of E[shift]: the extreme HN factor phases, both shifted by ``shift``.

    Raises:
        InputError: For the zero object
    """
    if r.is_zero:
        raise InputError("Phase bounds are undefined for the zero object")
    hn = sigma.filtration(r, budget)
    lower = sigma.transport(hn.phi_minus.shifted(shift))
    upper = sigma.transport(hn.phi_plus.shifted(shift))
    return lower, upper


@dataclass(frozen=True)
class SlicingSample:
    """Finite sample of shifted objects with their HN phase bounds under one pre-stability."""

    objects: Tuple[ShiftedObject, ...]
    bounds: Tuple[Tuple[PhasePoint, PhasePoint], ...]

    def __post_init__(self):
        for lower, upper in self.bounds:
            if upper < lower:
                raise InputError("Sample bounds violate φ⁻ ≤ φ⁺")

    def semistable(self) -> List[ShiftedObject]:
        return [o for o, (lo, hi) in zip(self.objects, self.bounds) if lo == hi]


def slicing_sample(
    sigma: PreStability, objects: Iterable[ShiftedObject], budget: int = DEFAULT_BUDGET
) -> SlicingSample:
    objects = tuple(o for o in objects if not o.representation.is_zero)
    bounds = tuple(phi_bounds(o.representation, sigma, o.shift, budget) for o in objects)
    return SlicingSample(objects, bounds)
