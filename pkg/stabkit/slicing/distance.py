"""Sample-based comparison of slicings.

For σ₁-semistable E of σ₁-phase φ, with ψ± the σ₂ HN phase bounds, the distance is the
supremum of max(ψ⁺(E) − φ, φ − ψ⁻(E)). Over a finite sample this is only a lower bound
for the supremum over the whole category, and reports label it as such.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Tuple

from stabkit.errors import InputError
from stabkit.hn.filtration import is_semistable
from stabkit.lattice.phase import PhasePoint, phase
from stabkit.quiver.subobjects import DEFAULT_BUDGET
from stabkit.slicing.prestability import PreStability, ShiftedObject, phi_bounds

logger = logging.getLogger(__name__)

DPRIME_LABEL = "d′ lower bound (sample)"


@dataclass(frozen=True)
class DistanceRow:
    obj: ShiftedObject
    phi: PhasePoint
    psi_minus: PhasePoint
    psi_plus: PhasePoint

    @property
    def value(self) -> float:
        return max(self.psi_plus.value - self.phi.value, self.phi.value - self.psi_minus.value)

    def to_json(self) -> Dict[str, Any]:
        return {
            "object": self.obj.label(),
            "phi": self.phi.value,
            "psi_minus": self.psi_minus.value,
            "psi_plus": self.psi_plus.value,
            "value": self.value,
        }


@dataclass(frozen=True)
class DistanceReport:
    rows: Tuple[DistanceRow, ...]
    skipped: Tuple[ShiftedObject, ...]
    label: str = DPRIME_LABEL

    @property
    def d_prime(self) -> float:
        return max(row.value for row in self.rows)

    def witness(self) -> ShiftedObject:
        return max(self.rows, key=lambda row: row.value).obj

    def to_json(self) -> Dict[str, Any]:
        return {
            "d_prime": self.d_prime,
            "label": self.label,
            "per_object": [row.to_json() for row in self.rows],
            "skipped_unstable": [o.label() for o in self.skipped],
        }


def distance_rows(
    sigma1: PreStability,
    sigma2: PreStability,
    sample: Iterable[ShiftedObject],
    budget: int = DEFAULT_BUDGET,
) -> DistanceReport:
    """Per-object phase drift for the σ₁-semistable members of the sample.

    Raises:
        InputError: If no sample object is σ₁-semistable
    """
    rows: List[DistanceRow] = []
    skipped: List[ShiftedObject] = []
    for obj in sample:
        r = obj.representation
        if r.is_zero or not is_semistable(r, sigma1.charge, budget):
            skipped.append(obj)
            continue
        phi = sigma1.transport(phase(sigma1.charge, r.dims, obj.shift))
        psi_minus, psi_plus = phi_bounds(r, sigma2, obj.shift, budget)
        rows.append(DistanceRow(obj, phi, psi_minus, psi_plus))
    if not rows:
        raise InputError("No σ₁-semistable object in the sample")
    if skipped:
        logger.info(f"Skipped {len(skipped)} sample objects that are not σ₁-semistable")
    return DistanceReport(tuple(rows), tuple(skipped))


def distance_dprime(
    sigma1: PreStability,
    sigma2: PreStability,
    sample: Iterable[ShiftedObject],
    budget: int = DEFAULT_BUDGET,
) -> float:
    """Maximum phase drift over the σ₁-semistable sample objects."""
    return distance_rows(sigma1, sigma2, sample, budget).d_prime
