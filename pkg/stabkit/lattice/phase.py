"""Phases of heart classes and their shifts, compared exactly."""
import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Any, Dict, Sequence

from stabkit.errors import HeartViolationError, InputError, VanishingChargeError
from stabkit.lattice.charges import CentralCharge
from stabkit.lattice.rational import RationalComplex


def heart_charge(z: CentralCharge, c: Sequence[int]) -> RationalComplex:
    """Z(c) for a nonzero heart class, checked to lie in the semi-closed upper half plane.

    Raises:
        VanishingChargeError: If Z(c) = 0
        HeartViolationError: If Z(c) lies outside H
    """
    value = z(c)
    if value.is_zero():
        raise VanishingChargeError(f"Central charge vanishes on class {tuple(c)}", witness=tuple(c))
    if not value.in_upper_half_plane():
        raise HeartViolationError(
            f"Class {tuple(c)} maps to {value}, outside the upper half plane", witness=tuple(c)
        )
    return value


@total_ordering
@dataclass(frozen=True, eq=False)
class PhasePoint:
    """φ = arg(charge)/π + shift, with ``charge`` in H so the first term lies in (0, 1].

    Two phase points compare by shift first and then by the cross product of their
    charges, so no float ever decides an ordering.
    """

    charge: RationalComplex
    shift: int = 0

    def __post_init__(self):
        if not self.charge.in_upper_half_plane():
            raise InputError(f"Phase representative {self.charge} is not in H")

    @property
    def value(self) -> float:
        return math.atan2(float(self.charge.im), float(self.charge.re)) / math.pi + self.shift

    def _key(self):
        c = self.charge
        if c.im == 0:
            return (self.shift, "real")
        # direction is determined by the slope of the charge
        return (self.shift, c.re / c.im)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, PhasePoint):
            return NotImplemented
        return self.shift == other.shift and self.charge.cross(other.charge) == 0

    def __hash__(self) -> int:
        return hash(self._key())

    def __lt__(self, other: "PhasePoint") -> bool:
        if self.shift != other.shift:
            return self.shift < other.shift
        # counterclockwise means larger phase
        return self.charge.cross(other.charge) > 0

    def shifted(self, k: int) -> "PhasePoint":
        return PhasePoint(self.charge, self.shift + k)

    def __str__(self) -> str:
        return f"{self.value:.6f}"

    def to_json(self) -> Dict[str, Any]:
        return {
            "charge": list(self.charge.to_json()),
            "shift": self.shift,
            "value": self.value,
        }


def phase(z: CentralCharge, v: Sequence[int], shift: int = 0) -> PhasePoint:
    """Phase of a heart class, optionally shifted.

    Raises:
        VanishingChargeError: If Z(v) = 0
        HeartViolationError: If Z(v) lies outside H
    """
    return PhasePoint(heart_charge(z, v), shift)


def phase_of_charge(w: RationalComplex) -> PhasePoint:
    """Phase of a value in H, or of −w shifted down by one when w lies in −H."""
    if w.in_upper_half_plane():
        return PhasePoint(w, 0)
    if w.is_zero():
        raise VanishingChargeError("Zero has no phase", witness=w.to_json())
    return PhasePoint(-w, -1)
