"""Phases, pre-stability conditions and sample distances between slicings."""
from stabkit.lattice.phase import PhasePoint, phase
from stabkit.slicing.distance import DistanceReport, DistanceRow, distance_dprime, distance_rows
from stabkit.slicing.prestability import (
    PreStability,
    ShiftedObject,
    SlicingSample,
    make_prestability,
    phi_bounds,
    slicing_sample,
)

__all__ = [
    "DistanceReport",
    "DistanceRow",
    "PhasePoint",
    "PreStability",
    "ShiftedObject",
    "SlicingSample",
    "distance_dprime",
    "distance_rows",
    "make_prestability",
    "phase",
    "phi_bounds",
    "slicing_sample",
]
