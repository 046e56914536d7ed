"""Deformations of central charges: directions, paths, walls and path lifting."""
from stabkit.deformation.direction import (
    DeformationDirection,
    decompose,
    operator_norm,
    operator_norm_below,
)
from stabkit.deformation.jordan_holder import (
    JHDecomposition,
    WallQReport,
    check_Q_at_wall,
    jordan_holder,
)
from stabkit.deformation.lift import (
    ContinuityReport,
    LiftReport,
    continuity_check,
    lift_path,
    split_legs,
)
from stabkit.deformation.path import DeformationPath, is_stability_function_at, kernel_jumps
from stabkit.deformation.walls import Wall, destabilizing_intervals, find_walls, status_profile

__all__ = [
    "ContinuityReport",
    "DeformationDirection",
    "DeformationPath",
    "JHDecomposition",
    "LiftReport",
    "Wall",
    "WallQReport",
    "check_Q_at_wall",
    "continuity_check",
    "decompose",
    "destabilizing_intervals",
    "find_walls",
    "is_stability_function_at",
    "jordan_holder",
    "kernel_jumps",
    "lift_path",
    "operator_norm",
    "operator_norm_below",
    "split_legs",
    "status_profile",
]
