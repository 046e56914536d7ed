"""Harder-Narasimhan polygons, filtrations and mass."""
from stabkit.hn.filtration import (
    FiltrationStep,
    HNFactor,
    HNFiltration,
    greedy_hn_oracle,
    hn_filtration,
    is_semistable,
    is_stable,
    mass,
    object_polygon,
    semistability_check,
)
from stabkit.hn.polygon import HNPolygon, Mass, TruncatedPolygon, hn_polygon, truncated_polygon

__all__ = [
    "FiltrationStep",
    "HNFactor",
    "HNFiltration",
    "HNPolygon",
    "Mass",
    "TruncatedPolygon",
    "greedy_hn_oracle",
    "hn_filtration",
    "hn_polygon",
    "is_semistable",
    "is_stable",
    "mass",
    "object_polygon",
    "semistability_check",
    "truncated_polygon",
]
