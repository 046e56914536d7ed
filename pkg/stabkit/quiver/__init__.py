"""Quiver representations over small prime fields as a concrete heart."""
from stabkit.quiver.quiver import (
    Quiver,
    QuiverHeart,
    Representation,
    direct_sum,
    projective,
    representation_corpus,
    simple,
    zero_representation,
)
from stabkit.quiver.subobjects import (
    SubobjectClassSet,
    Subrepresentation,
    enumerate_bounded,
    enumerate_subobject_classes,
    iter_subrepresentations,
    quotient,
    subrep_witness,
)

__all__ = [
    "Quiver",
    "QuiverHeart",
    "Representation",
    "SubobjectClassSet",
    "Subrepresentation",
    "direct_sum",
    "enumerate_bounded",
    "enumerate_subobject_classes",
    "iter_subrepresentations",
    "projective",
    "quotient",
    "representation_corpus",
    "simple",
    "subrep_witness",
    "zero_representation",
]
