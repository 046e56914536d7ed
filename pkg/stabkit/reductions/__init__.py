"""Reductions of (Q, Z) to a nondegenerate form of signature (2, rk − 2)."""
from stabkit.reductions.extension import (
    ExtensionData,
    chain_embedding,
    extend_degenerate,
    extend_signature,
    lift_charge,
    radical,
    reduce_and_lift,
)

__all__ = [
    "ExtensionData",
    "chain_embedding",
    "extend_degenerate",
    "extend_signature",
    "lift_charge",
    "radical",
    "reduce_and_lift",
]
