"""Exact linear algebra for lattices, central charges and quadratic forms."""
from stabkit.lattice.charges import CentralCharge, Class, as_class, evaluate, kernel
from stabkit.lattice.forms import (
    QuadraticForm,
    definiteness_witness,
    diagonalize,
    is_negative_definite_on,
    signature,
)
from stabkit.lattice.gl2 import Gl2Element, gl2_act
from stabkit.lattice.normalize import KernelData, Normalization, kernel_data, normalize
from stabkit.lattice.rational import RationalComplex, format_rational, parse_rational

__all__ = [
    "CentralCharge",
    "Class",
    "Gl2Element",
    "KernelData",
    "Normalization",
    "QuadraticForm",
    "RationalComplex",
    "as_class",
    "definiteness_witness",
    "diagonalize",
    "evaluate",
    "format_rational",
    "gl2_act",
    "is_negative_definite_on",
    "kernel",
    "kernel_data",
    "normalize",
    "parse_rational",
    "signature",
]
