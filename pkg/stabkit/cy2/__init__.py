"""2-Calabi-Yau application: roots, the constant C, support certificates and P₀ membership."""
from stabkit.cy2.mukai import (
    Certificate,
    MukaiLattice,
    PathCertificate,
    RootSet,
    SupportConstant,
    build_support_Q,
    certify,
    certify_path,
    check_P0_membership,
    compute_C,
    enumerate_roots_near,
)

__all__ = [
    "Certificate",
    "MukaiLattice",
    "PathCertificate",
    "RootSet",
    "SupportConstant",
    "build_support_Q",
    "certify",
    "certify_path",
    "check_P0_membership",
    "compute_C",
    "enumerate_roots_near",
]
