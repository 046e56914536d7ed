"""Deformation directions u: Ker Z → ℂ, their operator norms, and charge decomposition."""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Tuple

import numpy as np

from stabkit.errors import (
    InputError,
    InternalInvariantError,
    MathCheckError,
    NotNegativeDefiniteError,
)
from stabkit.lattice import linalg
from stabkit.lattice.charges import CentralCharge
from stabkit.lattice.forms import QuadraticForm, is_positive_definite
from stabkit.lattice.gl2 import Gl2Element
from stabkit.lattice.linalg import Matrix
from stabkit.lattice.normalize import KernelData, kernel_data

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeformationDirection:
    """2×k rational matrix of u in the kernel basis; ``real`` forces a zero imaginary row."""

    u: Matrix
    real: bool = False

    def __post_init__(self):
        rows = linalg.matrix(self.u) if self.u else ((), ())
        if len(rows) != 2 or len(rows[0]) != len(rows[1]):
            raise InputError("Deformation direction must be a 2×k matrix")
        if self.real and any(x != 0 for x in rows[1]):
            raise InputError("Real deformation direction has a nonzero imaginary row")
        object.__setattr__(self, "u", rows)

    @classmethod
    def zero(cls, k: int) -> "DeformationDirection":
        return cls(linalg.zeros(2, k) if k else ((), ()), real=True)

    @classmethod
    def restricted(cls, w: Matrix, kd: KernelData) -> "DeformationDirection":
        """The restriction of a 2×m charge difference W to Ker Z."""
        u = CentralCharge(w).on_basis(kd.kernel_basis) if kd.dim else ((), ())
        return cls(u, real=all(x == 0 for x in u[1]))

    @property
    def dim(self) -> int:
        return len(self.u[0])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.u for x in row)

    def as_charge_difference(self, kd: KernelData) -> Matrix:
        """u∘p as a 2×m matrix."""
        if self.dim != kd.dim:
            raise InputError(
                f"Direction on a {self.dim}-dimensional kernel, kernel has dimension {kd.dim}"
            )
        if not kd.dim:
            return linalg.zeros(2, kd.form.rank)
        return linalg.matmul(self.u, kd.coords_matrix)

    def to_json(self) -> Dict[str, Any]:
        return {"u": linalg.format_matrix(self.u) if self.dim else [[], []], "real": self.real}


def _norm_matrix(u: DeformationDirection, kd: KernelData) -> Matrix:
    """A = U H⁻¹ Uᵀ, whose largest eigenvalue is ‖u‖²."""
    if u.dim != kd.dim:
        raise InputError(
            f"Direction on a {u.dim}-dimensional kernel, kernel has dimension {kd.dim}"
        )
    if not is_positive_definite(kd.neg_gram):
        raise NotNegativeDefiniteError("Kernel Gram of −Q is not positive definite")
    h_inv = linalg.inverse(kd.neg_gram)
    return linalg.matmul(linalg.matmul(u.u, h_inv), linalg.transpose(u.u, 2))


def operator_norm(u: DeformationDirection, kd: KernelData) -> float:
    """Operator norm of u: (Ker Z, ‖·‖) → (ℂ, |·|); 0 on a trivial kernel."""
    if kd.dim == 0 and u.dim == 0:
        return 0.0
    a = np.array([[float(x) for x in row] for row in _norm_matrix(u, kd)])
    top = float(np.linalg.eigvalsh(a)[-1])
    return math.sqrt(max(top, 0.0))


def operator_norm_below(u: DeformationDirection, kd: KernelData, bound: Fraction) -> bool:
    """Exact test of ‖u‖ < bound: bound²·I − U H⁻¹ Uᵀ must be positive definite."""
    bound = Fraction(bound)
    if bound <= 0:
        return False
    if kd.dim == 0 and u.dim == 0:
        return True
    gap = linalg.add(
        linalg.scale(linalg.identity(2), bound * bound), linalg.scale(_norm_matrix(u, kd), -1)
    )
    return is_positive_definite(gap)


def _complex_ratio(target, source) -> Matrix:
    """Real 2×2 matrix of multiplication by target/source."""
    d = source.abs2()
    a = (target.re * source.re + target.im * source.im) / d
    b = (target.im * source.re - target.re * source.im) / d
    return ((a, -b), (b, a))


def decompose(
    zp: CentralCharge, z: CentralCharge, q: QuadraticForm
) -> Tuple[Gl2Element, DeformationDirection]:
    """Write g∘Z′ = Z + u∘p with g ∈ GL₂⁺(ℚ) matching Z′ to Z on K⊥.

    Raises:
        NotNegativeDefiniteError: If Ker Z or Ker Z′ is not Q-negative-definite
        MathCheckError: If Z′ is degenerate on K⊥ or no orientation-preserving g exists
    """
    kd = kernel_data(q, z)
    kernel_data(q, zp)
    comp = kd.complement_basis()
    if len(comp) == 2:
        m_z, m_zp = z.on_basis(comp), zp.on_basis(comp)
        if linalg.det(m_zp) == 0:
            raise MathCheckError("Z′ is degenerate on the complement of Ker Z", witness=comp)
        g_matrix = linalg.matmul(m_z, linalg.inverse(m_zp))
        if linalg.det(g_matrix) <= 0:
            raise MathCheckError("Z′ reverses orientation on the complement of Ker Z",
                                 witness=linalg.format_matrix(g_matrix))
    elif len(comp) == 1:
        source, target = zp(comp[0]), z(comp[0])
        if source.is_zero():
            raise MathCheckError("Z′ vanishes on the complement of Ker Z", witness=comp[0])
        g_matrix = _complex_ratio(target, source)
    elif not comp:
        g_matrix = linalg.identity(2)
    else:
        raise InternalInvariantError(f"Complement of Ker Z has dimension {len(comp)} > 2")
    g = Gl2Element.principal(g_matrix)
    moved = g.act_charge(zp)
    u = DeformationDirection.restricted((moved - z).matrix, kd)
    rebuilt = linalg.add(z.matrix, u.as_charge_difference(kd))
    if rebuilt != moved.matrix:
        raise InternalInvariantError("Reconstruction g∘Z′ = Z + u∘p failed")
    logger.debug(f"Decomposed charge: g = {linalg.format_matrix(g.matrix)}, u = {u.to_json()['u']}")
    return g, u
