"""Kernel data and normalized coordinates Q(v) = |Z(v)|² − ‖p(v)‖².

For a charge Z whose kernel K is Q-negative-definite, p is the Q-orthogonal
projection onto K and ‖·‖ is the norm induced by −Q on K. If in addition Q has
signature (2, m−2), a GL₂⁺ element g makes g∘Z an isometry on K⊥.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from stabkit.errors import (
    InputError,
    InternalInvariantError,
    NotNegativeDefiniteError,
    SignatureError,
)
from stabkit.lattice import linalg
from stabkit.lattice.charges import CentralCharge, kernel
from stabkit.lattice.forms import (
    QuadraticForm,
    definiteness_witness,
    is_negative_definite_on,
    signature,
)
from stabkit.lattice.gl2 import Gl2Element
from stabkit.lattice.linalg import Matrix, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelData:
    """Kernel basis, Gram of −Q on it, and the Q-orthogonal projector onto it.

    ``coords_matrix`` (k×m) sends v to the coordinates of p(v) in ``kernel_basis``;
    ``projector`` (m×m) is p itself, so p(v) = projector·v.
    """

    form: QuadraticForm
    kernel_basis: Tuple[Vector, ...]
    neg_gram: Matrix
    projector: Matrix
    coords_matrix: Matrix

    @property
    def dim(self) -> int:
        return len(self.kernel_basis)

    def coords(self, v: Sequence) -> Vector:
        return linalg.matvec(self.coords_matrix, linalg.vector(v))

    def project(self, v: Sequence) -> Vector:
        return linalg.matvec(self.projector, linalg.vector(v))

    def norm2(self, v: Sequence) -> Fraction:
        """‖p(v)‖² = −Q(p(v)), exact."""
        c = self.coords(v)
        return linalg.dot(c, linalg.matvec(self.neg_gram, c))

    def norm(self, v: Sequence) -> float:
        return math.sqrt(float(self.norm2(v)))

    def complement_basis(self) -> List[Vector]:
        """Rational basis of the Q-orthogonal complement K⊥."""
        m = self.form.rank
        if not self.kernel_basis:
            return list(linalg.identity(m))
        rows = tuple(linalg.matvec(self.form.gram, b) for b in self.kernel_basis)
        return linalg.nullspace(rows, m)

    def verify(self) -> None:
        """Check idempotence, kernel fixing and Q-orthogonality of the complement.

        Raises:
            InternalInvariantError: If any identity fails
        """
        p = self.projector
        m = self.form.rank
        if linalg.matmul(p, p, m) != p:
            raise InternalInvariantError("Projector is not idempotent")
        for b in self.kernel_basis:
            if self.project(b) != b:
                raise InternalInvariantError(f"Projector does not fix kernel vector {b}")
        residual = linalg.add(linalg.identity(m), linalg.scale(p, -1)) if m else ()
        for b in self.kernel_basis:
            row = linalg.matvec(self.form.gram, b)
            if any(linalg.dot(row, col) != 0 for col in linalg.transpose(residual, m)):
                raise InternalInvariantError("Image of (1 - p) is not Q-orthogonal to the kernel")


def kernel_data(q: QuadraticForm, z: CentralCharge) -> KernelData:
    """Kernel data of Z with respect to Q.

    Raises:
        InputError: If ranks disagree
        NotNegativeDefiniteError: If Q is not negative definite on Ker Z
    """
    if q.rank != z.rank:
        raise InputError(f"Form of rank {q.rank} and charge of rank {z.rank} disagree")
    m = q.rank
    basis = tuple(kernel(z))
    if not is_negative_definite_on(q, basis):
        witness = definiteness_witness(q, basis)
        raise NotNegativeDefiniteError(
            f"Ker Z is not negative definite: Q{witness} = {q(witness)}", witness=witness
        )
    if not basis:
        return KernelData(q, (), (), linalg.zeros(m, m), ())
    restricted = q.restricted_gram(basis)
    neg_gram = linalg.scale(restricted, -1)
    bg = tuple(linalg.matvec(q.gram, b) for b in basis)  # B·G (G symmetric)
    coords_matrix = linalg.matmul(linalg.inverse(restricted), bg)
    projector = linalg.matmul(linalg.transpose(basis), coords_matrix)
    return KernelData(q, basis, neg_gram, projector, coords_matrix)


@dataclass(frozen=True)
class Normalization:
    """Result of :func:`normalize`.

    ``metric`` is S = gᵀg, so |Z_norm(v)|² = Z(v)ᵀ S Z(v) exactly; ``z_norm`` is the
    exact normalized charge when g happens to be rational.
    """

    g: Gl2Element
    charge: CentralCharge
    metric: Matrix
    kernel: KernelData
    z_norm: Optional[CentralCharge]

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        zu, zv = self.charge(u), self.charge(v)
        a, b = (zu.re, zu.im), (zv.re, zv.im)
        return linalg.dot(a, linalg.matvec(self.metric, b))

    def charge_abs2(self, v: Sequence) -> Fraction:
        return self.inner(v, v)

    def float_charge(self) -> np.ndarray:
        """2×m float matrix of g∘Z."""
        return self.g.float_matrix() @ np.array(
            [[float(x) for x in row] for row in self.charge.matrix]
        )

    def verify(self) -> None:
        """Bilinear identity Gram = Zᵀ S Z + Pᵀ G P, checked exactly.

        Equivalent to Q(eᵢ+eⱼ) − Q(eᵢ) − Q(eⱼ) = 2(⟨Z_norm eᵢ, Z_norm eⱼ⟩ − ⟨p eᵢ, p eⱼ⟩).
        """
        q = self.kernel.form
        m = q.rank
        for i in range(m):
            for j in range(i, m):
                ei = tuple(Fraction(int(k == i)) for k in range(m))
                ej = tuple(Fraction(int(k == j)) for k in range(m))
                lhs = q.bilinear(ei, ej)
                p_inner = -q.bilinear(self.kernel.project(ei), self.kernel.project(ej))
                if lhs != self.inner(ei, ej) - p_inner:
                    raise InternalInvariantError(f"Normalization identity fails at ({i}, {j})")


def complement_metric(kd: KernelData, z: CentralCharge) -> Matrix:
    """2×2 rational S with Q((1−p)v) = Z(v)ᵀ S Z(v).

    Uses the pseudo-inverse of Z restricted to K⊥, so it also covers charges of image
    rank below two.
    """
    comp = kd.complement_basis()
    if not comp:
        return linalg.zeros(2, 2)
    m_z = z.on_basis(comp)  # 2×r
    m_zt = linalg.transpose(m_z)
    pinv = linalg.matmul(linalg.inverse(linalg.matmul(m_zt, m_z)), m_zt)  # r×2
    g_c = kd.form.restricted_gram(comp)
    return linalg.matmul(linalg.matmul(linalg.transpose(pinv), g_c), pinv)


def normalize(q: QuadraticForm, z: CentralCharge) -> Normalization:
    """Find g with Q(v) = |g Z(v)|² − ‖p(v)‖².

    Raises:
        SignatureError: If Q does not have signature (2, m−2, 0)
        NotNegativeDefiniteError: If Ker Z is not negative definite
    """
    m = q.rank
    sig = signature(q)
    if sig != (2, m - 2, 0):
        raise SignatureError(
            f"Normalization needs signature (2, {m - 2}, 0), got {sig}", witness=sig
        )
    kd = kernel_data(q, z)
    if kd.dim != m - 2:
        raise SignatureError(f"Ker Z has dimension {kd.dim}, expected {m - 2}", witness=kd.dim)
    s = complement_metric(kd, z)
    # upper-triangular Cholesky S = gᵀg with g = diag(√s1, √s2)·[[1, S12/S11], [0, 1]]
    s1 = s[0][0]
    s2 = linalg.det(s) / s1
    matrix = ((Fraction(1), s[0][1] / s1), (Fraction(0), Fraction(1)))
    g = Gl2Element(matrix, 0.0, (s1, s2))
    z_norm = g.act_charge(z) if g.is_rational else None
    result = Normalization(g, z, g.metric(), kd, z_norm)
    result.verify()
    logger.debug(f"Normalized charge with metric {linalg.format_matrix(result.metric)}")
    return result
