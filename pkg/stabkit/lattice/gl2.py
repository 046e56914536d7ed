"""Elements of the universal cover of GL₂⁺(ℝ) and their action on charges and phases.

An element is a 2×2 matrix together with ``phase_lift``, the image of phase 0 under
the lifted action φ ↦ g̃.φ on ℝ. The lifted action is increasing and commutes with
φ ↦ φ + 1, so g̃ maps (n, n+1] onto (ℓ+n, ℓ+n+1] where ℓ = phase_lift; every
representative is chosen inside that window.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

import numpy as np

from stabkit.errors import InputError
from stabkit.lattice import linalg
from stabkit.lattice.charges import CentralCharge
from stabkit.lattice.linalg import Matrix
from stabkit.lattice.rational import RationalComplex, parse_rational, rational_sqrt


def _principal_phase(x: float, y: float) -> float:
    """arg(x + iy)/π in (-1, 1]."""
    return math.atan2(y, x) / math.pi


@dataclass(frozen=True)
class Gl2Element:
    """g = diag(√s₁, √s₂)·matrix with rational ``matrix`` and rational s₁, s₂ > 0.

    Elements with s₁ = s₂ = 1 are rational and act exactly; the scaled form is what
    normalization produces when the required isometry needs square roots.
    """

    matrix: Matrix
    phase_lift: float = 0.0
    row_scale_squares: Tuple[Fraction, Fraction] = field(
        default=(Fraction(1), Fraction(1))
    )

    def __post_init__(self):
        m = [list(r) for r in linalg.matrix(self.matrix)]
        if len(m) != 2 or any(len(r) != 2 for r in m):
            raise InputError("GL2 element must be a 2×2 matrix")
        scales = [Fraction(s) for s in self.row_scale_squares]
        if any(s <= 0 for s in scales):
            raise InputError("Row scale squares must be positive")
        for r in range(2):
            root = rational_sqrt(scales[r])
            if root is not None:
                m[r] = [root * x for x in m[r]]
                scales[r] = Fraction(1)
        matrix = tuple(tuple(r) for r in m)
        if linalg.det(matrix) <= 0:
            raise InputError(f"GL2 element needs positive determinant, got {linalg.det(matrix)}")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "row_scale_squares", (scales[0], scales[1]))
        object.__setattr__(self, "phase_lift", float(self.phase_lift))

    @classmethod
    def principal(cls, matrix: Matrix) -> "Gl2Element":
        """Lift with g̃.0 = arg(g·1)/π taken in (-1, 1]."""
        m = linalg.matrix(matrix)
        return cls(m, _principal_phase(float(m[0][0]), float(m[1][0])))

    @classmethod
    def identity(cls) -> "Gl2Element":
        return cls(linalg.identity(2), 0.0)

    @classmethod
    def scalar(cls, factor) -> "Gl2Element":
        f = Fraction(factor)
        if f <= 0:
            raise InputError("Scalar element needs a positive factor")
        return cls(linalg.scale(linalg.identity(2), f), 0.0)

    @classmethod
    def rotation_by_pi(cls, k: int = 1) -> "Gl2Element":
        """Rotation by kπ with lift k; acts on phases as the shift functor [k]."""
        sign = -1 if k % 2 else 1
        return cls(linalg.scale(linalg.identity(2), sign), float(k))

    @classmethod
    def quarter_turn(cls, k: int = 1) -> "Gl2Element":
        """Rotation by kπ/2 with lift k/2."""
        m = linalg.identity(2)
        turn = ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))
        for _ in range(k % 4):
            m = linalg.matmul(turn, m)
        return cls(m, k / 2)

    @classmethod
    def parse(cls, data: Any) -> "Gl2Element":
        """Decode ``{"matrix": [[..],[..]], "phase_lift": ".."}``."""
        if not isinstance(data, dict) or "matrix" not in data:
            raise InputError(f"GL2 element document needs a 'matrix' key: {data!r}")
        matrix = tuple(tuple(parse_rational(x) for x in row) for row in data["matrix"])
        if "phase_lift" in data:
            return cls(matrix, float(parse_rational(data["phase_lift"])))
        return cls.principal(matrix)

    @property
    def is_rational(self) -> bool:
        return self.row_scale_squares == (Fraction(1), Fraction(1))

    def metric(self) -> Matrix:
        """S = gᵀg; ⟨g x, g y⟩ = xᵀ S y, rational even when g is not."""
        s = self.row_scale_squares
        m = self.matrix
        return tuple(
            tuple(sum(s[r] * m[r][i] * m[r][j] for r in range(2)) for j in range(2))
            for i in range(2)
        )

    def float_matrix(self) -> np.ndarray:
        scale = np.sqrt(np.array([float(s) for s in self.row_scale_squares]))
        return scale[:, None] * np.array([[float(x) for x in row] for row in self.matrix])

    def _require_rational(self) -> None:
        if not self.is_rational:
            raise InputError("Exact action needs a rational element; use metric() instead")

    def act_vector(self, w: RationalComplex) -> RationalComplex:
        self._require_rational()
        re, im = linalg.matvec(self.matrix, (w.re, w.im))
        return RationalComplex(re, im)

    def act_phase_value(self, phi: float) -> float:
        """g̃.φ for a real phase."""
        x, y = self.float_matrix() @ np.array([math.cos(math.pi * phi), math.sin(math.pi * phi)])
        theta = _principal_phase(float(x), float(y))
        n = math.ceil(phi) - 1
        target = self.phase_lift + n + 0.5
        j = round((target - theta) / 2)
        return theta + 2 * j

    def act_phase_pair(self, charge: RationalComplex, shift: int) -> Tuple[RationalComplex, int]:
        """Exact image of the phase represented by (charge ∈ H, shift)."""
        # an odd shift points along −charge
        image = self.act_vector(charge if shift % 2 == 0 else -charge)
        if image.in_upper_half_plane():
            rep, base = image, 0
        else:
            rep, base = -image, 1
        theta = _principal_phase(float(rep.re), float(rep.im))
        target = self.phase_lift + shift + 0.5
        j = round((target - theta - base) / 2)
        return rep, base + 2 * j

    def compose(self, other: "Gl2Element") -> "Gl2Element":
        """self ∘ other."""
        self._require_rational()
        other._require_rational()
        return Gl2Element(
            linalg.matmul(self.matrix, other.matrix),
            self.act_phase_value(other.phase_lift),
        )

    def inverse(self) -> "Gl2Element":
        self._require_rational()
        inv = linalg.inverse(self.matrix)
        base = _principal_phase(float(inv[0][0]), float(inv[1][0]))
        candidates = [base + 2 * j for j in (-2, -1, 0, 1, 2)]
        lift = min(candidates, key=lambda psi: abs(self.act_phase_value(psi)))
        return Gl2Element(inv, lift)

    def act_charge(self, z: CentralCharge) -> CentralCharge:
        self._require_rational()
        return z.transformed(self.matrix)

    def to_json(self) -> dict:
        return {
            "matrix": linalg.format_matrix(self.matrix),
            "phase_lift": repr(self.phase_lift),
            "row_scale_squares": [str(s) for s in self.row_scale_squares],
        }


def gl2_act(
    g: Gl2Element, z: CentralCharge, phases: Sequence[Any] = ()
) -> Tuple[CentralCharge, List[Any]]:
    """Act on a central charge and on phase points (objects with ``charge`` and ``shift``).

    Returns:
        Tuple of g∘Z and the transformed phase points
    """
    if linalg.det(g.matrix) <= 0:
        raise InputError("GL2 action needs positive determinant")
    new_phases = []
    for p in phases:
        charge, shift = g.act_phase_pair(p.charge, p.shift)
        new_phases.append(type(p)(charge, shift))
    return g.act_charge(z), new_phases
