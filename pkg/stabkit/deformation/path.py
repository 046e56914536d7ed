"""Affine paths of central charges Z_t = Z₀ + t·W on t ∈ [0, 1]."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence

from stabkit.deformation import poly
from stabkit.deformation.direction import DeformationDirection
from stabkit.errors import CheckResult, InputError
from stabkit.lattice import linalg
from stabkit.lattice.charges import CentralCharge
from stabkit.lattice.forms import QuadraticForm
from stabkit.lattice.linalg import Matrix
from stabkit.lattice.normalize import kernel_data
from stabkit.lattice.rational import RationalComplex, parse_rational

logger = logging.getLogger(__name__)


def as_parameter(t: Any) -> Fraction:
    """Exact path parameter in [0, 1].

    Raises:
        InputError: If t is not an exact rational in [0, 1]
    """
    value = parse_rational(t)
    if not 0 <= value <= 1:
        raise InputError(f"Path parameter {value} outside [0, 1]")
    return value


@dataclass(frozen=True)
class DeformationPath:
    """Z_t = Z₀ + t·W.

    Attributes:
        z0: Charge at t = 0
        w: 2×m rational velocity
        normal_form: True when W = u∘p for the kernel projection p of Z₀
        direction: The direction u in the kernel basis, for normal-form paths
    """

    z0: CentralCharge
    w: Matrix
    normal_form: bool = False
    direction: Optional[DeformationDirection] = None

    def __post_init__(self):
        w = linalg.matrix(self.w)
        if linalg.shape(w) != linalg.shape(self.z0.matrix):
            raise InputError(f"Velocity of shape {linalg.shape(w)} for a charge of shape "
                             f"{linalg.shape(self.z0.matrix)}")
        object.__setattr__(self, "w", w)

    @classmethod
    def affine(cls, z0: CentralCharge, w: Matrix) -> "DeformationPath":
        return cls(z0, w)

    @classmethod
    def constant(cls, z0: CentralCharge) -> "DeformationPath":
        return cls(z0, linalg.zeros(2, z0.rank))

    @classmethod
    def between(cls, z0: CentralCharge, z1: CentralCharge) -> "DeformationPath":
        return cls(z0, (z1 - z0).matrix)

    @classmethod
    def normal(
        cls, z0: CentralCharge, u: DeformationDirection, q: QuadraticForm
    ) -> "DeformationPath":
        """Z_t = Z₀ + t·u∘p with p the projection onto Ker Z₀."""
        kd = kernel_data(q, z0)
        return cls(z0, u.as_charge_difference(kd), True, u)

    @classmethod
    def from_dict(
        cls, data: Dict[str, Any], q: Optional[QuadraticForm] = None
    ) -> "DeformationPath":
        """Decode ``{"Z0": .., "W": ..}`` or ``{"Z0": .., "u": ..}``; ``u`` needs the form Q."""
        if "Z0" not in data:
            raise InputError("Path document needs a 'Z0' entry")
        z0 = CentralCharge.parse(data["Z0"])
        if "W" in data:
            return cls.affine(z0, tuple(tuple(parse_rational(x) for x in row) for row in data["W"]))
        if "u" in data:
            if q is None:
                raise InputError("A path given by 'u' needs the quadratic form Q")
            rows = data["u"]
            u = DeformationDirection(tuple(tuple(parse_rational(x) for x in row) for row in rows))
            return cls.normal(z0, u, q)
        raise InputError("Path document needs either 'W' or 'u'")

    @property
    def rank(self) -> int:
        return self.z0.rank

    @property
    def velocity(self) -> CentralCharge:
        return CentralCharge(self.w)

    def charge_at(self, t: Any) -> CentralCharge:
        """Exact Z_t.

        Raises:
            InputError: If t lies outside [0, 1]
        """
        t = as_parameter(t)
        return CentralCharge(linalg.add(self.z0.matrix, linalg.scale(self.w, t)))

    def value_at(self, t: Fraction, v: Sequence[int]) -> RationalComplex:
        return self.z0(v) + self.velocity(v).scale(t)

    @property
    def end(self) -> CentralCharge:
        return self.charge_at(1)

    def is_constant(self) -> bool:
        return all(x == 0 for row in self.w for x in row)

    @property
    def is_real(self) -> bool:
        return all(x == 0 for x in self.w[1])

    @property
    def is_imaginary(self) -> bool:
        return all(x == 0 for x in self.w[0])

    def restricted(self, t0: Any, t1: Any) -> "DeformationPath":
        """The segment [t0, t1] reparametrized to [0, 1]; no longer in normal form."""
        t0, t1 = as_parameter(t0), as_parameter(t1)
        if t1 < t0:
            raise InputError(f"Empty parameter range [{t0}, {t1}]")
        return DeformationPath(self.charge_at(t0), linalg.scale(self.w, t1 - t0))

    def cross_poly(self, e: Sequence[int], a: Sequence[int]) -> poly.Poly:
        """cross(Z_t(e), Z_t(a)) as a polynomial in t."""
        return poly.cross_poly(self.z0(e), self.velocity(e), self.z0(a), self.velocity(a))

    def to_json(self) -> Dict[str, Any]:
        data = {
            "Z0": self.z0.to_json(),
            "W": linalg.format_matrix(self.w),
            "normal_form": self.normal_form,
        }
        if self.direction is not None:
            data["u"] = self.direction.to_json()["u"]
        return data


def is_stability_function_at(
    path: DeformationPath, t: Any, heart_classes: Iterable[Sequence[int]]
) -> CheckResult:
    """Every nonzero class maps into H under Z_t; the first violating class is the witness."""
    z_t = path.charge_at(t)
    for c in heart_classes:
        c = tuple(c)
        if not any(c):
            continue
        value = z_t(c)
        if not value.in_upper_half_plane():
            reason = "vanishes" if value.is_zero() else f"maps to {value}"
            return CheckResult(False, c, f"Z_{t}{c} {reason}")
    return CheckResult(True)


def _generic_rank(path: DeformationPath) -> int:
    # a polynomial of degree ≤ 2 cannot vanish at three distinct points
    samples = (Fraction(1, 7), Fraction(3, 11), Fraction(5, 13))
    return max(path.charge_at(t).image_rank() for t in samples)


def kernel_jumps(path: DeformationPath, width: Fraction = poly.DEFAULT_WIDTH) -> List[Fraction]:
    """Rational parameters in [0, 1] where the rank of Z_t drops below its generic value.

    Drops at irrational parameters are logged and skipped, since no exact kernel exists
    there to test.
    """
    generic = _generic_rank(path)
    if generic == 0:
        return []
    m = path.rank
    e = [tuple(int(i == j) for i in range(m)) for j in range(m)]
    if generic == 2:
        polys = [path.cross_poly(e[i], e[j]) for i, j in combinations(range(m), 2)]
    else:
        polys = []
        for j in range(m):
            col0, col1 = path.z0.column(j), path.velocity.column(j)
            polys.append((col0.re, col1.re, Fraction(0)))
            polys.append((col0.im, col1.im, Fraction(0)))
    polys = [p for p in polys if not poly.is_zero(p)]
    if not polys:
        return []
    jumps = []
    for root in poly.roots_in_unit_interval(polys[0], width):
        if not root.exact:
            lo, hi = root.lower, root.upper
            if all(poly.sign(poly.evaluate(p, lo)) * poly.sign(poly.evaluate(p, hi)) <= 0
                   for p in polys):
                logger.warning(f"Rank of Z_t may drop at an irrational parameter in "
                               f"[{float(lo):.9f}, {float(hi):.9f}]")
            continue
        if all(poly.evaluate(p, root.lower) == 0 for p in polys):
            jumps.append(root.lower)
    return jumps
