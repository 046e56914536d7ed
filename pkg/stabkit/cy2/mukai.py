"""Roots of a Mukai-type lattice and support-property certificates for P₀.

A charge Z lies in P₀ when Ker Z is negative definite for the pairing and contains no
root δ, (δ, δ) = −2. For such Z the form Q(v) = (v, v) + (2/C²)|Z(v)|², with
0 < C ≤ inf |Z(δ)|, is negative definite on Ker Z and non-negative on every root.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from stabkit.deformation.path import DeformationPath, as_parameter
from stabkit.errors import (
    CheckResult,
    InputError,
    InternalInvariantError,
    NotInP0Error,
    NotNegativeDefiniteError,
)
from stabkit.lattice import linalg
from stabkit.lattice.charges import CentralCharge, Class
from stabkit.lattice.forms import QuadraticForm
from stabkit.lattice.normalize import KernelData, complement_metric, kernel_data
from stabkit.lattice.rational import format_rational, parse_rational, rational_sqrt
from stabkit.lattice.shortvec import enumerate_short_vectors

logger = logging.getLogger(__name__)

ROOT_SQUARE = Fraction(-2)


@dataclass(frozen=True)
class MukaiLattice:
    """ℤ^m with a nondegenerate symmetric rational pairing."""

    pairing: QuadraticForm

    def __post_init__(self):
        if linalg.det(self.pairing.gram) == 0:
            raise InputError("Mukai pairing must be nondegenerate")
        if not self.is_even:
            logger.warning("Mukai pairing is not even integral; roots may be sparse")

    @classmethod
    def parse(cls, data: Any) -> "MukaiLattice":
        """Decode ``{"gram": [[...]]}`` or a bare Gram matrix."""
        rows = data.get("gram") if isinstance(data, dict) else data
        if rows is None:
            raise InputError("Lattice document needs a 'gram' entry")
        return cls(QuadraticForm.parse(rows))

    @property
    def rank(self) -> int:
        return self.pairing.rank

    @property
    def is_even(self) -> bool:
        g = self.pairing.gram
        return all(x.denominator == 1 for row in g for x in row) and all(
            g[i][i].numerator % 2 == 0 for i in range(len(g))
        )

    def __call__(self, v: Sequence) -> Fraction:
        return self.pairing(v)

    def to_json(self) -> Dict[str, Any]:
        return {"gram": self.pairing.to_json()}


@dataclass(frozen=True)
class RootSet:
    """Roots δ with |Z(δ)| ≤ bound, sorted and closed under negation."""

    roots: Tuple[Class, ...]
    bound: Fraction
    charge: CentralCharge

    def __post_init__(self):
        members = set(self.roots)
        for r in self.roots:
            if tuple(-x for x in r) not in members:
                raise InternalInvariantError(f"Root set is not closed under negation at {r}")

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def in_kernel(self) -> List[Class]:
        return [r for r in self.roots if self.charge(r).is_zero()]

    def to_json(self) -> Dict[str, Any]:
        return {
            "bound": format_rational(self.bound),
            "roots": [
                {"class": list(r), "abs2_Z": format_rational(self.charge(r).abs2()),
                 "abs_Z": abs(self.charge(r))}
                for r in self.roots
            ],
        }


def _majorant(kd: KernelData, z: CentralCharge) -> linalg.Matrix:
    """Positive definite |Z(v)|² + ‖p(v)‖²."""
    m = z.rank
    form = linalg.matmul(linalg.transpose(z.matrix), z.matrix)
    if kd.dim:
        c = kd.coords_matrix
        correction = linalg.matmul(linalg.matmul(linalg.transpose(c, m), kd.neg_gram), c, m)
        form = linalg.add(form, correction)
    return form


def _complement_bound(kd: KernelData, z: CentralCharge) -> Fraction:
    """Rational μ ≥ 0 with Q((1−p)v) ≤ μ|Z(v)|²."""
    s = complement_metric(kd, z)
    return max([sum(abs(x) for x in row) for row in s] + [Fraction(0)])


def enumerate_roots_near(lattice: MukaiLattice, z: CentralCharge, bound: Any) -> RootSet:
    """All roots δ with |Z(δ)| ≤ bound.

    A root with |Z(δ)| ≤ b has ‖p(δ)‖² = Q((1−p)δ) + 2 ≤ μb² + 2, so the search runs over
    the ellipsoid |Z|² + ‖p‖² ≤ (1 + μ)b² + 2 and filters exactly.

    Raises:
        NotNegativeDefiniteError: If Ker Z is not negative definite for the pairing
        InputError: If the bound is negative
    """
    bound = parse_rational(bound)
    if bound < 0:
        raise InputError(f"Root search bound must be non-negative, got {bound}")
    kd = kernel_data(lattice.pairing, z)
    mu = _complement_bound(kd, z)
    radius = (1 + mu) * bound * bound + 2
    b2 = bound * bound
    roots = tuple(
        v for v in enumerate_short_vectors(_majorant(kd, z), radius)
        if lattice(v) == ROOT_SQUARE and z(v).abs2() <= b2
    )
    logger.debug(f"{len(roots)} roots with |Z| ≤ {bound} (search radius {radius})")
    return RootSet(roots, bound, z)


@dataclass(frozen=True)
class SupportConstant:
    """C given by its exact square; ``provenance`` is "attained" or "sentinel"."""

    square: Fraction
    provenance: str
    witness: Optional[Class] = None

    @property
    def value(self) -> float:
        return math.sqrt(self.square)

    def exact(self) -> str:
        root = rational_sqrt(self.square)
        if root is not None:
            return format_rational(root)
        return f"sqrt({format_rational(self.square)})"

    def to_json(self) -> Dict[str, Any]:
        data = {"C": self.exact(), "C_squared": format_rational(self.square), "C_float": self.value,
                "provenance": self.provenance}
        if self.witness is not None:
            data["witness"] = list(self.witness)
        return data


def compute_C(lattice: MukaiLattice, z: CentralCharge) -> SupportConstant:
    """C = min(1, min |Z(δ)| over roots with |Z(δ)| ≤ 1).

    Raises:
        NotInP0Error: If a root lies in Ker Z
        NotNegativeDefiniteError: If Ker Z is not negative definite
    """
    roots = enumerate_roots_near(lattice, z, 1)
    kernel_roots = roots.in_kernel()
    if kernel_roots:
        witness = max(kernel_roots)
        raise NotInP0Error(f"Root {witness} lies in Ker Z", witness=witness)
    if not roots:
        logger.info("No root with |Z| ≤ 1; C = 1")
        return SupportConstant(Fraction(1), "sentinel")
    # ties resolve to the lexicographically largest root, which leads with a positive entry
    best = min(roots, key=lambda r: (z(r).abs2(), tuple(-x for x in r)))
    square = z(best).abs2()
    if square >= 1:
        return SupportConstant(Fraction(1), "sentinel")
    logger.info(f"C² = {square} attained at root {best}")
    return SupportConstant(square, "attained", best)


def build_support_Q(lattice: MukaiLattice, z: CentralCharge,
                    c: Optional[SupportConstant] = None) -> QuadraticForm:
    """Q(v) = (v, v) + (2/C²)|Z(v)|², verified on Ker Z and on roots with |Z| ≤ 2.

    Raises:
        NotInP0Error: If Z has a kernel root
        InternalInvariantError: If the assembled form fails its checks
    """
    if c is None:
        c = compute_C(lattice, z)
    factor = 2 / c.square
    charge_gram = linalg.matmul(linalg.transpose(z.matrix), z.matrix)
    q = QuadraticForm(linalg.add(lattice.pairing.gram, linalg.scale(charge_gram, factor)))
    try:
        kernel_data(q, z)
    except NotNegativeDefiniteError as exc:
        raise InternalInvariantError(
            f"Support form is not negative definite on Ker Z: {exc}"
        ) from exc
    for bound in (1, 2):
        for r in enumerate_roots_near(lattice, z, bound):
            if q(r) < 0:
                raise InternalInvariantError(f"Support form is negative on root {r}")
    return q


def check_P0_membership(lattice: MukaiLattice, z: CentralCharge) -> CheckResult:
    """Negative definite kernel without roots; the witness is the first violating vector."""
    try:
        roots = enumerate_roots_near(lattice, z, 0)
    except NotNegativeDefiniteError as exc:
        return CheckResult(False, exc.witness, "Ker Z is not negative definite")
    kernel_roots = roots.in_kernel()
    if kernel_roots:
        witness = max(kernel_roots)
        return CheckResult(False, witness, f"Root {witness} lies in Ker Z")
    return CheckResult(True)


@dataclass(frozen=True)
class Certificate:
    """Support-property certificate of one charge in P₀."""

    charge: CentralCharge
    constant: SupportConstant
    form: QuadraticForm
    roots: RootSet

    def supports(self, classes: Iterable[Class]) -> CheckResult:
        """Q ≥ 0 on the given classes of square ≥ −2."""
        for v in classes:
            v = tuple(v)
            if self.form(v) < 0:
                return CheckResult(False, v, f"Q{v} = {self.form(v)} < 0")
        return CheckResult(True)

    def to_json(self) -> Dict[str, Any]:
        return {
            "Z": self.charge.to_json(),
            "C": self.constant.to_json(),
            "Q": self.form.to_json(),
            "roots": self.roots.to_json(),
            "Q_on_roots": [
                {"class": list(r), "Q": format_rational(self.form(r))} for r in self.roots
            ],
        }


def certify(lattice: MukaiLattice, z: CentralCharge) -> Certificate:
    """Membership test, C and the support form together.

    Raises:
        NotInP0Error: If Z is not in P₀; the witness is a kernel root or a kernel vector
    """
    member = check_P0_membership(lattice, z)
    if not member:
        raise NotInP0Error(member.detail, witness=member.witness)
    c = compute_C(lattice, z)
    q = build_support_Q(lattice, z, c)
    return Certificate(z, c, q, enumerate_roots_near(lattice, z, 2))


@dataclass(frozen=True)
class PathCertificate:
    """Certificates at sample parameters with consecutive overlap checks."""

    parameters: Tuple[Fraction, ...]
    certificates: Tuple[Certificate, ...]
    failure: Optional[CheckResult] = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def to_json(self) -> Dict[str, Any]:
        data = {
            "passed": self.passed,
            "samples": [
                {"t": format_rational(t), "C": cert.constant.to_json(), "Q": cert.form.to_json()}
                for t, cert in zip(self.parameters, self.certificates)
            ],
        }
        if self.failure is not None:
            data["failure"] = {"witness": self.failure.witness, "detail": self.failure.detail}
        return data


def certify_path(
    lattice: MukaiLattice, path: DeformationPath, samples: Sequence[Any]
) -> PathCertificate:
    """Certify Z_t at each sample and check Ker Z_next is negative definite for the previous Q.

    Stops at the first failure, which carries the failing parameter as witness.
    """
    params = sorted({as_parameter(t) for t in samples})
    if not params:
        raise InputError("Path certification needs at least one sample parameter")
    certs: List[Certificate] = []
    done: List[Fraction] = []
    for t in params:
        z_t = path.charge_at(t)
        try:
            cert = certify(lattice, z_t)
        except NotInP0Error as exc:
            failed = CheckResult(False, format_rational(t), f"Z_{t} not in P₀: {exc}")
            return PathCertificate(tuple(done), tuple(certs), failed)
        if certs:
            try:
                kernel_data(certs[-1].form, z_t)
            except NotNegativeDefiniteError:
                detail = f"Ker Z_{t} is not negative definite for the certificate at t = {done[-1]}"
                return PathCertificate(tuple(done), tuple(certs),
                                       CheckResult(False, format_rational(t), detail))
        certs.append(cert)
        done.append(t)
    logger.info(f"Certified {len(certs)} charges along the path")
    return PathCertificate(tuple(done), tuple(certs))
