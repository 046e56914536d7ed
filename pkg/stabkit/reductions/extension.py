"""Lattice extensions that bring (Q, Z) to a nondegenerate form of signature (2, rk − 2).

Two constructions, applied in this order:

* ``extend_degenerate`` pairs each null direction n of Q with a new vector n∨ in a
  hyperbolic plane, after rotating Z so that Z(n) = 1, and gives n∨ the real charge α.
* ``extend_signature`` appends one coordinate with Q̄(v, a) = Q(v) + a² and charge z,
  where every v with Z(v) = z has Q(v) < −1.

Both keep Q̄∘ι = Q and Z̄∘ι = g∘Z for the coordinate inclusion ι and a recorded
rotation g, and both leave Ker Z̄ negative definite.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Tuple

from stabkit.errors import InputError, InternalInvariantError, MathCheckError, SignatureError
from stabkit.lattice import linalg
from stabkit.lattice.charges import CentralCharge
from stabkit.lattice.forms import QuadraticForm, diagonalize, signature
from stabkit.lattice.gl2 import Gl2Element
from stabkit.lattice.linalg import Matrix, Vector
from stabkit.lattice.normalize import kernel_data
from stabkit.lattice.rational import RationalComplex

logger = logging.getLogger(__name__)


def radical(q: QuadraticForm) -> List[Vector]:
    """Rational basis of the null space of the Gram matrix."""
    if q.rank == 0:
        return []
    return linalg.nullspace(q.gram)


def inclusion(m: int, extra: int) -> Matrix:
    """(m + extra)×m matrix of the coordinate inclusion ℤ^m → ℤ^(m+extra)."""
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m + extra)
    )


@dataclass(frozen=True)
class ExtensionData:
    """One reduction step from (Q, Z) on ℤ^m to (Q̄, Z̄) on ℤ^(m+k).

    Attributes:
        source_form: Q
        source_charge: Z
        embed: (m+k)×m coordinate inclusion
        q_bar: Q̄
        z_bar: Z̄
        new_coords: One description per adjoined coordinate
        alpha_or_z: The charge given to each adjoined coordinate
        rotation: g with Z̄∘ι = g∘Z
        kind: "degenerate" or "signature"
    """

    source_form: QuadraticForm
    source_charge: CentralCharge
    embed: Matrix
    q_bar: QuadraticForm
    z_bar: CentralCharge
    new_coords: Tuple[Dict[str, Any], ...]
    alpha_or_z: Tuple[RationalComplex, ...]
    rotation: Gl2Element = field(default_factory=Gl2Element.identity)
    kind: str = "degenerate"

    @property
    def added(self) -> int:
        return self.q_bar.rank - self.source_form.rank

    def extend_charge(self, z: CentralCharge) -> CentralCharge:
        """A charge on the source lattice carried upstairs with the same adjoined values."""
        return self.rotation.act_charge(z).extended(list(self.alpha_or_z))

    def verify(self, sample_radius: int = 1) -> None:
        """Restriction identities and negative definiteness of Ker Z̄.

        Raises:
            InternalInvariantError: If an identity fails
            MathCheckError: If Ker Z̄ is not negative definite
        """
        if self.q_bar.congruent(self.embed).gram != self.source_form.gram:
            raise InternalInvariantError("Q̄ does not restrict to Q")
        restricted = CentralCharge(linalg.matmul(self.z_bar.matrix, self.embed))
        if restricted != self.rotation.act_charge(self.source_charge):
            raise InternalInvariantError("Z̄ does not restrict to the rotated Z")
        kd = kernel_data(self.q_bar, self.z_bar)
        kd.verify()
        for coords in product(range(-sample_radius, sample_radius + 1), repeat=kd.dim):
            if not any(coords):
                continue
            v = tuple(sum((c * b[i] for c, b in zip(coords, kd.kernel_basis)), Fraction(0))
                      for i in range(self.q_bar.rank))
            if self.q_bar(v) >= 0:
                raise MathCheckError(f"Kernel vector {v} has Q̄ ≥ 0", witness=v)

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "rank": [self.source_form.rank, self.q_bar.rank],
            "embed": linalg.format_matrix(self.embed),
            "Qbar": self.q_bar.to_json(),
            "Zbar": self.z_bar.to_json(),
            "new_coords": list(self.new_coords),
            "values": [list(z.to_json()) for z in self.alpha_or_z],
            "rotation": self.rotation.to_json(),
        }


def _to_one(w: RationalComplex) -> Matrix:
    """Real matrix of multiplication by 1/w."""
    d = w.abs2()
    return ((w.re / d, w.im / d), (-w.im / d, w.re / d))


def _degenerate_step(
    q: QuadraticForm, z: CentralCharge
) -> Tuple[QuadraticForm, CentralCharge, Gl2Element, Dict[str, Any], Fraction]:
    m = q.rank
    n = linalg.vector(linalg.primitive_integer(radical(q)[0]))
    zn = z(n)
    if zn.is_zero():
        raise MathCheckError("Z vanishes on a null vector of Q", witness=tuple(int(x) for x in n))
    g = Gl2Element.principal(_to_one(zn))
    z_rot = g.act_charge(z)
    i = next(j for j, x in enumerate(n) if x != 0)
    pairing = tuple(Fraction(int(j == i)) / n[i] for j in range(m))
    kd = kernel_data(q, z_rot)
    if kd.dim:
        w = tuple(linalg.dot(pairing, b) for b in kd.kernel_basis)
        beta = linalg.dot(w, linalg.matvec(linalg.inverse(kd.neg_gram), w))
    else:
        beta = Fraction(0)
    alpha = beta + 1
    gram = tuple(tuple(row) + (pairing[r],) for r, row in enumerate(q.gram))
    gram += (pairing + (Fraction(0),),)
    z_bar = z_rot.extended([RationalComplex(alpha, 0)])
    info = {
        "type": "hyperbolic",
        "null_vector": [str(x) for x in n],
        "pairing": [str(x) for x in pairing],
        "beta": str(beta),
        "alpha": str(alpha),
    }
    logger.debug(f"Hyperbolic step on null vector {info['null_vector']}: β = {beta}, α = {alpha}")
    return QuadraticForm(gram), z_bar, g, info, alpha


def extend_degenerate(q: QuadraticForm, z: CentralCharge) -> ExtensionData:
    """Remove the radical of Q one null direction at a time.

    Raises:
        InputError: If Q is nondegenerate
        MathCheckError: If Z is not injective on the radical
        NotNegativeDefiniteError: If Ker Z is not Q-negative-definite
    """
    null = radical(q)
    if not null:
        raise InputError("Form is nondegenerate; nothing to extend")
    if linalg.rank(z.on_basis(null)) != len(null):
        raise MathCheckError(
            "Z is not injective on the radical of Q", witness=[list(map(str, v)) for v in null]
        )
    kernel_data(q, z)
    current_q, current_z = q, z
    rotation = Gl2Element.identity()
    infos: List[Dict[str, Any]] = []
    values: List[RationalComplex] = []
    while radical(current_q):
        current_q, z_bar, g, info, alpha = _degenerate_step(current_q, current_z)
        rotation = g.compose(rotation)
        # earlier adjoined values rotate along with the rest of the charge
        values = [g.act_vector(v) for v in values] + [RationalComplex(alpha, 0)]
        current_z = z_bar
        infos.append(info)
    ext = ExtensionData(
        source_form=q,
        source_charge=z,
        embed=inclusion(q.rank, len(infos)),
        q_bar=current_q,
        z_bar=current_z,
        new_coords=tuple(infos),
        alpha_or_z=tuple(values),
        rotation=rotation,
        kind="degenerate",
    )
    ext.verify()
    logger.info(f"Degenerate extension: rank {q.rank} → {current_q.rank}")
    return ext


def _scaled_below(q: QuadraticForm, c: Vector) -> Vector:
    """s·c for the smallest positive integer s with s²Q(c) < −1 (Q(c) < 0 required)."""
    value = q(c)
    s = 1
    while s * s * value >= -1:
        s += 1
    return linalg.vscale(c, s)


def _negative_direction(q: QuadraticForm, basis: List[Vector]) -> Vector:
    diag, rows = diagonalize(q.restricted_gram(basis))
    for d, row in zip(diag, rows):
        if d < 0:
            v = tuple(
                sum((r * b[i] for r, b in zip(row, basis)), Fraction(0)) for i in range(q.rank)
            )
            return linalg.vector(linalg.primitive_integer(v))
    raise SignatureError("No negative direction on the complement of Ker Z")


def extend_signature(q: QuadraticForm, z: CentralCharge) -> ExtensionData:
    """Append a coordinate with Q̄(v, a) = Q(v) + a² and a charge z whose fiber has Q < −1.

    Raises:
        InputError: If Q is degenerate or already has two positive directions
        NotNegativeDefiniteError: If Ker Z is not Q-negative-definite
    """
    if radical(q):
        raise InputError("Signature extension needs a nondegenerate form; extend the radical first")
    pos, neg, _ = signature(q)
    if pos >= 2:
        raise InputError(f"Form already has signature ({pos}, {neg}); it satisfies the assumption")
    kd = kernel_data(q, z)
    comp = kd.complement_basis()
    if len(comp) == 2:
        v0 = _scaled_below(q, _negative_direction(q, comp))
        value, kind = z(v0), "fiber"
    elif len(comp) == 1:
        c1 = linalg.vector(linalg.primitive_integer(comp[0]))
        if q(c1) < 0:
            v0 = _scaled_below(q, c1)
            value, kind = z(v0), "fiber"
        else:
            value, kind = z(c1).rotate_quarter(), "off image"
            v0 = None
    else:
        value, kind, v0 = RationalComplex(1, 0), "off image", None
    gram = tuple(tuple(row) + (Fraction(0),) for row in q.gram)
    gram += (tuple(Fraction(0) for _ in range(q.rank)) + (Fraction(1),),)
    info = {"type": "positive", "z": list(value.to_json()), "construction": kind}
    if v0 is not None:
        info["fiber_point"] = [str(x) for x in v0]
        info["fiber_Q"] = str(q(v0))
    ext = ExtensionData(
        source_form=q,
        source_charge=z,
        embed=inclusion(q.rank, 1),
        q_bar=QuadraticForm(gram),
        z_bar=z.extended([value]),
        new_coords=(info,),
        alpha_or_z=(value,),
        kind="signature",
    )
    ext.verify()
    logger.info(f"Signature extension: ({pos}, {neg}) → ({pos + 1}, {neg}) with z = {value}")
    return ext


def reduce_and_lift(q: QuadraticForm, z: CentralCharge) -> List[ExtensionData]:
    """Chain of extensions ending in a nondegenerate form of signature (2, rk − 2).

    Raises:
        NotNegativeDefiniteError: If Ker Z is not Q-negative-definite
        MathCheckError: If Z is not injective on the radical of Q
    """
    kernel_data(q, z)
    chain: List[ExtensionData] = []
    if radical(q):
        chain.append(extend_degenerate(q, z))
        q, z = chain[-1].q_bar, chain[-1].z_bar
    while signature(q)[0] < 2:
        chain.append(extend_signature(q, z))
        q, z = chain[-1].q_bar, chain[-1].z_bar
    final = signature(q)
    if final != (2, q.rank - 2, 0):
        raise InternalInvariantError(f"Reduction ended with signature {final}")
    logger.info(f"Reduction chain of {len(chain)} steps ends at rank {q.rank}")
    return chain


def chain_embedding(chain: List[ExtensionData]) -> Matrix:
    """Composite inclusion of the first source lattice into the last target lattice."""
    if not chain:
        raise InputError("Empty reduction chain")
    total = chain[0].embed
    for step in chain[1:]:
        total = linalg.matmul(step.embed, total)
    return total


def lift_charge(chain: List[ExtensionData], z: CentralCharge) -> CentralCharge:
    """Carry a charge on the original lattice through every step of the chain."""
    for step in chain:
        z = step.extend_charge(z)
    return z
