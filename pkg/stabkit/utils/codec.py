"""Decoding of input documents into stabkit objects, and the JSON encoding of witnesses.

Exact rationals travel as integers or ``"p/q"`` strings in both directions.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from stabkit.cy2.mukai import MukaiLattice
from stabkit.deformation.path import DeformationPath
from stabkit.errors import InputError
from stabkit.lattice.charges import CentralCharge
from stabkit.lattice.forms import QuadraticForm
from stabkit.lattice.gl2 import Gl2Element
from stabkit.lattice.rational import RationalComplex, format_rational
from stabkit.quiver.quiver import Quiver, QuiverHeart, Representation
from stabkit.quiver.subobjects import DEFAULT_BUDGET
from stabkit.schemas import required_keys
from stabkit.slicing.prestability import PreStability, ShiftedObject, make_prestability
from stabkit.utils.file_utils import FileUtils

logger = logging.getLogger(__name__)


def require(data: Any, schema: str, source: str = "document") -> Dict[str, Any]:
    """Check ``data`` is an object carrying the schema's required keys.

    Raises:
        InputError: On a non-object document or a missing key
    """
    if not isinstance(data, dict):
        raise InputError(f"{source}: expected a JSON object, got {type(data).__name__}")
    missing = [k for k in required_keys(schema) if k not in data]
    if missing:
        raise InputError(f"{source}: missing {', '.join(missing)} ({schema} document)")
    return data


@dataclass(frozen=True)
class ChargeDocument:
    """``{"rank", "Z", "Q"}`` with either entry optional."""

    rank: int
    charge: Optional[CentralCharge]
    form: Optional[QuadraticForm]

    def need_charge(self) -> CentralCharge:
        if self.charge is None:
            raise InputError("Document has no central charge 'Z'")
        return self.charge

    def need_form(self) -> QuadraticForm:
        if self.form is None:
            raise InputError("Document has no quadratic form 'Q'")
        return self.form


def parse_charge_document(
    data: Any, schema: str = "charge", source: str = "document"
) -> ChargeDocument:
    """Decode a lattice/charge/form document and check that all ranks agree.

    Raises:
        InputError: On missing entries or disagreeing ranks
    """
    require(data, schema, source)
    z = CentralCharge.parse(data["Z"]) if "Z" in data else None
    q = QuadraticForm.parse(data["Q"]) if "Q" in data else None
    ranks = {x.rank for x in (z, q) if x is not None}
    if "rank" in data:
        ranks.add(int(data["rank"]))
    if len(ranks) > 1:
        raise InputError(f"{source}: ranks disagree ({sorted(ranks)})")
    return ChargeDocument(ranks.pop() if ranks else 0, z, q)


def parse_representation(data: Any, source: str = "object") -> Representation:
    return Representation.parse(require(data, "representation", source))


def parse_shifted(data: Any, source: str = "object") -> ShiftedObject:
    r = parse_representation(data, source)
    return ShiftedObject(r, int(data.get("shift", 0)))


def parse_sample(data: Any, source: str = "sample") -> List[ShiftedObject]:
    """``{"objects": [...]}`` or a bare list of representation documents."""
    if isinstance(data, list):
        data = {"objects": data}
    require(data, "sample", source)
    return [parse_shifted(o, f"{source}[{i}]") for i, o in enumerate(data["objects"])]


def parse_heart(data: Dict[str, Any]) -> QuiverHeart:
    try:
        quiver = Quiver(int(data["vertices"]), tuple(tuple(a) for a in data.get("arrows", [])))
        return QuiverHeart(quiver, int(data["field"]))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed quiver description: {e}") from e


def parse_sigma(data: Any, budget: int = DEFAULT_BUDGET, source: str = "sigma") -> PreStability:
    """Validated pre-stability condition from a sigma document.

    Raises:
        InputError: On malformed documents
        HeartViolationError: If Z is not a stability function on the heart
    """
    require(data, "sigma", source)
    heart = parse_heart(data)
    sigma = make_prestability(CentralCharge.parse(data["Z"]), heart, budget=budget)
    if "action" in data:
        sigma = sigma.act(Gl2Element.parse(data["action"]))
    return sigma


def parse_path(
    data: Any, form: Optional[QuadraticForm] = None, source: str = "path"
) -> DeformationPath:
    return DeformationPath.from_dict(require(data, "path", source), form)


def parse_mukai(data: Any, source: str = "lattice") -> MukaiLattice:
    if isinstance(data, list):
        data = {"gram": data}
    return MukaiLattice.parse(require(data, "mukai", source))


def load_document(path: Path) -> Any:
    data = FileUtils.read_json(Path(path))
    logger.debug(f"Loaded {path}")
    return data


def jsonable(value: Any) -> Any:
    """Witnesses and results as plain JSON: rationals become "p/q", tuples become lists."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, RationalComplex):
        return list(value.to_json())
    if hasattr(value, "to_json"):
        return jsonable(value.to_json())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)
