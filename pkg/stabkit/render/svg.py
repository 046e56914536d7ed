"""Deterministic SVG pictures of HN polygons from a jinja2 template."""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from stabkit.errors import InputError
from stabkit.hn.polygon import ZERO, HNPolygon
from stabkit.lattice.rational import RationalComplex
from stabkit.utils.file_utils import FileUtils

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).parent / "templates"
TEMPLATE_NAME = "hn_polygon.svg.j2"

_env = Environment(
    loader=FileSystemLoader(str(TEMPLATE_DIR)),
    undefined=StrictUndefined,
    autoescape=True,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


def convex_hull(points: Iterable[RationalComplex]) -> List[RationalComplex]:
    """Counter-clockwise hull by monotone chain, exact; collinear points dropped."""
    pts = sorted(set(points), key=lambda w: (w.re, w.im))
    if len(pts) <= 2:
        return pts

    def chain(seq: Sequence[RationalComplex]) -> List[RationalComplex]:
        out: List[RationalComplex] = []
        for p in seq:
            while len(out) >= 2 and (out[-1] - out[-2]).cross(p - out[-2]) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = chain(pts), chain(list(reversed(pts)))
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class _Frame:
    """Affine map from the charge plane to the viewbox, y axis pointing up."""

    min_x: float
    min_y: float
    scale: float
    size: int
    margin: int
    decimals: int

    def x(self, value: float) -> str:
        return f"{self.margin + (value - self.min_x) * self.scale:.{self.decimals}f}"

    def y(self, value: float) -> str:
        return f"{self.size - self.margin - (value - self.min_y) * self.scale:.{self.decimals}f}"

    def point(self, w: RationalComplex) -> Tuple[str, str]:
        return self.x(float(w.re)), self.y(float(w.im))

    def points(self, ws: Sequence[RationalComplex]) -> str:
        return " ".join(",".join(self.point(w)) for w in ws)


def _frame(points: Sequence[RationalComplex], size: int, margin: int, decimals: int) -> _Frame:
    xs = [float(w.re) for w in points] + [0.0]
    ys = [float(w.im) for w in points] + [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    return _Frame(min(xs), min(ys), (size - 2 * margin) / span, size, margin, decimals)


def render_svg(
    polygon: HNPolygon,
    subobject_charges: Optional[Iterable[RationalComplex]] = None,
    truncated: bool = False,
    title: str = "HN polygon",
    size: int = 600,
    margin: int = 40,
    decimals: int = 3,
) -> str:
    """SVG document: shaded hull, highlighted left boundary, charge dots and axes through 0.

    ``subobject_charges`` defaults to the charges stored on the polygon; ``truncated``
    overlays the closed polygon spanned by the left boundary.

    Raises:
        InputError: If the polygon has no vertices
    """
    if not polygon.vertices:
        raise InputError("Cannot render an empty polygon")
    charges = sorted(set(subobject_charges if subobject_charges is not None else polygon.points),
                     key=lambda w: (w.im, -w.re))
    everything = list(polygon.vertices) + charges
    frame = _frame(everything, size, margin, decimals)
    hull = convex_hull(everything + [ZERO])
    context = {
        "size": size,
        "title": title,
        "axes": {
            "x0": f"{0:.{decimals}f}",
            "x1": f"{size:.{decimals}f}",
            "y": frame.y(0.0),
            "x": frame.x(0.0),
            "y0": f"{0:.{decimals}f}",
            "y1": f"{size:.{decimals}f}",
        },
        "hull": frame.points(hull) if len(hull) >= 3 else "",
        "truncated": (
            frame.points(polygon.vertices) if truncated and len(polygon.vertices) >= 3 else ""
        ),
        "boundary": frame.points(polygon.vertices),
        "dots": [
            {"x": frame.point(w)[0], "y": frame.point(w)[1], "label": str(w)} for w in charges
        ],
    }
    return _env.get_template(TEMPLATE_NAME).render(**context)


def write_svg(path: Path, document: str) -> None:
    FileUtils.safe_write(Path(path), document)
    logger.info(f"SVG written to {path}")
