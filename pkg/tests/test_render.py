"""Test SVG rendering of HN polygons."""
import pytest

from stabkit.errors import InputError
from stabkit.hn.filtration import object_polygon
from stabkit.hn.polygon import HNPolygon
from stabkit.render.svg import convex_hull, render_svg, write_svg
from tests.conftest import rc


def test_svg_contains_all_layers(p1, unstable_charge):
    document = render_svg(object_polygon(p1, unstable_charge), truncated=True)
    assert document.startswith("<?xml")
    for element_id in ("axes", "hull", "truncated", "left-boundary", "charges"):
        assert f'id="{element_id}"' in document
    assert document.count("<circle") == 3


def test_segment_has_no_truncated_overlay(p1, semistable_charge):
    document = render_svg(object_polygon(p1, semistable_charge), truncated=True)
    assert 'id="truncated"' not in document
    assert 'id="left-boundary"' in document


def test_svg_is_deterministic(p1, unstable_charge):
    polygon = object_polygon(p1, unstable_charge)
    assert render_svg(polygon) == render_svg(polygon)


def test_svg_size_and_precision(p1, unstable_charge):
    document = render_svg(object_polygon(p1, unstable_charge), size=300, margin=10, decimals=1)
    assert 'viewBox="0 0 300 300"' in document
    assert "290.0" in document


def test_empty_polygon_is_rejected():
    with pytest.raises(InputError):
        render_svg(HNPolygon((), (), ()))


def test_convex_hull_drops_interior_and_collinear_points():
    points = [rc(0, 0), rc(2, 0), rc(1, 0), rc(0, 2), rc(2, 2), rc(1, 1)]
    assert convex_hull(points) == [rc(0, 0), rc(2, 0), rc(2, 2), rc(0, 2)]


def test_write_svg(tmp_path, p1, unstable_charge):
    target = tmp_path / "out" / "polygon.svg"
    write_svg(target, render_svg(object_polygon(p1, unstable_charge)))
    assert target.read_text(encoding="utf-8").rstrip().endswith("</svg>")
