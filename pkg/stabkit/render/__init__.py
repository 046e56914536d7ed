"""SVG rendering of HN polygons."""
from stabkit.render.svg import render_svg, write_svg

__all__ = ["render_svg", "write_svg"]
