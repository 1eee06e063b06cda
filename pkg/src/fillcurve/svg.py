"""Deterministic SVG 1.1 rendering of chain levels and square-chain maps.

The only place rationals leave exact form: coordinates are rendered to
decimal with round-half-even at 12 significant digits.  Output is a pure
function of the inputs, so identical calls yield byte-identical documents.
The y axis is flipped at serialization time (SVG y grows downward).
"""

from __future__ import annotations

from fractions import Fraction

from .geometry import Point2
from .knopp import ChainLevel
from .lance_thomas import DIAGONAL, ParamMap
from .rational import decimal_str

SVG_OPEN = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            'viewBox="{viewbox}">')


def _coord(value: Fraction) -> str:
    return decimal_str(value, 12)


def _xy(p: Point2) -> str:
    return f"{_coord(p.x)},{_coord(-p.y)}"


def _viewbox(xs, ys) -> str:
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    margin = max(xmax - xmin, ymax - ymin) / 20
    return " ".join(_coord(v) for v in (
        xmin - margin, -(ymax + margin),
        (xmax - xmin) + 2 * margin, (ymax - ymin) + 2 * margin))


def _polyline_element(points, stroke: str, stroke_width: str) -> str:
    joined = " ".join(_xy(p) for p in points)
    return (f'<polyline points="{joined}" fill="none" stroke="{stroke}" '
            f'stroke-width="{stroke_width}"/>')


def render_knopp(chain: ChainLevel, *, fill: str = "#9ecae1",
                 fill_alt: str | None = "#4292c6", stroke: str = "#1c2541",
                 stroke_width: str = "0.004", show_polyline: bool = False,
                 polyline_stroke: str = "#d62728") -> str:
    """One filled polygon per chain triangle (2^depth of them, in address
    order), optionally followed by the exact dyadic-vertex polyline."""
    corners = [v for t in (chain.root,) for v in t.vertices]
    lines = [SVG_OPEN.format(viewbox=_viewbox([p.x for p in corners],
                                              [p.y for p in corners]))]
    for tri in chain.triangles:
        shade = fill
        if fill_alt is not None and tri.address.count("1") % 2 == 1:
            shade = fill_alt
        pts = " ".join(_xy(v) for v in tri.shape.vertices)
        lines.append(f'<polygon points="{pts}" fill="{shade}" '
                     f'stroke="{stroke}" stroke-width="{stroke_width}"/>')
    if show_polyline:
        lines.append(_polyline_element(chain.dyadic_polyline(),
                                       polyline_stroke, stroke_width))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_lt(pmap: ParamMap, *, cell_fill: str = "#c6dbef",
              cell_stroke: str = "#2c3e50", stroke_width: str = "0.003",
              polyline_stroke: str = "#b3003c") -> str:
    """One rect per generation cell (4^n of them) plus the full polygonal
    line: 2*4^n breakpoints, hence 2*4^n - 1 segments."""
    lines = [SVG_OPEN.format(viewbox=_viewbox([Fraction(0), Fraction(1)],
                                              [Fraction(0), Fraction(1)]))]
    for piece in pmap.pieces:
        if piece.kind != DIAGONAL:
            continue
        side = piece.end.x - piece.start.x
        lines.append(f'<rect x="{_coord(piece.start.x)}" '
                     f'y="{_coord(-(piece.start.y + side))}" '
                     f'width="{_coord(side)}" height="{_coord(side)}" '
                     f'fill="{cell_fill}" stroke="{cell_stroke}" '
                     f'stroke-width="{stroke_width}"/>')
    lines.append(_polyline_element(pmap.polyline(), polyline_stroke,
                                   stroke_width))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
