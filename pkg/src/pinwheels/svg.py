"""SVG drawings of decorated cones and triangles.

Outlines are drawn as a ``path``, cuts as dashed ``line`` elements with
class ``cut`` and nodes as star-shaped ``polygon`` elements with class
``star``.  The y axis points up and the lowest, leftmost lattice point of
the drawing sits at the lower left.
"""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .atf import DecoratedCone, DecoratedTriangle

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class SvgOptions:
    unit: float = 20.0
    margin: float = 20.0
    star_radius: float = 6.0
    labels: bool = True
    max_size: Optional[float] = None
    stroke: str = "black"


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    def __init__(self, points, opts: SvgOptions):
        xs = [float(p[0]) for p in points]
        ys = [float(p[1]) for p in points]
        self.xmin, self.ymax = min(xs), max(ys)
        w, h = max(xs) - self.xmin, self.ymax - min(ys)
        unit = opts.unit
        if opts.max_size and max(w, h) * unit > opts.max_size:
            unit = opts.max_size / max(w, h)
        self.unit = unit
        self.margin = opts.margin
        self.width = w * unit + 2 * opts.margin
        self.height = h * unit + 2 * opts.margin

    def __call__(self, p) -> tuple[float, float]:
        return (
            self.margin + (float(p[0]) - self.xmin) * self.unit,
            self.margin + (self.ymax - float(p[1])) * self.unit,
        )


def _star(cx: float, cy: float, r: float) -> str:
    pts = []
    for k in range(10):
        rad = r if k % 2 == 0 else r * 0.45
        ang = math.pi / 2 + k * math.pi / 5
        pts.append(f"{_fmt(cx + rad * math.cos(ang))},{_fmt(cy - rad * math.sin(ang))}")
    return " ".join(pts)


def _document(frame: _Frame) -> ET.Element:
    return ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "version": "1.1",
            "width": _fmt(frame.width),
            "height": _fmt(frame.height),
            "viewBox": f"0 0 {_fmt(frame.width)} {_fmt(frame.height)}",
        },
    )


def _cut(root, frame, a, b, opts):
    (x1, y1), (x2, y2) = frame(a), frame(b)
    ET.SubElement(
        root, "line",
        {"class": "cut", "x1": _fmt(x1), "y1": _fmt(y1), "x2": _fmt(x2), "y2": _fmt(y2),
         "stroke": opts.stroke, "stroke-dasharray": "4,3"},
    )


def _node(root, frame, p, opts):
    cx, cy = frame(p)
    ET.SubElement(root, "polygon", {"class": "star", "points": _star(cx, cy, opts.star_radius), "fill": opts.stroke})


def _label(root, frame, p, text, opts):
    x, y = frame(p)
    el = ET.SubElement(root, "text", {"x": _fmt(x + 4), "y": _fmt(y - 4), "font-size": "10"})
    el.text = text


def _cone_svg(cone: DecoratedCone, opts: SvgOptions) -> ET.Element:
    # truncate both edges at height or width 2p so the node sits well inside
    e1 = (Fraction(2 * cone.p), 0)
    e2 = (Fraction(2 * cone.edge2[0], cone.p), Fraction(2 * cone.edge2[1], cone.p))
    origin = (0, 0)
    frame = _Frame([origin, e1, e2, cone.node], opts)
    root = _document(frame)
    pts = [frame(p) for p in (e1, origin, e2)]
    d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts)
    ET.SubElement(root, "path", {"d": d, "fill": "none", "stroke": opts.stroke})
    _cut(root, frame, origin, cone.node, opts)
    _node(root, frame, cone.node, opts)
    if opts.labels:
        _label(root, frame, cone.node, f"({cone.node[0]},{cone.node[1]})", opts)
    return root


def _triangle_svg(tri: DecoratedTriangle, opts: SvgOptions) -> ET.Element:
    frame = _Frame(tri.vertices, opts)
    root = _document(frame)
    pts = [frame(v) for v in tri.vertices]
    d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts) + " Z"
    ET.SubElement(root, "path", {"d": d, "fill": "none", "stroke": opts.stroke})
    for cut in tri.cuts:
        _cut(root, frame, tri.vertices[cut.corner], cut.node, opts)
        _node(root, frame, cut.node, opts)
    if opts.labels:
        for v, p in zip(tri.vertices, tri.orders):
            _label(root, frame, v, str(p), opts)
    return root


def render_svg(obj: Union[DecoratedCone, DecoratedTriangle], opts: Optional[SvgOptions] = None) -> str:
    opts = opts or SvgOptions()
    if isinstance(obj, DecoratedCone):
        root = _cone_svg(obj, opts)
    elif isinstance(obj, DecoratedTriangle):
        root = _triangle_svg(obj, opts)
    else:
        raise TypeError(f"cannot draw {type(obj).__name__}")
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def count_elements(svg_text: str) -> dict:
    """Parse and count outlines, cuts and stars; raises on malformed XML."""
    root = ET.fromstring(svg_text)
    ns = {"s": SVG_NS}
    return {
        "path": len(root.findall(".//s:path", ns)),
        "cut": len(root.findall(".//s:line[@class='cut']", ns)),
        "star": len(root.findall(".//s:polygon[@class='star']", ns)),
    }
