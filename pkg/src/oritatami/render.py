"""SVG and ASCII pictures of conformations, shape sequences and curves.

Lattice points go through the axial-to-plane map (unit spacing, 60 degree
basis), scaled by ``SCALE`` pixels. Colours and radii are fixed so equal
input gives byte-identical output.
"""

from __future__ import annotations

import math

from .lattice import LatticePoint, to_plane

SCALE = 20.0
BEAD_RADIUS = 0.3
MARGIN = 1.0
BACKBONE = "#333333"
BOND = "#d62728"
SHAPE_FILL = ("#1f77b4", "#ff7f0e")  # point-shapes, segment-shapes
SHAPE_OPACITY = 0.25
CURVE = "#2ca02c"
BEAD_FILL = {"default": "#ffffff"}


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _xy(p) -> tuple[float, float]:
    x, y = to_plane(LatticePoint(*p))
    return x * SCALE, -y * SCALE  # SVG y grows downwards


def _cell(p) -> str:
    """Hexagonal Voronoi cell of a lattice point, as polygon coordinates."""
    cx, cy = _xy(p)
    r = SCALE / math.sqrt(3)
    pts = []
    for k in range(6):
        a = math.radians(60 * k + 30)
        pts.append(f"{_fmt(cx + r * math.cos(a))},{_fmt(cy + r * math.sin(a))}")
    return " ".join(pts)


def _frame(points) -> tuple[float, float, float, float]:
    xs, ys = zip(*(_xy(p) for p in points)) if points else ((0.0,), (0.0,))
    m = MARGIN * SCALE
    return min(xs) - m, min(ys) - m, max(xs) - min(xs) + 2 * m, max(ys) - min(ys) + 2 * m


def svg_document(conf=None, shapes=None, curve_points=None) -> str:
    """One SVG with any of: shape polygons, a curve polyline, a conformation."""
    everything = []
    if shapes is not None:
        everything += [p for s in shapes.shapes for p in s.points]
    if curve_points is not None:
        everything += list(curve_points)
    if conf is not None:
        everything += list(conf.path)
    x0, y0, w, h = _frame(everything)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}" '
        f'width="{_fmt(w)}" height="{_fmt(h)}">',
    ]
    if shapes is not None:
        out.append('<g class="shapes">')
        for s in shapes.shapes:
            colour = SHAPE_FILL[s.index % 2]
            for p in sorted(s.points):
                out.append(f'<polygon class="shape-{s.index}" points="{_cell(p)}" fill="{colour}" '
                           f'fill-opacity="{SHAPE_OPACITY}" stroke="none"/>')
        out.append("</g>")
    if curve_points is not None and len(curve_points) > 1:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(_xy, curve_points))
        out.append(f'<polyline class="curve" points="{pts}" fill="none" stroke="{CURVE}" stroke-width="2"/>')
    if conf is not None:
        out.append('<g class="backbone">')
        for a, b in zip(conf.path, conf.path[1:]):
            (x1, y1), (x2, y2) = _xy(a), _xy(b)
            out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                       f'stroke="{BACKBONE}" stroke-width="3"/>')
        out.append("</g>")
        out.append('<g class="bonds">')
        for i, j in sorted(conf.bonds):
            (x1, y1), (x2, y2) = _xy(conf.path[i]), _xy(conf.path[j])
            out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                       f'stroke="{BOND}" stroke-width="1.5" stroke-dasharray="3,2"/>')
        out.append("</g>")
        out.append('<g class="beads">')
        r = _fmt(BEAD_RADIUS * SCALE)
        for k, (p, b) in enumerate(zip(conf.path, conf.beads)):
            x, y = _xy(p)
            fill = BEAD_FILL.get(b, BEAD_FILL["default"])
            out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="{fill}" stroke="{BACKBONE}">'
                       f"<title>{k} {b}</title></circle>")
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def ascii_picture(marks: dict) -> str:
    """Text drawing of ``{point: char}``; rows are constant ``y``, top row largest.

    Column ``2x + y`` keeps the 60 degree geometry: neighbours along a row are
    two columns apart, and each row up shifts half a cell right.
    """
    if not marks:
        return ""
    cols = {p: 2 * p.x + p.y for p in marks}
    c0 = min(cols.values())
    lines = []
    for y in range(max(p.y for p in marks), min(p.y for p in marks) - 1, -1):
        row = {cols[p] - c0: ch for p, ch in marks.items() if p.y == y}
        width = max(row) + 1 if row else 0
        lines.append("".join(row.get(c, " ") for c in range(width)).rstrip())
    return "\n".join(lines) + "\n"


def ascii_conformation(conf) -> str:
    return ascii_picture({LatticePoint(*p): b[0] for p, b in zip(conf.path, conf.beads)})


def ascii_shapes(seq) -> str:
    """Point-shapes drawn as ``o``, segment-shapes as ``#``."""
    return ascii_picture({p: ("o" if s.index % 2 == 0 else "#") for s in seq.shapes for p in s.points})
