"""Deterministic SVG rendering of leaf boundary samples.

Fixed 800x800 canvas, uniform scale, 10% padding around the drawn geometry.
One path per boundary spiral; the two pieces of a degenerate leaf
(delta_minus == delta_plus) form a single path through the median point.
Identical inputs produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParameterError
from .leaves import BoundarySamples, Leaf

CANVAS = 800.0
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _mapper(leaf: Leaf, samples: BoundarySamples):
    xs = [leaf.z1.real, leaf.z2.real, samples.median.real]
    ys = [leaf.z1.imag, leaf.z2.imag, samples.median.imag]
    for piece in samples.pieces:
        xs.extend(piece.points.real)
        ys.extend(piece.points.imag)
    cx, cy = (min(xs) + max(xs)) / 2.0, (min(ys) + max(ys)) / 2.0
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-300)
    scale = CANVAS / (1.2 * span)

    def to_canvas(z: complex) -> tuple[float, float]:
        return (CANVAS / 2.0 + (z.real - cx) * scale,
                CANVAS / 2.0 - (z.imag - cy) * scale)

    return to_canvas


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _path(points, label: str, color: str) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    return (f'  <polyline data-label="{label}" fill="none" stroke="{color}" '
            f'stroke-width="1.5" points="{coords}"/>')


def _cross(x: float, y: float, label: str) -> str:
    r = 6.0
    return (f'  <g data-label="{label}" stroke="#000" stroke-width="1.5">'
            f'<line x1="{_fmt(x - r)}" y1="{_fmt(y)}" x2="{_fmt(x + r)}" y2="{_fmt(y)}"/>'
            f'<line x1="{_fmt(x)}" y1="{_fmt(y - r)}" x2="{_fmt(x)}" y2="{_fmt(y + r)}"/>'
            f'</g>')


def render_leaf_svg(leaf: Leaf, samples: BoundarySamples) -> str:
    """SVG document for the sampled leaf boundary (pure string form)."""
    if not samples.pieces or all(len(p.points) == 0 for p in samples.pieces):
        raise ParameterError("no boundary samples to draw")
    to_canvas = _mapper(leaf, samples)
    degenerate = leaf.delta_minus == leaf.delta_plus

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(CANVAS)}" '
        f'height="{int(CANVAS)}" viewBox="0 0 {int(CANVAS)} {int(CANVAS)}">',
        '  <rect width="100%" height="100%" fill="white"/>',
    ]
    if degenerate:
        # one continuous path: ... <- z1 side <- median -> z2 side -> ...
        to_z1 = next(p for p in samples.pieces if p.toward == "z1")
        to_z2 = next(p for p in samples.pieces if p.toward == "z2")
        chain = (list(to_z1.points[::-1]) + [samples.median] + list(to_z2.points))
        lines.append(_path([to_canvas(z) for z in chain],
                           f"{to_z1.label}|{to_z2.label}", _COLORS[0]))
    else:
        for k, piece in enumerate(samples.pieces):
            chain = [samples.median] + list(piece.points)
            lines.append(_path([to_canvas(z) for z in chain],
                               piece.label, _COLORS[k % len(_COLORS)]))
    mx, my = to_canvas(samples.median)
    lines.append(f'  <circle data-label="median" cx="{_fmt(mx)}" cy="{_fmt(my)}" '
                 f'r="4" fill="#000"/>')
    for z, lab in ((leaf.z1, "z1"), (leaf.z2, "z2")):
        x, y = to_canvas(z)
        lines.append(_cross(x, y, lab))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_leaf_svg(leaf: Leaf, samples: BoundarySamples, out) -> Path:
    """Write the leaf plot; identical input yields byte-identical output."""
    out = Path(out)
    try:
        out.write_text(render_leaf_svg(leaf, samples), encoding="ascii")
    except OSError as exc:
        raise ParameterError(f"cannot write {out}: {exc}") from exc
    return out
