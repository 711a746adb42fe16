"""SVG rendering of layout documents.

Squares are emitted back to front in stacking order, so the SVG painter
model reproduces the visibility semantics of the evaluator.
"""

from __future__ import annotations

from typing import Sequence

from .document import LayoutDocument

DEFAULT_FILLS = ("#a6cee3", "#fdbf6f", "#b2df8a", "#cab2d6")
DEFAULT_STROKE = "#1f3552"


def _num(v: float) -> str:
    return f"{v:.6g}"


def render_svg(
    doc: LayoutDocument,
    scale: float = 80.0,
    fills: Sequence[str] = DEFAULT_FILLS,
    stroke: str = DEFAULT_STROKE,
    stroke_width: float = 0.02,
) -> str:
    """Render a document as SVG text, one rect per square in z order.

    ``scale`` is pixels per strip unit; ``stroke_width`` is in strip
    units.  The strip outline is drawn as a path so the rect elements
    correspond one-to-one with squares.
    """
    w_px = doc.width * scale
    h_px = doc.height * scale
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(w_px)}" height="{_num(h_px)}" '
        f'viewBox="0 0 {_num(w_px)} {_num(h_px)}">',
        f'<path d="M 0 0 H {_num(w_px)} V {_num(h_px)} H 0 Z" '
        f'fill="#ffffff" stroke="#888888" stroke-width="1"/>',
    ]
    sw = _num(stroke_width * scale)
    for s in sorted(doc.squares, key=lambda s: s.z):
        px = (s.x - 0.5) * scale
        py = (doc.height - s.y - 0.5) * scale
        fill = fills[s.z % len(fills)]
        lines.append(
            f'<rect x="{_num(px)}" y="{_num(py)}" '
            f'width="{_num(scale)}" height="{_num(scale)}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="{sw}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
