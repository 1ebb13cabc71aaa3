"""Standalone, dependency-free SVG rendering of a P-L cycle diagram.

The output is deterministic byte-for-byte for identical input: fixed
coordinate formatting, no timestamps, no generated ids.
"""

from __future__ import annotations

from .engine import CycleReport

__all__ = ["render_pl_svg", "pl_svg_text"]

_WIDTH = 640.0
_HEIGHT = 480.0
_MARGIN = 60.0
_STROKE_COLORS = ("#c0392b", "#2980b9", "#27ae60", "#8e44ad")


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def pl_svg_text(report: CycleReport, precision: int = 6) -> str:
    """Build the SVG document for a four-stroke cycle in the (L, P) plane."""
    for stroke in report.strokes:
        if len(stroke.samples) < 16:
            raise ValueError("each stroke needs at least 16 samples to render")

    xs = [s.L for st in report.strokes for s in st.samples]
    ys = [s.P for st in report.strokes for s in st.samples]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_span = x_hi - x_lo or 1.0
    y_span = y_hi - y_lo or 1.0

    def to_x(L: float) -> float:
        return _MARGIN + (L - x_lo) / x_span * (_WIDTH - 2 * _MARGIN)

    def to_y(P: float) -> float:
        return _HEIGHT - _MARGIN - (P - y_lo) / y_span * (_HEIGHT - 2 * _MARGIN)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH:.0f}" '
        f'height="{_HEIGHT:.0f}" viewBox="0 0 {_WIDTH:.0f} {_HEIGHT:.0f}">',
        f'<rect width="{_WIDTH:.0f}" height="{_HEIGHT:.0f}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">'
        f'{report.cycle} cycle ({report.mode} mode), '
        f'efficiency {report.efficiency:.{precision}g}</text>',
        # axes
        f'<line x1="{_fmt(_MARGIN)}" y1="{_fmt(_HEIGHT - _MARGIN)}" '
        f'x2="{_fmt(_WIDTH - _MARGIN / 2)}" y2="{_fmt(_HEIGHT - _MARGIN)}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="{_fmt(_MARGIN)}" y1="{_fmt(_HEIGHT - _MARGIN)}" '
        f'x2="{_fmt(_MARGIN)}" y2="{_fmt(_MARGIN / 2)}" '
        'stroke="black" stroke-width="1"/>',
        f'<text x="{_fmt(_WIDTH - _MARGIN / 2)}" y="{_fmt(_HEIGHT - _MARGIN + 20)}" '
        'text-anchor="end" font-family="sans-serif" font-size="13" '
        'font-style="italic">L</text>',
        f'<text x="{_fmt(_MARGIN - 12)}" y="{_fmt(_MARGIN / 2 + 4)}" '
        'text-anchor="end" font-family="sans-serif" font-size="13" '
        'font-style="italic">P</text>',
        f'<text x="{_fmt(_MARGIN)}" y="{_fmt(_HEIGHT - _MARGIN + 20)}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="11">'
        f'{x_lo:.{precision}g}</text>',
        f'<text x="{_fmt(_WIDTH - _MARGIN)}" y="{_fmt(_HEIGHT - _MARGIN + 20)}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="11">'
        f'{x_hi:.{precision}g}</text>',
        f'<text x="{_fmt(_MARGIN - 8)}" y="{_fmt(_HEIGHT - _MARGIN + 4)}" '
        f'text-anchor="end" font-family="sans-serif" font-size="11">'
        f'{y_lo:.{precision}g}</text>',
        f'<text x="{_fmt(_MARGIN - 8)}" y="{_fmt(_MARGIN + 4)}" '
        f'text-anchor="end" font-family="sans-serif" font-size="11">'
        f'{y_hi:.{precision}g}</text>',
    ]

    # strokes as polylines, traversal order 1 -> 2 -> 3 -> 4
    for idx, stroke in enumerate(report.strokes):
        pts = " ".join(
            f"{_fmt(to_x(s.L))},{_fmt(to_y(s.P))}" for s in stroke.samples
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" '
            f'stroke="{_STROKE_COLORS[idx]}" stroke-width="2"/>'
        )
        # arrowhead at the midpoint, oriented along the traversal
        mid = len(stroke.samples) // 2
        ax, ay = to_x(stroke.samples[mid].L), to_y(stroke.samples[mid].P)
        bx, by = to_x(stroke.samples[mid + 1].L), to_y(stroke.samples[mid + 1].P)
        dx, dy = bx - ax, by - ay
        norm = (dx * dx + dy * dy) ** 0.5 or 1.0
        ux, uy = dx / norm, dy / norm
        size = 7.0
        tip_x, tip_y = ax + ux * size, ay + uy * size
        left_x = ax - uy * 0.5 * size
        left_y = ay + ux * 0.5 * size
        right_x = ax + uy * 0.5 * size
        right_y = ay - ux * 0.5 * size
        parts.append(
            f'<polygon points="{_fmt(tip_x)},{_fmt(tip_y)} '
            f'{_fmt(left_x)},{_fmt(left_y)} {_fmt(right_x)},{_fmt(right_y)}" '
            f'fill="{_STROKE_COLORS[idx]}"/>'
        )

    # numbered corners in traversal order
    corners = [st.samples[0] for st in report.strokes]
    for number, sample in enumerate(corners, start=1):
        cx, cy = to_x(sample.L), to_y(sample.P)
        parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="4" fill="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(cx + 8)}" y="{_fmt(cy - 8)}" '
            f'font-family="sans-serif" font-size="13">{number}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_pl_svg(report: CycleReport, path: str, precision: int = 6) -> None:
    """Write the P-L diagram of ``report`` to ``path``."""
    text = pl_svg_text(report, precision)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
