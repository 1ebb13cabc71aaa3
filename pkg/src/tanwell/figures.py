"""Matplotlib rendering of cycle diagrams to image files.

Complements :mod:`tanwell.svg`: the SVG writer is the deterministic,
diff-able artifact; this module produces publication-style raster/vector
figures via matplotlib for human consumption.
"""

from __future__ import annotations

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .engine import CycleReport

__all__ = ["render_pl_figure"]

_MODE_STYLE = {"exact": "-", "paper": "--"}
_STROKE_COLORS = ("#c0392b", "#2980b9", "#27ae60", "#8e44ad")


def render_pl_figure(reports: list[CycleReport], path: str, dpi: int = 150) -> None:
    """Draw one or more cycle reports in the (L, P) plane and save to ``path``.

    The file format follows the extension (png, pdf, svg, ...).
    """
    if not reports:
        raise ValueError("at least one report is required")
    fig = Figure(figsize=(6.4, 4.8))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(1, 1, 1)
    for report in reports:
        style = _MODE_STYLE.get(report.mode, "-")
        for idx, stroke in enumerate(report.strokes):
            xs = [s.L for s in stroke.samples]
            ys = [s.P for s in stroke.samples]
            label = None
            if idx == 0:
                label = f"{report.mode} mode, eta = {report.efficiency:.4g}"
            ax.plot(xs, ys, style, color=_STROKE_COLORS[idx], label=label)
        for number, stroke in enumerate(report.strokes, start=1):
            first = stroke.samples[0]
            ax.annotate(str(number), (first.L, first.P),
                        textcoords="offset points", xytext=(6, 6), fontsize=9)
    ax.set_xlabel("well width L")
    ax.set_ylabel("wall pressure P")
    ax.set_title(f"{reports[0].cycle} cycle")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
