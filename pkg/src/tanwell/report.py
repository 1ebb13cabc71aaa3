"""Deterministic CSV/JSON serialization of cycle reports.

All floats are rounded to a configurable number of significant digits
before serialization, so identical inputs always produce byte-identical
output and a re-read report round-trips exactly at that precision.
"""

from __future__ import annotations

import json
import math

from .engine import CycleReport

__all__ = [
    "round_sig",
    "report_to_dict",
    "to_json",
    "from_json",
    "format_csv",
    "SPECTRUM_HEADER",
    "SWEEP_HEADER",
]

SPECTRUM_HEADER = ("n", "e_analytic", "e_oracle", "rel_err")
SWEEP_HEADER = ("param", "eta_exact", "eta_paper", "work", "q_hot", "q_cold")

DEFAULT_PRECISION = 12
PRECISION_RANGE = (6, 17)


def check_precision(precision: int) -> int:
    lo, hi = PRECISION_RANGE
    if isinstance(precision, bool) or not isinstance(precision, int) \
            or not lo <= precision <= hi:
        raise ValueError(f"precision must be an integer in [{lo}, {hi}], "
                         f"got {precision!r}")
    return precision


def round_sig(value: float, precision: int) -> float:
    """Round to ``precision`` significant digits (exactly representable)."""
    if value == 0.0 or not math.isfinite(value):
        return float(value)
    return float(f"{value:.{precision}g}")


def _rounded(obj, precision: int):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return round_sig(obj, precision)
    if isinstance(obj, dict):
        return {k: _rounded(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v, precision) for v in obj]
    return obj


def report_to_dict(report: CycleReport) -> dict:
    """Plain-dict mirror of a CycleReport, with a stable key order."""
    return {
        "cycle": report.cycle,
        "mode": report.mode,
        "corner_lengths": list(report.corner_lengths),
        "corner_pressures": list(report.corner_pressures),
        "net_work": report.net_work,
        "q_hot": report.q_hot,
        "q_cold": report.q_cold,
        "efficiency": report.efficiency,
        "strokes": [
            {
                "kind": s.kind,
                "level": s.level,
                "work": s.work,
                "heat": s.heat,
                "samples": [[p.L, p.P, p.E, p.w1] for p in s.samples],
            }
            for s in report.strokes
        ],
        "extras": dict(report.extras),
    }


def to_json(payload: dict, precision: int = DEFAULT_PRECISION) -> str:
    """Serialize with rounded floats; trailing newline included."""
    check_precision(precision)
    return json.dumps(_rounded(payload, precision), indent=2) + "\n"


def from_json(text: str) -> dict:
    return json.loads(text)


def format_csv(header: tuple[str, ...], rows, precision: int = DEFAULT_PRECISION) -> str:
    """CSV with '.' decimals, ',' separators and a header row."""
    check_precision(precision)
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for value in row:
            if isinstance(value, float):
                cells.append(f"{value:.{precision}g}")
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
