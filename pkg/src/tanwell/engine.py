"""Joule-Brayton and Otto cycles over a two-level working medium.

Every cycle is built twice:

* ``exact`` mode uses the differentiated spectrum (:func:`pressure_exact`)
  and true root-found corners, so the first law and cycle closure hold to
  rounding.
* ``paper`` mode evaluates the quoted closed forms verbatim, with the
  stiffness frozen at each stroke's reference corner.  Those forms are not
  mutually consistent away from the box limit; the point of paper mode is
  to reproduce them exactly and let the report quantify the gaps.

Sign conventions: work done BY the medium is positive on expansion; the
cold heat is reported as a magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .numerics import BracketError, adaptive_simpson, grow_bracket, solve_bracketed
from .well import PTWell, derive_params, energy_level, pressure_exact, pressure_paper

__all__ = [
    "ISOBARIC",
    "ISOCHORIC",
    "ADIABATIC",
    "JOULE_BRAYTON",
    "OTTO",
    "CycleError",
    "InfeasibleCycleError",
    "TwoLevelState",
    "StrokeSample",
    "Stroke",
    "CycleReport",
    "mixture_energy",
    "mixture_pressure",
    "jb_cycle",
    "otto_cycle",
    "adiabatic_invariant",
]

ISOBARIC = "isobaric"
ISOCHORIC = "isochoric"
ADIABATIC = "adiabatic"
JOULE_BRAYTON = "joule_brayton"
OTTO = "otto"

_MODES = ("exact", "paper")
_ROOT_RTOL = 1e-12
_QUAD_RTOL = 1e-12
_WEIGHT_SLACK = 1e-9


class CycleError(ValueError):
    """Cycle parameters are degenerate or out of range."""


class InfeasibleCycleError(RuntimeError):
    """The requested cycle cannot be traversed by a two-level medium."""


@dataclass(frozen=True)
class TwoLevelState:
    """Mixture weights over the working pair n=1, n=2."""

    w1: float
    w2: float

    def __post_init__(self):
        if not (0.0 <= self.w1 <= 1.0 and 0.0 <= self.w2 <= 1.0):
            raise ValueError(f"weights must lie in [0, 1], got ({self.w1}, {self.w2})")
        if abs(self.w1 + self.w2 - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {self.w1 + self.w2}")

    @classmethod
    def from_w1(cls, w1: float) -> "TwoLevelState":
        return cls(w1, 1.0 - w1)


class StrokeSample(NamedTuple):
    L: float
    P: float
    E: float
    w1: float


@dataclass(frozen=True)
class Stroke:
    """One cycle leg: kind, fixed level on adiabats, sampled path, work, heat."""

    kind: str
    level: int | None
    samples: tuple[StrokeSample, ...]
    work: float
    heat: float


@dataclass(frozen=True)
class CycleReport:
    """Four strokes plus the cycle-level energy bookkeeping."""

    cycle: str
    mode: str
    strokes: tuple[Stroke, Stroke, Stroke, Stroke]
    corner_lengths: tuple[float, float, float, float]
    corner_pressures: tuple[float, float, float, float]
    net_work: float
    q_hot: float
    q_cold: float
    efficiency: float
    extras: dict


def mixture_energy(well: PTWell, state: TwoLevelState) -> float:
    """Mean energy w1*E1 + w2*E2 of the two-level mixture."""
    return state.w1 * energy_level(well, 1) + state.w2 * energy_level(well, 2)


def mixture_pressure(well: PTWell, state: TwoLevelState, variant: str = "exact") -> float:
    """Mean wall pressure of the mixture; ``variant`` picks the pressure route."""
    if variant == "exact":
        p1, p2 = pressure_exact(well, 1), pressure_exact(well, 2)
    elif variant == "paper":
        p1, p2 = pressure_paper(well, 1), pressure_paper(well, 2)
    else:
        raise ValueError(f"variant must be 'exact' or 'paper', got {variant!r}")
    return state.w1 * p1 + state.w2 * p2


def adiabatic_invariant(stroke: Stroke) -> float:
    """Max relative deviation of L^3 * P over an adiabat's samples.

    Zero (to rounding) whenever the pressure is a frozen-stiffness closed
    form proportional to 1/L^3; nonzero in exact mode with v0 > 0.
    """
    if stroke.kind != ADIABATIC:
        raise ValueError(f"adiabatic invariant needs an adiabat, got {stroke.kind!r}")
    values = [s.L**3 * s.P for s in stroke.samples]
    ref = values[0]
    return max(abs(v - ref) for v in values) / abs(ref)


def _check_mode(mode: str) -> str:
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
    return mode


def _check_samples(samples: int) -> int:
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 16:
        raise CycleError(f"samples must be an integer >= 16, got {samples!r}")
    return samples


def _paper_g(well: PTWell) -> float:
    # lam * (1 - mu) = lam (lam - 1) / (2 lam - 1); exactly 0 in the box limit.
    p = derive_params(well)
    return p.lam * (p.lam - 1.0) / (2.0 * p.lam - 1.0)


# ---------------------------------------------------------------------------
# Exact mode
# ---------------------------------------------------------------------------

def _exact_isobar(well: PTWell, p_ref: float, l_start: float, l_end: float,
                  samples: int) -> tuple[Stroke, float]:
    """Sample an isobar; weights solve w1*P1(L) + w2*P2(L) = p_ref."""
    grid = np.linspace(l_start, l_end, samples)
    out = []
    for L in grid:
        at = well.with_width(float(L))
        p1 = pressure_exact(at, 1)
        p2 = pressure_exact(at, 2)
        w1 = (p_ref - p2) / (p1 - p2)
        if not -_WEIGHT_SLACK <= w1 <= 1.0 + _WEIGHT_SLACK:
            raise InfeasibleCycleError(
                f"isobar weight left [0, 1] at L={float(L)!r} (w1={w1!r})"
            )
        w1 = min(1.0, max(0.0, w1))
        energy = w1 * energy_level(at, 1) + (1.0 - w1) * energy_level(at, 2)
        out.append(StrokeSample(float(L), w1 * p1 + (1.0 - w1) * p2, energy, w1))
    work = p_ref * (l_end - l_start)
    heat = (out[-1].E - out[0].E) + work
    return Stroke(ISOBARIC, None, tuple(out), work, heat), heat


def _exact_adiabat(well: PTWell, n: int, l_start: float, l_end: float,
                   samples: int) -> tuple[Stroke, float]:
    """Adiabat at fixed level n; work is the energy drop, checked by quadrature."""
    grid = np.linspace(l_start, l_end, samples)
    w1 = 1.0 if n == 1 else 0.0
    out = [
        StrokeSample(float(L), pressure_exact(well.with_width(float(L)), n),
                     energy_level(well.with_width(float(L)), n), w1)
        for L in grid
    ]
    work = out[0].E - out[-1].E
    area = adaptive_simpson(
        lambda L: pressure_exact(well.with_width(L), n),
        l_start, l_end, tol=_QUAD_RTOL * max(abs(work), out[0].E),
    )
    if abs(work - area) > 1e-8 * max(abs(work), 1e-300):
        raise InfeasibleCycleError(
            f"adiabat work {work!r} disagrees with its quadrature {area!r}"
        )
    return Stroke(ADIABATIC, n, tuple(out), work, 0.0), area


def _exact_isochore(well: PTWell, w1_start: float, w1_end: float,
                    samples: int) -> Stroke:
    grid = np.linspace(w1_start, w1_end, samples)
    e1, e2 = energy_level(well, 1), energy_level(well, 2)
    p1, p2 = pressure_exact(well, 1), pressure_exact(well, 2)
    out = [
        StrokeSample(well.L, w * p1 + (1.0 - w) * p2, w * e1 + (1.0 - w) * e2, float(w))
        for w in grid
    ]
    heat = out[-1].E - out[0].E
    return Stroke(ISOCHORIC, None, tuple(out), 0.0, heat)


def _jb_exact(well: PTWell, rp: float, samples: int) -> CycleReport:
    l1 = well.L
    p_a = pressure_exact(well, 1)
    p_b = p_a / rp

    def p_level(n: int) -> Callable[[float], float]:
        return lambda L: pressure_exact(well.with_width(L), n)

    try:
        # P2 > P1 > 0 everywhere and both fall to zero as L grows, so each
        # corner is a bracketed root along increasing L.
        a, b = grow_bracket(lambda L: p_level(2)(L) - p_a, l1, 0.25 * l1)
        l2 = solve_bracketed(lambda L: p_level(2)(L) - p_a, a, b, _ROOT_RTOL)
        a, b = grow_bracket(lambda L: p_level(2)(L) - p_b, l2, 0.25 * l2)
        l3 = solve_bracketed(lambda L: p_level(2)(L) - p_b, a, b, _ROOT_RTOL)
        l4 = solve_bracketed(lambda L: p_level(1)(L) - p_b, l1, l3, _ROOT_RTOL)
    except BracketError as exc:
        raise InfeasibleCycleError(f"corner search failed: {exc}") from exc

    s1, q_hot = _exact_isobar(well, p_a, l1, l2, samples)
    s2, area2 = _exact_adiabat(well, 2, l2, l3, samples)
    s3, heat3 = _exact_isobar(well, p_b, l3, l4, samples)
    s4, area4 = _exact_adiabat(well, 1, l4, l1, samples)
    if q_hot <= 0.0 or heat3 >= 0.0:
        raise InfeasibleCycleError("heat flow directions are inverted")

    q_cold = abs(heat3)
    net_work = s1.work + s2.work + s3.work + s4.work
    loop_area = s1.work + area2 + s3.work + area4
    extras = {
        "loop_area": loop_area,
        "pressure_ratio": rp,
        "adiabat_l3p_dev_expand": adiabatic_invariant(s2),
        "adiabat_l3p_dev_compress": adiabatic_invariant(s4),
    }
    return CycleReport(
        cycle=JOULE_BRAYTON, mode="exact", strokes=(s1, s2, s3, s4),
        corner_lengths=(l1, l2, l3, l4),
        corner_pressures=(p_a, p_a, p_b, p_b),
        net_work=net_work, q_hot=q_hot, q_cold=q_cold,
        efficiency=net_work / q_hot, extras=extras,
    )


def _otto_exact(well: PTWell, l3: float, samples: int) -> CycleReport:
    l1 = well.L
    far = well.with_width(l3)
    q_hot = energy_level(well, 2) - energy_level(well, 1)
    q_cold = energy_level(far, 2) - energy_level(far, 1)

    s1 = _exact_isochore(well, 1.0, 0.0, samples)
    s2, area2 = _exact_adiabat(well, 2, l1, l3, samples)
    s3 = _exact_isochore(far, 0.0, 1.0, samples)
    s4, area4 = _exact_adiabat(well, 1, l3, l1, samples)

    net_work = s2.work + s4.work
    extras = {
        "loop_area": area2 + area4,
        "compression_ratio": l3 / l1,
        "adiabat_l3p_dev_expand": adiabatic_invariant(s2),
        "adiabat_l3p_dev_compress": adiabatic_invariant(s4),
    }
    return CycleReport(
        cycle=OTTO, mode="exact", strokes=(s1, s2, s3, s4),
        corner_lengths=(l1, l1, l3, l3),
        corner_pressures=(pressure_exact(well, 1), pressure_exact(well, 2),
                          pressure_exact(far, 2), pressure_exact(far, 1)),
        net_work=net_work, q_hot=q_hot, q_cold=q_cold,
        efficiency=net_work / q_hot, extras=extras,
    )


# ---------------------------------------------------------------------------
# Paper mode (frozen-stiffness closed forms, evaluated verbatim)
# ---------------------------------------------------------------------------

def _frozen_energy(well: PTWell, n: int, g: float, L: float) -> float:
    # Energy implied by the frozen paper pressure through -dE/dL, so that
    # paper-mode strokes are internally first-law consistent.
    w_at = derive_params(well.with_width(L)).W
    return w_at * (n * n + (2 * n + 1) * g)


def _frozen_pressure(well: PTWell, n: int, g: float, L: float) -> float:
    return 2.0 * _frozen_energy(well, n, g, L) / L


def _paper_isobar(well: PTWell, p_ref: float, g: float, l_start: float,
                  l_end: float, w1_start: float, w1_end: float,
                  samples: int) -> Stroke:
    grid = np.linspace(l_start, l_end, samples)
    weights = np.linspace(w1_start, w1_end, samples)
    out = []
    for L, w1 in zip(grid, weights):
        energy = (w1 * _frozen_energy(well, 1, g, float(L))
                  + (1.0 - w1) * _frozen_energy(well, 2, g, float(L)))
        out.append(StrokeSample(float(L), p_ref, energy, float(w1)))
    work = p_ref * (l_end - l_start)
    heat = (out[-1].E - out[0].E) + work
    return Stroke(ISOBARIC, None, tuple(out), work, heat)


def _paper_adiabat(well: PTWell, n: int, g: float, l_start: float, l_end: float,
                   samples: int) -> Stroke:
    grid = np.linspace(l_start, l_end, samples)
    w1 = 1.0 if n == 1 else 0.0
    out = [
        StrokeSample(float(L), _frozen_pressure(well, n, g, float(L)),
                     _frozen_energy(well, n, g, float(L)), w1)
        for L in grid
    ]
    work = out[0].E - out[-1].E  # equals the frozen-form integral of P dL
    return Stroke(ADIABATIC, n, tuple(out), work, 0.0)


def _paper_isochore(well: PTWell, g: float, w1_start: float, w1_end: float,
                    samples: int) -> Stroke:
    grid = np.linspace(w1_start, w1_end, samples)
    out = []
    for w1 in grid:
        energy = (w1 * _frozen_energy(well, 1, g, well.L)
                  + (1.0 - w1) * _frozen_energy(well, 2, g, well.L))
        out.append(StrokeSample(well.L, 2.0 * energy / well.L, energy, float(w1)))
    return Stroke(ISOCHORIC, None, tuple(out), 0.0, out[-1].E - out[0].E)


def _jb_paper(well: PTWell, rp: float, samples: int) -> CycleReport:
    l1 = well.L
    w1_scale = derive_params(well).W
    g1 = _paper_g(well)
    k1 = 1.0 + 3.0 * g1  # n=1 bracket [1 + 3 lam (1 - mu)]
    k2 = 4.0 + 5.0 * g1  # n=2 bracket [4 + 5 lam (1 - mu)]

    # Corner pressure with the spectral bracket restored so strokes 4 and 1
    # meet at one pressure; the bracket-free verbatim value is reported too.
    p_a = (2.0 * w1_scale / l1) * k1
    p_a_verbatim = 2.0 * w1_scale / l1
    p_b = p_a / rp

    l2 = l1 * k2                          # verbatim isobar-end corner
    l3 = l1 * (k2 * rp / k1) ** (1.0 / 3.0)  # from the corner-pressure quotient
    g3 = _paper_g(well.with_width(l3))
    l4 = l3 * (1.0 + 3.0 * g3) / 2.0      # verbatim compression corner

    s1 = _paper_isobar(well, p_a, g1, l1, l2, 1.0, 0.0, samples)
    s2 = _paper_adiabat(well, 2, g1, l2, l3, samples)
    s3 = _paper_isobar(well, p_b, g3, l3, l4, 0.0, 1.0, samples)
    s4 = _paper_adiabat(well, 1, g3, l4, l1, samples)

    net_work = s1.work + s2.work + s3.work + s4.work
    q_hot = 1.5 * p_a * l1 * (3.0 + 5.0 * g1)
    q_cold = abs(s3.heat)
    efficiency = 1.0 - rp ** (-2.0 / 3.0)
    eta_corner_form = 1.0 - (k1 / k2) ** (1.0 / 3.0) * (p_b * l3) / (p_a * l1)
    extras = {
        "pressure_ratio": rp,
        "pressure_a_verbatim": p_a_verbatim,
        "eta_corner_form": eta_corner_form,
        "eta_work_ratio": net_work / q_hot,
        "q_hot_first_law": s1.heat,
        "adiabat_l3p_dev_expand": adiabatic_invariant(s2),
        "adiabat_l3p_dev_compress": adiabatic_invariant(s4),
    }
    return CycleReport(
        cycle=JOULE_BRAYTON, mode="paper", strokes=(s1, s2, s3, s4),
        corner_lengths=(l1, l2, l3, l4),
        corner_pressures=(p_a, p_a, p_b, p_b),
        net_work=net_work, q_hot=q_hot, q_cold=q_cold,
        efficiency=efficiency, extras=extras,
    )


def _otto_paper(well: PTWell, l3: float, samples: int) -> CycleReport:
    l1 = well.L
    far = well.with_width(l3)
    w_near = derive_params(well).W
    w_far = derive_params(far).W
    g1 = _paper_g(well)
    g3 = _paper_g(far)
    r_l = l3 / l1

    # Verbatim corner pressures; the n=1 corners carry no spectral bracket.
    p1 = 2.0 * w_near / l1
    p2 = p1 * (4.0 + 5.0 * g1)
    p3 = 2.0 * w_far / l3
    p4 = p3 * (1.0 + 3.0 * g3)

    s1 = _paper_isochore(well, g1, 1.0, 0.0, samples)
    s2 = _paper_adiabat(well, 2, g1, l1, l3, samples)
    s3 = _paper_isochore(far, g3, 0.0, 1.0, samples)
    s4 = _paper_adiabat(well, 1, g3, l3, l1, samples)

    q_hot = 0.5 * w_near * (3.0 + 5.0 * g1)
    q_cold = abs(-2.0 * w_far * (1.0 - 3.0 * g3))
    net_work = q_hot - q_cold
    bracket_ratio = (3.0 * g3 - 3.0) / (5.0 * g1 - 3.0)
    efficiency = 1.0 - bracket_ratio / r_l
    extras = {
        "compression_ratio": r_l,
        "eta_quadratic": 1.0 - bracket_ratio * (l1 * l1) / (l3 * l3),
        "eta_box_form": 1.0 - 1.0 / r_l,
        "q_hot_first_law": s1.heat,
        "q_cold_first_law": abs(s3.heat),
        "adiabat_l3p_dev_expand": adiabatic_invariant(s2),
        "adiabat_l3p_dev_compress": adiabatic_invariant(s4),
    }
    return CycleReport(
        cycle=OTTO, mode="paper", strokes=(s1, s2, s3, s4),
        corner_lengths=(l1, l1, l3, l3),
        corner_pressures=(p1, p2, p3, p4),
        net_work=net_work, q_hot=q_hot, q_cold=q_cold,
        efficiency=efficiency, extras=extras,
    )


# ---------------------------------------------------------------------------
# Public cycle constructors
# ---------------------------------------------------------------------------

def jb_cycle(well: PTWell, rp: float, mode: str = "exact",
             samples: int = 64) -> CycleReport:
    """Joule-Brayton cycle: two isobars (pressures P_A and P_A/rp) joined
    by adiabats on levels 2 and 1, starting pure n=1 at ``well.L``.
    """
    _check_mode(mode)
    _check_samples(samples)
    if not (isinstance(rp, (int, float)) and math.isfinite(rp)) or rp <= 1.0:
        raise CycleError(f"pressure ratio must be finite and > 1, got {rp!r}")
    rp = float(rp)
    if mode == "exact":
        return _jb_exact(well, rp, samples)
    return _jb_paper(well, rp, samples)


def otto_cycle(well: PTWell, l3: float, mode: str = "exact",
               samples: int = 64) -> CycleReport:
    """Otto cycle: isochores at ``well.L`` and ``l3 > well.L`` joined by
    adiabats on levels 2 and 1, starting pure n=1 at ``well.L``.
    """
    _check_mode(mode)
    _check_samples(samples)
    if not (isinstance(l3, (int, float)) and math.isfinite(l3)) or l3 <= well.L:
        raise CycleError(f"l3 must be finite and > L1={well.L}, got {l3!r}")
    l3 = float(l3)
    if mode == "exact":
        return _otto_exact(well, l3, samples)
    return _otto_paper(well, l3, samples)
