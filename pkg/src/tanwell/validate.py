"""Self-contained validation battery behind ``tanwell validate``.

Each check is a pure function of fixed inputs (seeded RNG where sampling
is involved), so two runs produce byte-identical output.  The battery
cross-checks the analytic spectrum against the grid eigensolver, the two
pressure routes against finite differences and against each other, and
the cycle engine against its closed-form limits and conservation laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import adiabatic_invariant, jb_cycle, otto_cycle
from .oracle import OracleConfig, _numerical_pressures, solve_spectrum
from .well import PTWell, derive_params, energy_level, pressure_exact, pressure_paper

__all__ = ["CheckResult", "run_checks", "pressure_gap_table", "RNG_SEED"]

RNG_SEED = 20260810

# Stiffness grid shared by the spectrum/pressure checks: lam values with
# v0 = lam (lam - 1) * W so the analytic branch is exact.
_LAM_GRID = (1.0, 2.0, 5.0, 20.0)
_LEVELS = range(6)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _well_for_lam(lam: float, L: float = 1.0, mass: float = 1.0,
                  hbar: float = 1.0) -> PTWell:
    w_scale = math.pi**2 * hbar**2 / (2.0 * mass * L**2)
    return PTWell(mass=mass, hbar=hbar, v0=lam * (lam - 1.0) * w_scale, L=L)


def _check_lambda_branch() -> CheckResult:
    worst = 0.0
    for lam in (1.0, 1.5, 2.0, 5.0, 20.0, 100.0):
        for L in (0.5, 1.0, 3.0):
            for mass, hbar in ((1.0, 1.0), (2.5, 0.7)):
                well = _well_for_lam(lam, L=L, mass=mass, hbar=hbar)
                p = derive_params(well)
                if well.v0 == 0.0:
                    defect = abs(p.lam * (p.lam - 1.0) * p.W)
                else:
                    defect = abs(p.lam * (p.lam - 1.0) * p.W - well.v0) / well.v0
                worst = max(worst, defect)
    return CheckResult("lambda_branch", worst <= 1e-12,
                       f"max rel defect {worst:.3e} (tol 1e-12)")


def _check_spectrum_oracle() -> CheckResult:
    cfg = OracleConfig()
    worst = 0.0
    worst_at = ""
    for lam in _LAM_GRID:
        well = _well_for_lam(lam)
        spectrum = solve_spectrum(well, cfg)
        for n in _LEVELS:
            exact = energy_level(well, n)
            err = abs(spectrum.levels[n] - exact) / exact
            if err > worst:
                worst, worst_at = err, f"lam={lam:g} n={n}"
    return CheckResult("spectrum_oracle", worst <= 1e-6,
                       f"max rel err {worst:.3e} at {worst_at} (tol 1e-6)")


def _check_convergence_order() -> CheckResult:
    # Second-order stencil: halving the spacing divides the error by ~4.
    well = _well_for_lam(2.0)
    lo, hi = 10.0, 0.0
    for n_coarse in (512, 1024):
        n_fine = 2 * n_coarse + 1
        coarse = solve_spectrum(well, OracleConfig(grid_points=n_coarse,
                                                   richardson=False))
        fine = solve_spectrum(well, OracleConfig(grid_points=n_fine,
                                                 richardson=False))
        for n in range(4):
            exact = energy_level(well, n)
            ratio = abs(coarse.levels[n] - exact) / abs(fine.levels[n] - exact)
            lo, hi = min(lo, ratio), max(hi, ratio)
    return CheckResult("convergence_order", 3.5 <= lo and hi <= 4.5,
                       f"error ratios in [{lo:.3f}, {hi:.3f}] (want [3.5, 4.5])")


def _check_hf_analytic() -> CheckResult:
    worst = 0.0
    for lam in _LAM_GRID:
        well = _well_for_lam(lam)
        h = 1e-6 * well.L
        for n in _LEVELS:
            fd = -(energy_level(well.with_width(well.L + h), n)
                   - energy_level(well.with_width(well.L - h), n)) / (2.0 * h)
            p = pressure_exact(well, n)
            worst = max(worst, abs(p - fd) / abs(p))
    return CheckResult("hellmann_feynman_analytic", worst <= 1e-6,
                       f"max rel err vs central difference {worst:.3e} (tol 1e-6)")


def _check_hf_oracle() -> CheckResult:
    cfg = OracleConfig()
    worst = 0.0
    for lam in _LAM_GRID:
        well = _well_for_lam(lam)
        numeric = _numerical_pressures(well, cfg)
        for n in _LEVELS:
            p = pressure_exact(well, n)
            worst = max(worst, abs(numeric[n] - p) / abs(p))
    return CheckResult("hellmann_feynman_oracle", worst <= 1e-4,
                       f"max rel err vs grid -dE/dL {worst:.3e} (tol 1e-4)")


def pressure_gap_table() -> list[tuple[float, int, float, float, float]]:
    """Rows (lam, n, p_paper, p_exact, rel_gap) of the two-route discrepancy."""
    rows = []
    for lam in _LAM_GRID:
        well = _well_for_lam(lam)
        for n in (1, 2, 3):
            paper = pressure_paper(well, n)
            exact = pressure_exact(well, n)
            rows.append((lam, n, paper, exact, abs(paper - exact) / abs(exact)))
    return rows


def _check_pressure_gap() -> CheckResult:
    # The quoted closed form must disagree with -dE/dL once lam > 1; the
    # discrepancy is asserted PRESENT, not absent.
    gaps = [row[4] for row in pressure_gap_table()
            if row[0] == 2.0 and row[1] in (1, 2)]
    smallest = min(gaps)
    return CheckResult("paper_pressure_gap", smallest > 1e-3,
                       f"min rel gap at lam=2, n in {{1,2}}: {smallest:.3e} "
                       "(must exceed 1e-3)")


def _check_jb_box() -> CheckResult:
    worst = 0.0
    for rp in (2.0, 4.0, 8.0):
        well = PTWell(mass=1.0, hbar=1.0, v0=0.0, L=1.0)
        exact = jb_cycle(well, rp, mode="exact")
        paper = jb_cycle(well, rp, mode="paper")
        target = 1.0 - rp ** (-2.0 / 3.0)
        worst = max(worst, abs(exact.efficiency - target) / target)
        worst = max(worst, abs(paper.efficiency - target) / target)
        worst = max(worst, abs(paper.extras["eta_corner_form"] - target) / target)
    return CheckResult("jb_box_efficiency", worst <= 1e-9,
                       f"max rel err vs 1 - rp^(-2/3): {worst:.3e} (tol 1e-9)")


def _check_otto_box() -> CheckResult:
    well = PTWell(mass=1.0, hbar=1.0, v0=0.0, L=1.0)
    exact = otto_cycle(well, 2.0, mode="exact")
    paper = otto_cycle(well, 2.0, mode="paper")
    err_exact = abs(exact.efficiency - 0.75) / 0.75
    err_paper = abs(paper.efficiency - 0.5) / 0.5
    err_quad = abs(paper.extras["eta_quadratic"] - 0.75) / 0.75
    ok = err_exact <= 1e-9 and err_paper <= 1e-12 and err_quad <= 1e-12
    return CheckResult(
        "otto_box_efficiency", ok,
        f"exact 1-(L1/L3)^2 err {err_exact:.3e}; quoted 1-1/R_L err "
        f"{err_paper:.3e}; quadratic variant err {err_quad:.3e}")


def _random_configs(count: int = 20):
    rng = np.random.default_rng(RNG_SEED)
    configs = []
    for i in range(count):
        mass = 1.0
        hbar = 1.0
        l1 = float(rng.uniform(0.6, 1.8))
        v0 = float(rng.uniform(0.0, 30.0))
        well = PTWell(mass=mass, hbar=hbar, v0=v0, L=l1)
        if i % 2 == 0:
            configs.append(("jb", well, float(rng.uniform(1.5, 12.0))))
        else:
            configs.append(("otto", well, l1 * float(rng.uniform(1.3, 3.5))))
    return configs


def _check_first_law() -> CheckResult:
    worst_first_law = 0.0
    worst_closure = 0.0
    worst_area = 0.0
    eta_ok = True
    for kind, well, parameter in _random_configs():
        if kind == "jb":
            report = jb_cycle(well, parameter, mode="exact")
        else:
            report = otto_cycle(well, parameter, mode="exact")
        scale = abs(report.net_work)
        worst_first_law = max(
            worst_first_law,
            abs(report.net_work - (report.q_hot - report.q_cold)) / scale)
        worst_area = max(
            worst_area, abs(report.extras["loop_area"] - report.net_work) / scale)
        first = report.strokes[0].samples[0]
        last = report.strokes[-1].samples[-1]
        worst_closure = max(worst_closure,
                            abs(last.L - first.L) / first.L,
                            abs(last.w1 - first.w1))
        eta_ok = eta_ok and 0.0 < report.efficiency < 1.0
    ok = (worst_first_law <= 1e-8 and worst_closure <= 1e-9
          and worst_area <= 1e-6 and eta_ok)
    return CheckResult(
        "first_law_closure", ok,
        f"20 seeded cycles: |R-(Qh-Qc)|/R <= {worst_first_law:.3e} (tol 1e-8), "
        f"closure <= {worst_closure:.3e} (tol 1e-9), "
        f"loop-area defect <= {worst_area:.3e} (tol 1e-6), 0<eta<1 {eta_ok}")


def _check_adiabat_frozen() -> CheckResult:
    worst = 0.0
    for report in (
        jb_cycle(_well_for_lam(2.0), 8.0, mode="paper"),
        otto_cycle(_well_for_lam(2.0), 2.0, mode="paper"),
    ):
        for stroke in (report.strokes[1], report.strokes[3]):
            worst = max(worst, adiabatic_invariant(stroke))
    return CheckResult("adiabat_frozen_l3p", worst <= 1e-9,
                       f"max rel deviation of L^3*P {worst:.3e} (tol 1e-9)")


def _check_adiabat_exact_deviation() -> CheckResult:
    report = otto_cycle(_well_for_lam(2.0), 2.0, mode="exact")
    devs = (adiabatic_invariant(report.strokes[1]),
            adiabatic_invariant(report.strokes[3]))
    smallest = min(devs)
    return CheckResult(
        "adiabat_exact_l3p_deviation", smallest > 1e-6,
        f"L^3*P drifts by {devs[0]:.6e} / {devs[1]:.6e} on the lam=2 adiabats "
        "(reported, expected nonzero)")


def _check_harmonic_gap() -> CheckResult:
    # Deep well, D = 1e4: the lowest oracle gap approaches hbar*omega with a
    # known leading anharmonic offset of 1/sqrt(D) (1.00125e-2 here, i.e. a
    # hair over 1%), so the tight assertion is against the corrected value.
    d_value = 1.0e4
    well = _well_for_lam(0.5 * (1.0 + math.sqrt(1.0 + 4.0 * d_value)))
    h_omega = well.hbar * (math.pi / well.L) * math.sqrt(2.0 * well.v0 / well.mass)
    spectrum = solve_spectrum(well, OracleConfig())
    gap = spectrum.levels[1] - spectrum.levels[0]
    dev_raw = abs(gap - h_omega) / h_omega
    corrected = h_omega * (1.0 + 1.0 / math.sqrt(d_value))
    residual = abs(gap - corrected) / h_omega
    return CheckResult(
        "harmonic_gap", residual <= 2e-4,
        f"lowest gap vs hbar*omega: rel dev {dev_raw:.6e} "
        f"(leading offset 1/sqrt(D) = {1.0 / math.sqrt(d_value):.1e}); "
        f"residual past the offset {residual:.3e} (tol 2e-4)")


def _check_harmonic_levels() -> CheckResult:
    # E_n / (hbar omega (n + 1/2)) stays within 1% for the levels where the
    # anharmonic offset (n^2 + n + 1/2) / ((2n+1) sqrt(D)) permits it.
    worst = 0.0
    for d_value, levels in ((1e4, (0, 1)), (1e8, (0, 1, 2, 3, 4, 5))):
        lam = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * d_value))
        well = _well_for_lam(lam)
        omega = (math.pi / well.L) * math.sqrt(2.0 * well.v0 / well.mass)
        for n in levels:
            ratio = energy_level(well, n) / (well.hbar * omega * (n + 0.5))
            worst = max(worst, abs(ratio - 1.0))
    return CheckResult("harmonic_levels", worst <= 0.01,
                       f"max |E_n/(hbar omega (n+1/2)) - 1| = {worst:.3e} "
                       "(tol 1e-2)")


def _check_box_limit() -> CheckResult:
    worst = 0.0
    for v0 in (1e-6, 1e-9, 1e-12):
        well = PTWell(mass=1.0, hbar=1.0, v0=v0, L=1.0)
        p = derive_params(well)
        for n in _LEVELS:
            box = p.W * (n + 1.0) ** 2
            dev = abs(energy_level(well, n) - box) / box
            # E -> W (n+1)^2 linearly in v0
            worst = max(worst, dev / max(p.D, 1e-300))
    return CheckResult("box_limit_spectrum", worst <= 2.0,
                       f"|E/W - (n+1)^2| <= {worst:.3f} * D as v0 -> 0")


def _check_scaling() -> CheckResult:
    base = PTWell(mass=1.3, hbar=0.9, v0=7.0, L=1.7)
    worst = 0.0
    for c in (0.5, 3.0):
        scaled = PTWell(mass=c * c * base.mass, hbar=c * base.hbar,
                        v0=base.v0, L=base.L)
        for n in _LEVELS:
            a = energy_level(base, n)
            b = energy_level(scaled, n)
            worst = max(worst, abs(a - b) / abs(a))
    return CheckResult("scaling_invariance", worst <= 1e-12,
                       f"max rel change under (m,hbar)->(c^2 m, c hbar): "
                       f"{worst:.3e} (tol 1e-12)")


def _check_monotonicity() -> CheckResult:
    ok = True
    for lam in _LAM_GRID:
        well = _well_for_lam(lam)
        energies = [energy_level(well, n) for n in range(8)]
        ok = ok and all(b > a for a, b in zip(energies, energies[1:]))
        ok = ok and all(pressure_exact(well, n) > 0.0 for n in range(1, 8))
    return CheckResult("monotonicity", ok,
                       "E_n strictly increasing, exact pressure positive for n>=1")


_CHECKS = (
    _check_lambda_branch,
    _check_spectrum_oracle,
    _check_convergence_order,
    _check_hf_analytic,
    _check_hf_oracle,
    _check_pressure_gap,
    _check_jb_box,
    _check_otto_box,
    _check_first_law,
    _check_adiabat_frozen,
    _check_adiabat_exact_deviation,
    _check_harmonic_gap,
    _check_harmonic_levels,
    _check_box_limit,
    _check_scaling,
    _check_monotonicity,
)


def run_checks() -> list[CheckResult]:
    """Run the whole battery in a fixed order."""
    return [check() for check in _CHECKS]
