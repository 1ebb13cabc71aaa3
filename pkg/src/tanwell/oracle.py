"""Independent grid eigensolver for the tan^2 well.

This module never looks at the closed-form spectrum: it discretizes the
stationary Schrodinger equation with a second-order three-point stencil
and extracts the lowest eigenvalues of the symmetric tridiagonal matrix
by bisection on the Sturm-sequence count.  It exists to validate the
analytic formulas in :mod:`tanwell.well` from first principles.

Determinism: the bisection has a fixed stopping rule (relative width
1e-12 with a hard iteration cap), so repeated runs are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .well import PTWell

__all__ = [
    "OracleConfig",
    "OracleSpectrum",
    "OracleError",
    "solve_spectrum",
    "numerical_pressure",
]

_EIG_RTOL = 1e-12
_MAX_BISECT = 256


class OracleError(RuntimeError):
    """Eigenvalue extraction failed to converge."""


@dataclass(frozen=True)
class OracleConfig:
    """Grid and extrapolation settings for :func:`solve_spectrum`."""

    grid_points: int = 4096
    wall_inset: float = 1e-6
    richardson: bool = True
    n_levels: int = 6

    def __post_init__(self):
        if self.grid_points < 64:
            raise ValueError(f"grid_points must be >= 64, got {self.grid_points}")
        if not 0.0 < self.wall_inset <= 1e-3:
            raise ValueError(f"wall_inset must be in (0, 1e-3], got {self.wall_inset}")
        if self.n_levels < 1 or self.n_levels > self.grid_points // 8:
            raise ValueError(
                f"n_levels must be in [1, grid_points/8], got {self.n_levels}"
            )


@dataclass(frozen=True)
class OracleSpectrum:
    """Ascending eigenvalues with per-level error estimates."""

    levels: tuple[float, ...]
    grid_points_used: int
    est_error: tuple[float, ...]


@njit(cache=True)
def _sturm_count(diag, off2, sigma, pivmin):
    # Number of eigenvalues strictly below sigma, via the sign count of
    # the Sturm sequence q_i = (d_i - sigma) - e_{i-1}^2 / q_{i-1}.
    count = 0
    q = diag[0] - sigma
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, diag.shape[0]):
        q = diag[i] - sigma - off2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def _bisect_level(diag, off2, k, lo, hi, pivmin, rtol, max_iter):
    # k-th smallest eigenvalue (0-based): the infimum of sigma with
    # count(sigma) >= k + 1.
    for _ in range(max_iter):
        if hi - lo <= rtol * max(abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if _sturm_count(diag, off2, mid, pivmin) >= k + 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi), hi - lo


def _grid_levels(well: PTWell, n_interior: int, wall_inset: float,
                 n_levels: int) -> np.ndarray:
    """Lowest eigenvalues on a fixed grid with ``n_interior`` nodes."""
    # The tangent diverges at +-L/2; the grid stops wall_inset*L/2 short of
    # each wall.  With v0 == 0 the potential term vanishes identically and
    # the exact Dirichlet walls at +-L/2 are used (no truncation bias).
    inset = wall_inset if well.v0 > 0.0 else 0.0
    half = 0.5 * well.L * (1.0 - inset)
    h = 2.0 * half / (n_interior + 1)
    x = -half + h * np.arange(1, n_interior + 1)
    v = well.v0 * np.tan(np.pi * x / well.L) ** 2
    kinetic = well.hbar**2 / (well.mass * h * h)
    diag = kinetic + v
    off2 = np.full(n_interior - 1, (0.5 * kinetic) ** 2)
    pivmin = np.finfo(np.float64).tiny * max(1.0, float(off2[0]))

    hi0 = float(diag.max()) + kinetic  # Gershgorin upper bound
    levels = np.empty(n_levels)
    lo = 0.0  # potential >= 0 and Dirichlet ends: spectrum is positive
    for k in range(n_levels):
        value, width = _bisect_level(diag, off2, k, lo, hi0, pivmin,
                                     _EIG_RTOL, _MAX_BISECT)
        if width > 8.0 * _EIG_RTOL * max(abs(value), np.finfo(np.float64).tiny):
            raise OracleError(f"bisection for level {k} did not converge")
        levels[k] = value
        lo = value  # eigenvalues are ordered; reuse as the next lower bound
    return levels


def solve_spectrum(well: PTWell, cfg: OracleConfig | None = None) -> OracleSpectrum:
    """Solve the discretized well for the lowest ``cfg.n_levels`` eigenvalues.

    The stencil is second order, so with ``cfg.richardson`` the solve is
    repeated with the spacing exactly halved (2N + 1 interior nodes) and
    combined as (4*E_fine - E_coarse)/3, with |E_fine - E_coarse|/3 kept
    as the per-level error estimate.
    """
    if cfg is None:
        cfg = OracleConfig()
    coarse = _grid_levels(well, cfg.grid_points, cfg.wall_inset, cfg.n_levels)
    if not cfg.richardson:
        est = np.abs(coarse) * 4.0 * _EIG_RTOL
        return OracleSpectrum(tuple(coarse), cfg.grid_points, tuple(est))
    fine_n = 2 * cfg.grid_points + 1  # halves the spacing exactly
    fine = _grid_levels(well, fine_n, cfg.wall_inset, cfg.n_levels)
    extrapolated = (4.0 * fine - coarse) / 3.0
    est = np.abs(fine - coarse) / 3.0
    return OracleSpectrum(tuple(extrapolated), fine_n, tuple(est))


def numerical_pressure(well: PTWell, n: int, cfg: OracleConfig | None = None) -> float:
    """-dE_n/dL by central differencing of :func:`solve_spectrum`."""
    if cfg is None:
        cfg = OracleConfig()
    if not 0 <= n < cfg.n_levels:
        raise ValueError(f"level {n} outside the solved range [0, {cfg.n_levels})")
    return float(_numerical_pressures(well, cfg)[n])


def _numerical_pressures(well: PTWell, cfg: OracleConfig) -> np.ndarray:
    """All solved levels' -dE/dL from one pair of displaced solves."""
    h = 1e-5 * well.L
    upper = np.asarray(solve_spectrum(well.with_width(well.L + h), cfg).levels)
    lower = np.asarray(solve_spectrum(well.with_width(well.L - h), cfg).levels)
    return -(upper - lower) / (2.0 * h)
