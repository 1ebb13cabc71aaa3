"""Analytic spectrum and wall pressure of the trigonometric tan^2 well.

The confining potential is ``v0 * tan(pi*x/L)**2`` on x in (-L/2, L/2),
with impenetrable walls where the tangent diverges.  ``v0 = 0`` collapses
to a particle in a box of width L; large ``v0`` approaches a harmonic
oscillator of frequency ``(pi/L)*sqrt(2*v0/mass)``.

Two pressure routes are exposed on purpose:

* :func:`pressure_exact` differentiates the closed-form spectrum, so it
  satisfies ``P_n = -dE_n/dL`` to machine precision.
* :func:`pressure_paper` evaluates a commonly quoted closed form whose
  ``(1 - mu)`` factor does NOT reproduce ``-dE_n/dL`` once the stiffness
  depends on L.  The gap between the two is a measured, reported quantity
  throughout this package, not a bug.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

__all__ = [
    "PTWell",
    "SpectrumParams",
    "derive_params",
    "energy_level",
    "pressure_paper",
    "pressure_exact",
]


def _require_finite(name: str, value: float) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class PTWell:
    """Physical configuration: mass, action scale, well depth and width."""

    mass: float
    hbar: float
    v0: float
    L: float

    def __post_init__(self):
        for name in ("mass", "hbar", "v0", "L"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.mass <= 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.hbar <= 0.0:
            raise ValueError(f"hbar must be > 0, got {self.hbar}")
        if self.v0 < 0.0:
            raise ValueError(f"v0 must be >= 0, got {self.v0}")
        if self.L <= 0.0:
            raise ValueError(f"L must be > 0, got {self.L}")

    def with_width(self, L: float) -> "PTWell":
        """Same physics at a different wall separation."""
        return replace(self, L=L)


@dataclass(frozen=True)
class SpectrumParams:
    """Dimensionless bundle derived from a :class:`PTWell`.

    W       energy scale pi^2 hbar^2 / (2 m L^2)
    D       depth parameter 2 m v0 L^2 / (pi^2 hbar^2) = v0 / W
    lam     stiffness, the positive root of lam*(lam - 1) = D  (lam >= 1)
    mu      1 - (lam - 1)/(2 lam - 1)
    dlam_dL derivative of lam at fixed v0, 2 lam (lam - 1) / (L (2 lam - 1))
    """

    W: float
    D: float
    lam: float
    mu: float
    dlam_dL: float


def _lam_minus_one(D: float) -> float:
    # Stable form of the positive root minus one; avoids cancellation at
    # small D where lam - 1 ~ D.
    return 2.0 * D / (1.0 + math.sqrt(1.0 + 4.0 * D))


def derive_params(well: PTWell) -> SpectrumParams:
    """Evaluate W, D, lam, mu and dlam/dL for a well."""
    W = math.pi**2 * well.hbar**2 / (2.0 * well.mass * well.L**2)
    D = well.v0 / W
    excess = _lam_minus_one(D)  # lam - 1, exact 0 when v0 == 0
    lam = 1.0 + excess
    denom = 2.0 * lam - 1.0  # >= 1, never vanishes for lam >= 1
    mu = 1.0 - excess / denom
    dlam_dL = 2.0 * lam * excess / (well.L * denom)
    return SpectrumParams(W=W, D=D, lam=lam, mu=mu, dlam_dL=dlam_dL)


def _check_level(n: int, minimum: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError(f"level index must be an integer, got {n!r}")
    if n < minimum:
        raise ValueError(f"level index must be >= {minimum}, got {n}")
    return n


def energy_level(well: PTWell, n: int) -> float:
    """Bound-state energy W(L) * [n^2 + lam(L)*(2n + 1)], n >= 0.

    n = 0 is the ground state.  In the box limit (v0 = 0, lam = 1) this is
    W*(n + 1)^2, i.e. the usual box spectrum with the index shifted by one.
    """
    _check_level(n, 0)
    p = derive_params(well)
    return p.W * (n * n + p.lam * (2 * n + 1))


def pressure_paper(well: PTWell, n: int) -> float:
    """Wall pressure in the quoted closed form, n >= 1.

    (2 W / L) * [n^2 + (2n + 1) * lam * (1 - mu)].  Taken verbatim; it does
    not equal -dE_n/dL for v0 > 0 (see :func:`pressure_exact`).
    """
    _check_level(n, 1)
    p = derive_params(well)
    one_minus_mu = _lam_minus_one(p.D) / (2.0 * p.lam - 1.0)
    return (2.0 * p.W / well.L) * (n * n + (2 * n + 1) * p.lam * one_minus_mu)


def pressure_exact(well: PTWell, n: int) -> float:
    """Hellmann-Feynman wall pressure -dE_n/dL, n >= 0.

    Differentiates :func:`energy_level` with the full L-dependence of the
    stiffness: (2 W / L) * [n^2 + (2n + 1) lam] - W (2n + 1) dlam/dL.
    """
    _check_level(n, 0)
    p = derive_params(well)
    k = 2 * n + 1
    return (2.0 * p.W / well.L) * (n * n + k * p.lam) - p.W * k * p.dlam_dL
