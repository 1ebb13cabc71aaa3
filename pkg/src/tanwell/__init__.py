"""Quantum piston cycles of a single particle in a trigonometric tan^2 well.

Library layout:

* :mod:`tanwell.well` -- analytic spectrum, both wall-pressure routes
* :mod:`tanwell.oracle` -- independent finite-difference eigensolver
* :mod:`tanwell.engine` -- Joule-Brayton / Otto cycles, exact and paper modes
* :mod:`tanwell.report`, :mod:`tanwell.svg`, :mod:`tanwell.figures` -- output
* :mod:`tanwell.validate` -- self-validation battery
* :mod:`tanwell.cli` -- the ``tanwell`` command
"""

from .engine import (ADIABATIC, ISOBARIC, ISOCHORIC, JOULE_BRAYTON, OTTO,
                     CycleError, CycleReport, InfeasibleCycleError, Stroke,
                     StrokeSample, TwoLevelState, adiabatic_invariant,
                     jb_cycle, mixture_energy, mixture_pressure, otto_cycle)
from .oracle import (OracleConfig, OracleError, OracleSpectrum,
                     numerical_pressure, solve_spectrum)
from .svg import render_pl_svg
from .well import (PTWell, SpectrumParams, derive_params, energy_level,
                   pressure_exact, pressure_paper)

__version__ = "0.1.0"

__all__ = [
    "ADIABATIC", "ISOBARIC", "ISOCHORIC", "JOULE_BRAYTON", "OTTO",
    "CycleError", "CycleReport", "InfeasibleCycleError", "OracleConfig",
    "OracleError", "OracleSpectrum", "PTWell", "SpectrumParams", "Stroke",
    "StrokeSample", "TwoLevelState", "adiabatic_invariant", "derive_params",
    "energy_level", "jb_cycle", "mixture_energy", "mixture_pressure",
    "numerical_pressure", "otto_cycle", "pressure_exact", "pressure_paper",
    "render_pl_svg", "solve_spectrum", "__version__",
]
