"""Lotka-Volterra competition with a spreading front."""

from ._core import (
    GridSpec,
    LvfbError,
    ModelParams,
    Regime,
    Verdict,
    __version__,
    bessel_first_zero,
    builtin,
    builtin_grid,
    classify,
    classify_regime,
    critical_radius,
    find_k0,
    logistic_ode,
    run_cli,
    semiwave_slope,
    simulate,
    vanishing_bound,
)

__all__ = [
    "GridSpec",
    "LvfbError",
    "ModelParams",
    "Regime",
    "Verdict",
    "__version__",
    "bessel_first_zero",
    "builtin",
    "builtin_grid",
    "classify",
    "classify_regime",
    "critical_radius",
    "find_k0",
    "logistic_ode",
    "run_cli",
    "semiwave_slope",
    "simulate",
    "vanishing_bound",
]
