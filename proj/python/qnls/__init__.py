"""Ground states and normalized solutions of the modified quasilinear
Schrodinger equation, computed through the dual transform."""

from ._qnls import (
    ConfigError,
    DomainError,
    DualMap,
    NoBracketError,
    NumericError,
    branch,
    classify_case,
    kappa_bound_crossing,
    kappa_threshold,
    limit_profiles,
    normalized,
    solve,
    verify,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "DualMap",
    "NoBracketError",
    "NumericError",
    "branch",
    "classify_case",
    "kappa_bound_crossing",
    "kappa_threshold",
    "limit_profiles",
    "normalized",
    "solve",
    "verify",
]
