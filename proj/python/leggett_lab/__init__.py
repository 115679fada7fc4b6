"""Leggett and CHSH inequality tests for entangled coherent states."""

from ._core import (
    CertificationError,
    ConditioningError,
    ConvergenceError,
    CorrelationModel,
    TruncationError,
    analytic_fmin,
    evaluate,
    kappa_K,
    leggett_value,
    numeric_fmin,
    optimize_chsh,
    oracle_correlation,
    pseudospin_bloch,
    run_cli,
    threshold,
    to_cartesian,
)

__all__ = [
    "CertificationError",
    "ConditioningError",
    "ConvergenceError",
    "CorrelationModel",
    "TruncationError",
    "analytic_fmin",
    "evaluate",
    "kappa_K",
    "leggett_value",
    "numeric_fmin",
    "optimize_chsh",
    "oracle_correlation",
    "pseudospin_bloch",
    "run_cli",
    "threshold",
    "to_cartesian",
]
