"""Log-domain arithmetic for quantities far below the float64 range."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import logsumexp

LOG_ZERO = float("-inf")


def log_sum(log_terms: np.ndarray, signs: np.ndarray | None = None) -> tuple[float, float]:
    """Log of a (signed) sum given the logs of its terms.

    Terms are reduced in array order, so results are reproducible bit for bit.

    Args:
        log_terms: log|t_i|
        signs: Optional sign of each t_i (default all positive)

    Returns:
        (log|sum|, sign of sum); an empty or all-zero sum gives (-inf, 0.0)
    """
    log_terms = np.asarray(log_terms, dtype=float)
    if log_terms.size == 0 or not np.any(np.isfinite(log_terms)):
        return LOG_ZERO, 0.0
    with np.errstate(divide="ignore"):
        value, sign = logsumexp(log_terms, b=signs, return_sign=True)
    return float(value), float(sign)


def log_add(log_a: float, log_b: float) -> float:
    """log(exp(log_a) + exp(log_b))."""
    return float(np.logaddexp(log_a, log_b))


def log_sub(log_a: float, log_b: float) -> tuple[float, float]:
    """log|exp(log_a) - exp(log_b)| together with the sign of the difference."""
    if log_a == log_b:
        return LOG_ZERO, 0.0
    if log_a > log_b:
        return log_a + _log1mexp(log_b - log_a), 1.0
    return log_b + _log1mexp(log_a - log_b), -1.0


def _log1mexp(x: float) -> float:
    # log(1 - e^x) for x < 0
    if x > -math.log(2):
        return math.log(-math.expm1(x))
    return math.log1p(-math.exp(x))


def safe_exp(log_value: float) -> float:
    """exp that maps -inf to 0 and underflows quietly."""
    with np.errstate(under="ignore"):
        return float(np.exp(log_value))
