"""Observables of one accelerated detector exposed to the Minkowski vacuum.

Every quantity is carried as a logarithm: at typical parameters the mean
photon number is of order exp(-1e5) and has no linear-domain representation.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from rindlercount.logspace import LOG_ZERO, log_add, log_sum, safe_exp
from rindlercount.mode import OverlapSpectrum, check_shared_grid
from rindlercount.params import (
    DEFAULT_REGIME_R1,
    DEFAULT_REGIME_R2,
    PhysicalConfig,
    RegimeFlags,
    asymptotic_regime,
    unruh_temperature,
)
from rindlercount.rindler import ThermalSpectrum

CHARACTERISTIC_NODES = 4096


def asymptotic_log_number(accel_group: float, mode_index: int, length: float = 1.0) -> float:
    """log<d^dagger d> ~ -(2 pi c^2/(a l))(N - pi c^2/(a l)) for large N and small a.

    Args:
        accel_group: aL/c^2
        mode_index: N
        length: Mode width in units of L; pass sigma to absorb the O(a^2)
            shrinking of the packet, which otherwise shifts the exponent by
            far more than an order-one factor once c^2/(aL) is large
    """
    horizon = 1.0 / (accel_group * length)
    return -2 * math.pi * horizon * (mode_index - math.pi * horizon)


@dataclass(frozen=True)
class NumberResult:
    """Mean photon number <d^dagger d> of the detector mode."""

    log_mean: float
    log_mean_asymptotic: float | None = None
    regime: RegimeFlags | None = None

    @property
    def mean(self) -> float:
        """exp(log_mean); zero when it underflows."""
        return safe_exp(self.log_mean)

    @classmethod
    def from_mean(cls, mean: float) -> NumberResult:
        """A result holding a given mean, e.g. to drive photocount tables."""
        if mean < 0:
            raise ValueError("mean must be non-negative")
        return cls(log_mean=math.log(mean) if mean > 0 else LOG_ZERO)


def mean_number(
    overlap: OverlapSpectrum,
    thermal: ThermalSpectrum,
    r1: float = DEFAULT_REGIME_R1,
    r2: float = DEFAULT_REGIME_R2,
) -> NumberResult:
    """<d^dagger d> = sum_k weight <n_k> |f_k|^2.

    Raises:
        GridMismatchError: If the spectra do not share a grid
    """
    check_shared_grid(overlap.wavenumbers, thermal.wavenumbers)
    log_mean, _ = log_sum(overlap.log_weighted_abs2 + thermal.log_occupation)

    mode = overlap.mode
    flags = asymptotic_regime(thermal.accel_group, mode.mode_index, r1, r2)
    asymptotic = None
    if flags.asymptotic_valid:
        asymptotic = asymptotic_log_number(thermal.accel_group, mode.mode_index, mode.sigma)
    return NumberResult(log_mean=log_mean, log_mean_asymptotic=asymptotic, regime=flags)


@dataclass(frozen=True)
class PhotoCountDistribution:
    """Thermal count statistics P(n) = m^n/(1+m)^(n+1) up to n_max."""

    log_probs: np.ndarray
    tail_mass: float
    log_effective_mean: float

    @property
    def probs(self) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(self.log_probs)

    @property
    def effective_mean(self) -> float:
        return safe_exp(self.log_effective_mean)

    @property
    def n_max(self) -> int:
        return len(self.log_probs) - 1

    def ratio(self) -> float:
        """P(n+1)/P(n) = m/(1+m)."""
        return safe_exp(self.log_effective_mean - log_add(0.0, self.log_effective_mean))

    def mean(self) -> float:
        """Mean count including the geometric tail beyond n_max."""
        n = np.arange(self.n_max + 1)
        body = float(np.sum(n * self.probs))
        return body + self.tail_mass * (self.n_max + 1 + self.effective_mean)


def photocount(
    number: NumberResult, efficiency: float = 1.0, n_max: int = 20
) -> PhotoCountDistribution:
    """Count distribution of a detector of efficiency eta.

    Args:
        number: Mean photon number of the mode
        efficiency: eta in (0, 1]; the mean is scaled to m = eta <d^dagger d>
        n_max: Largest count tabulated

    Returns:
        P(0..n_max) with the remaining probability in ``tail_mass``
    """
    if not 0 < efficiency <= 1:
        raise ValueError("efficiency must lie in (0,1]")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")

    log_m = math.log(efficiency) + number.log_mean
    log_one_plus = log_add(0.0, log_m)
    n = np.arange(n_max + 1, dtype=float)
    # 0 * log(0) is taken as 0 so that P(0) = 1 for an empty mode
    with np.errstate(invalid="ignore"):
        counts = np.where(n == 0, 0.0, n * log_m)
    log_probs = counts - (n + 1) * log_one_plus

    log_ratio = log_m - log_one_plus
    tail = safe_exp((n_max + 1) * log_ratio) if log_m > LOG_ZERO else 0.0
    return PhotoCountDistribution(
        log_probs=log_probs, tail_mass=tail, log_effective_mean=log_m
    )


def characteristic_fn(number: NumberResult, lam: float | np.ndarray) -> complex | np.ndarray:
    """Z(lambda) = <exp(i lambda d^dagger d)> = 1/(1 - (e^{i lambda} - 1) m)."""
    m = number.mean
    return 1.0 / (1.0 - (np.exp(1j * np.asarray(lam)) - 1.0) * m)


def invert_characteristic(
    number: NumberResult, n_max: int, nodes: int = CHARACTERISTIC_NODES
) -> np.ndarray:
    """P(0..n_max) by the periodic trapezoid rule on lambda in [0, 2 pi).

    A self-test of ``characteristic_fn`` against ``photocount``; aliasing
    error is of order (m/(1+m))^nodes.
    """
    lam = 2 * math.pi * np.arange(nodes) / nodes
    z = characteristic_fn(number, lam)
    n = np.arange(n_max + 1)
    kernel = np.exp(-1j * np.outer(n, lam))
    return (kernel @ z).real / nodes


@dataclass(frozen=True)
class TemperatureResult:
    """Temperature estimator kT_est = E/log(1 + 1/<d^dagger d>) and its references.

    All temperatures are kT L/(hbar c).
    """

    mean_energy: float
    kT_est: float
    kT_unruh: float
    kT_approx: float


def approximate_temperature(accel_group: float, mode_index: int) -> float:
    """(a/2 pi)/(1 - pi c^2/(aLN)); NaN where the correction factor is not positive."""
    factor = 1.0 - math.pi / (accel_group * mode_index)
    if factor <= 0:
        return math.nan
    return unruh_temperature(accel_group) / factor


def temperature(
    overlap: OverlapSpectrum, number: NumberResult, config: PhysicalConfig
) -> TemperatureResult:
    """Estimate the detector temperature from its mean energy and photon number.

    The mean energy uses the Rindler dispersion omega_k = |k| c. The denominator
    log(1 + 1/m) is evaluated as log(1 + m) - log m.
    """
    log_energy, _ = log_sum(overlap.log_weighted_abs2 + np.log(overlap.wavenumbers))
    energy = safe_exp(log_energy)
    denominator = log_add(0.0, number.log_mean) - number.log_mean
    kT_est = energy / denominator if math.isfinite(denominator) else 0.0
    return TemperatureResult(
        mean_energy=energy,
        kT_est=kT_est,
        kT_unruh=unruh_temperature(config.accel_group),
        kT_approx=approximate_temperature(config.accel_group, config.mode_index),
    )


def glauber_click_density(
    mode_reconstruction: Callable[[np.ndarray], np.ndarray],
    number: NumberResult,
    xi: np.ndarray | float,
) -> np.ndarray:
    """log of the click density |psi_D(xi, 0)|^2 <d^dagger d> along the slice.

    Args:
        mode_reconstruction: Maps xi to psi_D(xi, 0), e.g. ``DetectorMode.value``
            or a bound ``mode_value``
        number: Mean photon number of the mode
        xi: Positions on the tau = 0 slice

    Returns:
        Log-density per position (-inf where the envelope vanishes)
    """
    psi = np.asarray(mode_reconstruction(np.asarray(xi, dtype=float)))
    with np.errstate(divide="ignore"):
        return 2 * np.log(np.abs(psi)) + number.log_mean
