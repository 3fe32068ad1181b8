"""Rindler coordinates, Rindler modes and the Minkowski-vacuum squeezing spectrum."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from rindlercount.errors import WedgeError


class Region(str, Enum):
    """The right (I) and left (II) Rindler wedges."""

    I = "I"  # noqa: E741
    II = "II"

    @property
    def mirrored(self) -> Region:
        """The opposite wedge."""
        return Region.II if self is Region.I else Region.I


@dataclass(frozen=True)
class RindlerPoint:
    """An event in conformal Rindler coordinates (xi, tau), or (xi', tau') in II."""

    region: Region
    xi: float | np.ndarray
    tau: float | np.ndarray


@dataclass(frozen=True)
class ThermalSpectrum:
    """Per-wavenumber squeezing r_k and occupation <n_k> of the Minkowski vacuum.

    ``log_occupation`` is authoritative; <n_k> itself underflows for k c^2/a
    beyond a few hundred.
    """

    wavenumbers: np.ndarray
    accel_group: float
    squeeze: np.ndarray
    log_occupation: np.ndarray

    @property
    def occupation(self) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(self.log_occupation)

    @property
    def log_occupation_plus_one(self) -> np.ndarray:
        """log(1 + <n_k>) = log<n_k> + 2 pi k c^2/a."""
        beta = _thermal_rate(self.accel_group)
        with np.errstate(over="ignore", invalid="ignore"):
            scaled = beta * self.wavenumbers
            return np.where(np.isinf(scaled), 0.0, -np.log(-np.expm1(-scaled)))


def _thermal_rate(accel_group: float) -> float:
    # 2 pi c^2/(aL); overflows to inf as a -> 0
    with np.errstate(over="ignore", divide="ignore"):
        return float(np.float64(2 * math.pi) / np.float64(accel_group))


def rindler_to_minkowski(
    point: RindlerPoint, accel: float
) -> tuple[float | np.ndarray, float | np.ndarray]:
    """Map a Rindler event to Minkowski (ct, x).

    Args:
        point: Event in region I or II conformal coordinates
        accel: Proper acceleration a > 0

    Returns:
        (ct, x), with x > c|t| in region I and x < -c|t| in region II
    """
    if accel <= 0:
        raise ValueError("accel must be positive")
    rho = np.exp(accel * np.asarray(point.xi)) / accel
    ct = rho * np.sinh(accel * np.asarray(point.tau))
    x = rho * np.cosh(accel * np.asarray(point.tau))
    if point.region is Region.II:
        x = -x
    return ct, x


def minkowski_to_rindler(ct: float, x: float, accel: float) -> RindlerPoint:
    """Inverse of ``rindler_to_minkowski``.

    Raises:
        WedgeError: If |x| <= c|t| (the event is outside both wedges)
    """
    if accel <= 0:
        raise ValueError("accel must be positive")
    if abs(x) <= abs(ct):
        raise WedgeError(f"Event (ct={ct}, x={x}) lies outside Rindler wedges")

    region = Region.I if x > 0 else Region.II
    s = abs(x)
    # x - ct and x + ct are both positive inside the wedge
    lower, upper = s - ct, s + ct
    xi = 0.5 * math.log(accel * accel * lower * upper) / accel
    tau = 0.5 * math.log(upper / lower) / accel
    return RindlerPoint(region=region, xi=xi, tau=tau)


def rindler_mode_value(k: float, region: Region, point: RindlerPoint) -> complex | np.ndarray:
    """Continuum-normalised Rindler mode w_{k,region} at a point.

    Region I: exp(i(k xi - |k| tau))/sqrt(4 pi |k|); region II uses -k xi'.
    The mode vanishes identically on the other wedge.

    Raises:
        ValueError: For k = 0
    """
    if k == 0:
        raise ValueError("Rindler mode is undefined for k = 0")
    if point.region is not region:
        return np.zeros_like(np.asarray(point.xi, dtype=complex))
    sign = 1.0 if region is Region.I else -1.0
    phase = sign * k * np.asarray(point.xi) - abs(k) * np.asarray(point.tau)
    return np.exp(1j * phase) / math.sqrt(4 * math.pi * abs(k))


def thermal_spectrum(wavenumbers: np.ndarray, accel_group: float) -> ThermalSpectrum:
    """Squeezing spectrum r_k = arctanh(exp(-pi k c^2/a)) on a grid.

    <n_k> = 1/(exp(2 pi k c^2/a) - 1) is kept as its logarithm,
    log<n_k> = -2 pi k c^2/a - log(1 - exp(-2 pi k c^2/a)).
    """
    k = np.asarray(wavenumbers, dtype=float)
    if np.any(k <= 0):
        raise ValueError("Thermal spectrum needs strictly positive wavenumbers")
    if accel_group <= 0:
        raise ValueError("accel_group must be positive")

    beta = _thermal_rate(accel_group)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        scaled = beta * k
        squeeze = np.arctanh(np.exp(-0.5 * scaled))
        log_occupation = np.where(
            np.isinf(scaled), -np.inf, -scaled - np.log(-np.expm1(-scaled))
        )
    return ThermalSpectrum(
        wavenumbers=k,
        accel_group=accel_group,
        squeeze=squeeze,
        log_occupation=log_occupation,
    )
