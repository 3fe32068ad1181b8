"""Correlations of two counter-accelerating detectors in opposite wedges.

Detector I sits in the right wedge, detector II is its xi' = -xi mirror image
in the left wedge. The Minkowski vacuum pairs each Rindler mode k of one wedge
with the mode k of the other, so the only non-vanishing cross moment is
<d_I d_II> = sum_k weight sqrt(<n_k>(1 + <n_k>)) f_{k,I} f_{k,II}.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from rindlercount.logspace import LOG_ZERO, log_add, log_sub, log_sum, safe_exp
from rindlercount.mode import OverlapSpectrum, check_shared_grid, mirror_mode
from rindlercount.observables.single import mean_number
from rindlercount.rindler import Region, ThermalSpectrum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CrossMoment:
    """Re<d_I d_II> as log magnitude and sign."""

    log_abs: float
    sign: float

    @property
    def value(self) -> float:
        return self.sign * safe_exp(self.log_abs)


def cross_moment(
    overlap_I: OverlapSpectrum, overlap_II: OverlapSpectrum, thermal: ThermalSpectrum
) -> CrossMoment:
    """<d_I d_II> for modes in opposite wedges.

    Raises:
        ValueError: If the spectra are not a region I / region II pair
        GridMismatchError: If the three spectra do not share one grid
    """
    if overlap_I.region is not Region.I or overlap_II.region is not Region.II:
        raise ValueError("cross_moment needs a region I and a region II spectrum")
    check_shared_grid(overlap_I.wavenumbers, thermal.wavenumbers)
    check_shared_grid(overlap_II.wavenumbers, thermal.wavenumbers)

    pairing = 0.5 * (thermal.log_occupation + thermal.log_occupation_plus_one)
    log_terms = (
        np.log(overlap_I.weights)
        + pairing
        + 0.5 * (overlap_I.log_abs2 + overlap_II.log_abs2)
    )
    log_abs, sign = log_sum(log_terms, overlap_I.signs * overlap_II.signs)
    return CrossMoment(log_abs=log_abs, sign=sign)


@dataclass(frozen=True)
class TwoDetectorMoments:
    """Second moments of a mirrored detector pair, all in the log domain."""

    log_n_I: float
    log_n_II: float
    log_cross: float
    cross_sign: float
    log_estimator_arg: float
    estimator_sign: float

    @property
    def duan_lhs(self) -> float:
        return duan_witness(self).lhs


def two_detector_moments(
    overlap_I: OverlapSpectrum,
    thermal: ThermalSpectrum,
    overlap_II: OverlapSpectrum | None = None,
) -> TwoDetectorMoments:
    """Collect single and cross moments; detector II defaults to the mirror of I."""
    if overlap_II is None:
        overlap_II = mirror_mode(overlap_I)
    log_n_I = mean_number(overlap_I, thermal).log_mean
    log_n_II = mean_number(overlap_II, thermal).log_mean
    cross = cross_moment(overlap_I, overlap_II, thermal)

    signed_cross = cross.log_abs if cross.sign > 0 else LOG_ZERO
    log_arg, arg_sign = log_sub(signed_cross, log_n_I)
    logger.debug("log n=%.6g log cross=%.6g log(cross-n)=%.6g", log_n_I, cross.log_abs, log_arg)
    return TwoDetectorMoments(
        log_n_I=log_n_I,
        log_n_II=log_n_II,
        log_cross=cross.log_abs,
        cross_sign=cross.sign,
        log_estimator_arg=log_arg,
        estimator_sign=arg_sign,
    )


@dataclass(frozen=True)
class NumberProduct:
    """<n_I n_II> = <n_I><n_II> + |<d_I d_II>|^2 as its two log addends."""

    log_uncorrelated: float
    log_correlated: float

    @property
    def log_total(self) -> float:
        return log_add(self.log_uncorrelated, self.log_correlated)


def number_product(moments: TwoDetectorMoments) -> NumberProduct:
    """Average product of the two detectors' photon numbers."""
    return NumberProduct(
        log_uncorrelated=moments.log_n_I + moments.log_n_II,
        log_correlated=2 * moments.log_cross,
    )


@dataclass(frozen=True)
class DuanWitness:
    """Duan criterion (1 + n_I + n_II - 2 Re<d_I d_II>)^2 < 1 for entanglement.

    With d = Re<d_I d_II> - n the left-hand side is (1 - 2d)^2, and
    1 - lhs = 4 d (1 - d) is kept as ``log_deviation`` with its sign since lhs
    itself rounds to exactly 1 whenever d is below machine precision.
    ``log_excess`` is log d = log(cross - mean); NaN when d < 0.
    """

    lhs: float
    log_deviation: float
    deviation_sign: float
    log_excess: float = LOG_ZERO

    @property
    def entangled(self) -> bool:
        return self.deviation_sign > 0


def duan_witness(moments: TwoDetectorMoments) -> DuanWitness:
    """Evaluate the Duan inequality of a symmetric pair.

    Raises:
        ValueError: If the two single-detector means differ
    """
    if not math.isclose(moments.log_n_I, moments.log_n_II, rel_tol=1e-9):
        raise ValueError("duan_witness needs a symmetric detector pair")

    log_d, d_sign = moments.log_estimator_arg, moments.estimator_sign
    d = d_sign * safe_exp(log_d)
    lhs = (1.0 - 2.0 * d) ** 2
    if d_sign == 0 or d == 1.0:
        return DuanWitness(
            lhs=lhs, log_deviation=LOG_ZERO, deviation_sign=0.0, log_excess=log_d
        )

    log_one_minus = math.log1p(-d) if d < 1.0 else math.log(d - 1.0)
    sign = d_sign * (1.0 if d < 1.0 else -1.0)
    return DuanWitness(
        lhs=lhs,
        log_deviation=math.log(4.0) + log_d + log_one_minus,
        deviation_sign=sign,
        log_excess=log_d if d_sign > 0 else math.nan,
    )


def entanglement_estimator(moments: TwoDetectorMoments, offset: float = 0.0) -> float:
    """E = log|<d_I^dagger d_I> - Re<d_I d_II>| + C; -inf for a separable pair."""
    return moments.log_estimator_arg + offset


def asymptotic_estimator(
    accel_group: float, mode_index: int, length: float = 1.0, offset: float = 0.0
) -> float:
    """E ~ -(pi c^2/(a l))(N - pi c^2/(2 a l)) + C for large N and small a."""
    horizon = 1.0 / (accel_group * length)
    return -math.pi * horizon * (mode_index - 0.5 * math.pi * horizon) + offset
