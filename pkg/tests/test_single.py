"""Tests for single-detector observables."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from rindlercount import spectra
from rindlercount.errors import GridMismatchError
from rindlercount.grid import BOX_CONVERGENCE_LENGTH
from rindlercount.mode import DetectorMode, effective_length
from rindlercount.observables.single import (
    NumberResult,
    approximate_temperature,
    asymptotic_log_number,
    characteristic_fn,
    glauber_click_density,
    invert_characteristic,
    mean_number,
    photocount,
    temperature,
)
from rindlercount.params import PhysicalConfig, asymptotic_regime, unruh_temperature
from rindlercount.rindler import thermal_spectrum


# Every (aL/c^2, N) of a coarse grid that lies in the asymptotic regime
VALID_REGIME = [
    (a, n)
    for a in (0.005, 0.01, 0.02, 0.05, 0.1, 0.2)
    for n in (400, 800, 1200, 1600)
    if asymptotic_regime(a, n).asymptotic_valid
]


def number_at(accel_group: float, mode_index: int, **kwargs) -> NumberResult:
    """Mean photon number of a default-grid configuration."""
    overlap, thermal = spectra(
        PhysicalConfig(accel_group=accel_group, mode_index=mode_index, **kwargs)
    )
    return mean_number(overlap, thermal)


class TestMeanNumber:
    """Test the mean photon number."""

    def test_reference_point(self) -> None:
        """Test N = 800 at c^2/(aL) = 50 against the large-N asymptote."""
        result = number_at(0.02, 800)
        assert result.regime is not None and result.regime.asymptotic_valid
        assert result.log_mean == pytest.approx(-201979.0, rel=1e-4)
        assert abs(result.log_mean - result.log_mean_asymptotic) <= math.log(10)
        assert result.mean == 0.0

    def test_asymptote_uses_effective_length(self) -> None:
        """Test that the asymptote uses sigma, which the quadrature follows."""
        result = number_at(0.02, 800)
        with_sigma = asymptotic_log_number(0.02, 800, effective_length(0.02))
        with_length = asymptotic_log_number(0.02, 800)
        assert result.log_mean_asymptotic == with_sigma
        assert with_sigma == pytest.approx(-201981.93, abs=0.05)
        assert with_length == pytest.approx(-201979.39, abs=0.05)
        assert abs(result.log_mean - with_sigma) < 0.5
        assert abs(result.log_mean - with_length) > 2.0

    def test_asymptote_outside_regime(self) -> None:
        """Test that no asymptote is reported when c^2/(aL) is small."""
        result = number_at(0.5, 800)
        assert result.log_mean_asymptotic is None
        assert not result.regime.asymptotic_valid

    def test_asymptotic_formula(self) -> None:
        """Test the closed-form exponent at L = 1."""
        assert asymptotic_log_number(0.02, 800) == pytest.approx(
            -2 * math.pi * 50 * (800 - 50 * math.pi)
        )

    def test_increases_with_acceleration(self) -> None:
        """Test monotonicity in a at fixed N."""
        logs = [number_at(a, 800).log_mean for a in (0.005, 0.01, 0.02, 0.05)]
        assert all(b > a for a, b in zip(logs, logs[1:]))

    def test_decreases_with_mode_index(self) -> None:
        """Test monotonicity in N at fixed a."""
        logs = [number_at(0.02, n).log_mean for n in (400, 800, 1600)]
        assert all(b < a for a, b in zip(logs, logs[1:]))

    def test_zero_acceleration(self) -> None:
        """Test that an inertial detector counts nothing."""
        result = number_at(1e-310, 800)
        assert result.log_mean == -math.inf
        assert result.mean == 0.0

    @pytest.mark.parametrize("box_length", [BOX_CONVERGENCE_LENGTH, 200.0, 400.0])
    @pytest.mark.parametrize("accel_group,mode_index", [(0.2, 100), (0.02, 800)])
    def test_box_converges_to_continuum(
        self, accel_group: float, mode_index: int, box_length: float
    ) -> None:
        """Test box quantisation against the continuum from the pinned length up."""
        continuum = number_at(accel_group, mode_index)
        box = number_at(accel_group, mode_index, box_length_scaled=box_length)
        assert abs(math.expm1(box.log_mean - continuum.log_mean)) <= 1e-3

    def test_grid_mismatch(self) -> None:
        """Test that spectra on different grids are rejected."""
        overlap, thermal = spectra(PhysicalConfig(accel_group=0.02, mode_index=100))
        other = thermal_spectrum(thermal.wavenumbers * 1.001, 0.02)
        with pytest.raises(GridMismatchError):
            mean_number(overlap, other)


class TestPhotocount:
    """Test the thermal count distribution."""

    def test_empty_mode(self) -> None:
        """Test that m = 0 gives P(0) = 1."""
        dist = photocount(NumberResult.from_mean(0.0))
        assert dist.probs[0] == 1.0
        assert np.all(dist.probs[1:] == 0.0)
        assert dist.tail_mass == 0.0

    def test_unit_mean(self) -> None:
        """Test P(n) = 2^-(n+1) at m = 1."""
        dist = photocount(NumberResult.from_mean(1.0), n_max=5)
        assert dist.probs[:3] == pytest.approx([0.5, 0.25, 0.125], rel=1e-14)
        assert dist.ratio() == pytest.approx(0.5)

    @pytest.mark.parametrize("mean", [0.1, 1.0, 5.0])
    def test_normalised_with_tail(self, mean: float) -> None:
        """Test that probabilities and tail sum to one and reproduce the mean."""
        dist = photocount(NumberResult.from_mean(mean), n_max=20)
        assert np.sum(dist.probs) + dist.tail_mass == pytest.approx(1.0, abs=1e-12)
        assert dist.mean() == pytest.approx(mean, rel=1e-9)

    def test_geometric(self) -> None:
        """Test the constant ratio P(n+1)/P(n) = m/(1+m)."""
        dist = photocount(NumberResult.from_mean(2.0), n_max=20)
        ratios = dist.probs[1:] / dist.probs[:-1]
        assert ratios == pytest.approx(np.full(20, 2.0 / 3.0), rel=1e-12)

    def test_efficiency_scales_mean(self) -> None:
        """Test that efficiency eta acts as a mean of eta m."""
        scaled = photocount(NumberResult.from_mean(0.8), efficiency=0.25)
        direct = photocount(NumberResult.from_mean(0.2))
        assert scaled.probs == pytest.approx(direct.probs, rel=1e-12)
        assert scaled.effective_mean == pytest.approx(0.2)

    def test_tiny_mean_from_log(self) -> None:
        """Test a mean far below the float64 range."""
        dist = photocount(number_at(0.02, 800), n_max=3)
        assert dist.probs[0] == 1.0
        assert dist.log_probs[1] == pytest.approx(dist.log_effective_mean, rel=1e-12)
        assert np.all(np.isfinite(dist.log_probs))

    @pytest.mark.parametrize("efficiency,n_max", [(0.0, 20), (1.5, 20), (1.0, 0)])
    def test_invalid_arguments(self, efficiency: float, n_max: int) -> None:
        """Test rejection of bad efficiency and n_max."""
        with pytest.raises(ValueError):
            photocount(NumberResult.from_mean(1.0), efficiency=efficiency, n_max=n_max)

    def test_negative_mean(self) -> None:
        """Test that a negative mean is rejected."""
        with pytest.raises(ValueError):
            NumberResult.from_mean(-0.1)


class TestCharacteristicFunction:
    """Test the count generating function."""

    def test_values(self) -> None:
        """Test Z(0) = 1 and Z(pi) = 1/3 at m = 1."""
        number = NumberResult.from_mean(1.0)
        assert characteristic_fn(number, 0.0) == pytest.approx(1.0)
        assert characteristic_fn(number, math.pi) == pytest.approx(1 / 3)

    def test_first_moment(self) -> None:
        """Test dZ/d lambda at zero equals i m."""
        number = NumberResult.from_mean(0.7)
        h = 1e-5
        slope = (characteristic_fn(number, h) - characteristic_fn(number, -h)) / (2 * h)
        assert slope == pytest.approx(0.7j, rel=1e-6)

    @pytest.mark.parametrize("mean", [0.1, 1.0, 5.0])
    def test_inversion(self, mean: float) -> None:
        """Test that inverting Z reproduces the count distribution."""
        number = NumberResult.from_mean(mean)
        inverted = invert_characteristic(number, n_max=20)
        assert inverted == pytest.approx(photocount(number, n_max=20).probs, abs=1e-9)


class TestTemperature:
    """Test the temperature estimator."""

    def run(self, accel_group: float, mode_index: int):
        config = PhysicalConfig(accel_group=accel_group, mode_index=mode_index)
        overlap, thermal = spectra(config)
        return temperature(overlap, mean_number(overlap, thermal), config)

    @pytest.mark.parametrize(
        "accel_group,mode_index",
        VALID_REGIME,
        ids=[f"a{a}-N{n}" for a, n in VALID_REGIME],
    )
    def test_approaches_corrected_unruh(self, accel_group: float, mode_index: int) -> None:
        """Test kT_est against (a/2 pi)/(1 - pi/(aN)) across the asymptotic regime."""
        result = self.run(accel_group, mode_index)
        assert math.isfinite(result.kT_approx)
        assert result.kT_est == pytest.approx(result.kT_approx, rel=0.05)

    def test_converges_with_mode_index(self) -> None:
        """Test that the excess over the Unruh value shrinks as N grows."""
        excess = [self.run(0.02, n).kT_est / unruh_temperature(0.02) - 1 for n in (400, 800, 1600)]
        assert excess[0] > excess[1] > excess[2] > 0

    def test_reference_ratio(self) -> None:
        """Test the N = 800 point where the correction factor is about 1.24."""
        result = self.run(0.02, 800)
        assert result.kT_unruh == pytest.approx(0.02 / (2 * math.pi))
        assert result.kT_est / result.kT_unruh == pytest.approx(1.2443, rel=1e-2)
        assert result.mean_energy == pytest.approx(800.0, rel=1e-3)

    def test_approximation_undefined(self) -> None:
        """Test that the approximation is NaN when its factor is not positive."""
        assert math.isnan(approximate_temperature(0.02, 100))

    def test_zero_acceleration(self) -> None:
        """Test that an empty mode has zero estimated temperature."""
        assert self.run(1e-310, 800).kT_est == 0.0


class TestGlauberDensity:
    """Test the click density along the tau = 0 slice."""

    def test_gaussian_profile(self) -> None:
        """Test that the density ratio follows |psi_D|^2."""
        mode = DetectorMode(mode_index=100, sigma=1.0)
        number = NumberResult.from_mean(0.3)
        xi = np.linspace(-2.0, 2.0, 9)
        density = glauber_click_density(mode.value, number, xi)
        centre = glauber_click_density(mode.value, number, 0.0)
        assert density - centre == pytest.approx(-2 * xi**2, abs=1e-12)

    def test_far_field_vanishes(self) -> None:
        """Test that the density is zero 40 widths out."""
        mode = DetectorMode(mode_index=100, sigma=1.0)
        density = glauber_click_density(mode.value, NumberResult.from_mean(0.3), 40.0)
        assert np.exp(density) == 0.0

    def test_total_clicks(self) -> None:
        """Test that the density integrates to m sigma/(2N)."""
        mode = DetectorMode(mode_index=100, sigma=1.0)
        xi = np.linspace(-8.0, 8.0, 4001)
        density = glauber_click_density(mode.value, NumberResult.from_mean(0.3), xi)
        assert trapezoid(np.exp(density), xi) == pytest.approx(0.3 / 200, rel=1e-9)
