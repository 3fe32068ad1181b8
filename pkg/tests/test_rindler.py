"""Tests for Rindler coordinates, modes and the thermal spectrum."""

from __future__ import annotations

import math

import numpy as np
import pytest

from rindlercount.errors import WedgeError
from rindlercount.rindler import (
    Region,
    RindlerPoint,
    minkowski_to_rindler,
    rindler_mode_value,
    rindler_to_minkowski,
    thermal_spectrum,
)


class TestCoordinates:
    """Test the map between Rindler and Minkowski coordinates."""

    def test_origin_of_region_one(self) -> None:
        """Test that (xi, tau) = (0, 0) sits at x = 1/a."""
        ct, x = rindler_to_minkowski(RindlerPoint(Region.I, 0.0, 0.0), accel=1.0)
        assert ct == pytest.approx(0.0)
        assert x == pytest.approx(1.0)

    def test_region_two_is_mirrored(self) -> None:
        """Test that region II lies at negative x."""
        ct, x = rindler_to_minkowski(RindlerPoint(Region.II, 0.5, 0.2), accel=2.0)
        assert x < -abs(ct)

    @pytest.mark.parametrize("region", [Region.I, Region.II])
    def test_round_trip(self, region: Region) -> None:
        """Test that Rindler -> Minkowski -> Rindler is the identity."""
        for xi in np.linspace(-3.0, 3.0, 7):
            for tau in np.linspace(-3.0, 3.0, 7):
                ct, x = rindler_to_minkowski(RindlerPoint(region, xi, tau), accel=1.0)
                back = minkowski_to_rindler(float(ct), float(x), accel=1.0)
                assert back.region is region
                assert back.xi == pytest.approx(xi, rel=1e-12, abs=1e-11)
                assert back.tau == pytest.approx(tau, rel=1e-12, abs=1e-11)

    @pytest.mark.parametrize("ct,x", [(1.0, 0.5), (-2.0, 1.0), (1.0, 1.0), (0.0, 0.0)])
    def test_outside_wedges(self, ct: float, x: float) -> None:
        """Test that events with |x| <= c|t| are rejected."""
        with pytest.raises(WedgeError, match="outside Rindler wedges"):
            minkowski_to_rindler(ct, x, accel=1.0)

    def test_nonpositive_accel(self) -> None:
        """Test that the acceleration must be positive."""
        with pytest.raises(ValueError):
            rindler_to_minkowski(RindlerPoint(Region.I, 0.0, 0.0), accel=0.0)


class TestRindlerModes:
    """Test the continuum-normalised Rindler modes."""

    def test_value_at_origin(self) -> None:
        """Test w_1 at the origin is 1/sqrt(4 pi)."""
        value = rindler_mode_value(1.0, Region.I, RindlerPoint(Region.I, 0.0, 0.0))
        assert value == pytest.approx(1 / math.sqrt(4 * math.pi))

    def test_left_mover(self) -> None:
        """Test that negative k has the same magnitude."""
        value = rindler_mode_value(-1.0, Region.I, RindlerPoint(Region.I, 0.0, 0.0))
        assert abs(value) == pytest.approx(0.28209479, rel=1e-6)

    def test_half_period(self) -> None:
        """Test that the phase turns by pi at xi = pi for k = 1."""
        value = rindler_mode_value(1.0, Region.I, RindlerPoint(Region.I, math.pi, 0.0))
        assert value.real == pytest.approx(-1 / math.sqrt(4 * math.pi))
        assert value.imag == pytest.approx(0.0, abs=1e-15)

    def test_zero_wavenumber(self) -> None:
        """Test that k = 0 is rejected."""
        with pytest.raises(ValueError):
            rindler_mode_value(0.0, Region.I, RindlerPoint(Region.I, 0.0, 0.0))

    def test_vanishes_on_other_wedge(self) -> None:
        """Test that a region I mode is zero in region II."""
        point = RindlerPoint(Region.II, np.array([0.0, 1.0]), np.array([0.0, 0.5]))
        assert np.all(rindler_mode_value(2.0, Region.I, point) == 0)

    @pytest.mark.parametrize("region", [Region.I, Region.II])
    def test_phase_fronts_move_at_light_speed(self, region: Region) -> None:
        """Test that a right-moving mode depends on xi - tau only."""
        k, delta = 3.0, 0.37
        sign = 1.0 if region is Region.I else -1.0
        here = rindler_mode_value(k, region, RindlerPoint(region, 0.2, 0.1))
        there = rindler_mode_value(
            k, region, RindlerPoint(region, 0.2 + sign * delta, 0.1 + delta)
        )
        assert there == pytest.approx(here, rel=1e-12)


class TestThermalSpectrum:
    """Test the squeezing spectrum of the Minkowski vacuum."""

    def test_squeezing_identity(self) -> None:
        """Test that sinh^2 r_k equals <n_k>."""
        k = np.linspace(0.01, 1.0, 50)
        spectrum = thermal_spectrum(k, accel_group=1.0)
        assert np.sinh(spectrum.squeeze) ** 2 == pytest.approx(spectrum.occupation, rel=1e-10)

    def test_monotone(self) -> None:
        """Test that occupation falls with k and rises with a."""
        k = np.linspace(0.1, 5.0, 30)
        cold = thermal_spectrum(k, accel_group=0.5)
        hot = thermal_spectrum(k, accel_group=1.0)
        assert np.all(np.diff(cold.log_occupation) < 0)
        assert np.all(hot.log_occupation > cold.log_occupation)

    def test_unit_occupation(self) -> None:
        """Test <n_k> = 1 at k = a ln 2/(2 pi)."""
        spectrum = thermal_spectrum(np.array([math.log(2) / (2 * math.pi)]), accel_group=1.0)
        assert spectrum.occupation[0] == pytest.approx(1.0, rel=1e-12)

    def test_boltzmann_tail(self) -> None:
        """Test log<n_k> -> -2 pi k/a with relative error below exp(-2 pi k/a)."""
        k = np.array([20.0, 50.0, 200.0]) / (2 * math.pi)
        spectrum = thermal_spectrum(k, accel_group=1.0)
        x = 2 * math.pi * k
        tolerance = 1.1 * np.exp(-x) + 4 * np.spacing(x)
        assert np.all(np.abs(spectrum.log_occupation + x) <= tolerance)

    def test_finite_far_in_the_tail(self) -> None:
        """Test that log<n_k> stays finite for k/a = 1e4."""
        spectrum = thermal_spectrum(np.array([1e4]), accel_group=1.0)
        assert spectrum.log_occupation[0] == pytest.approx(-2 * math.pi * 1e4)
        assert spectrum.occupation[0] == 0.0

    def test_plus_one(self) -> None:
        """Test log(1 + <n_k>) against direct evaluation."""
        k = np.linspace(0.05, 2.0, 20)
        spectrum = thermal_spectrum(k, accel_group=1.0)
        assert spectrum.log_occupation_plus_one == pytest.approx(
            np.log1p(spectrum.occupation), rel=1e-10
        )

    def test_zero_acceleration_limit(self) -> None:
        """Test that a -> 0 empties every mode."""
        spectrum = thermal_spectrum(np.array([1.0, 10.0]), accel_group=1e-310)
        assert np.all(np.isneginf(spectrum.log_occupation))
        assert np.all(spectrum.squeeze == 0.0)
        assert np.all(spectrum.log_occupation_plus_one == 0.0)

    def test_rejects_nonpositive_wavenumbers(self) -> None:
        """Test that k <= 0 is rejected."""
        with pytest.raises(ValueError):
            thermal_spectrum(np.array([0.0, 1.0]), accel_group=1.0)
