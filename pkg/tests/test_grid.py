"""Tests for wavenumber quadrature grids."""

from __future__ import annotations

import math

import numpy as np
import pytest

from rindlercount.grid import (
    BOX_CONVERGENCE_LENGTH,
    GRADING_RATIO,
    box_convergence_length,
    box_grid,
    continuum_grid,
    gauss_legendre_panels,
    graded_breakpoints,
)


class TestGaussLegendre:
    """Test composite Gauss-Legendre panels."""

    def test_exact_for_high_degree(self) -> None:
        """Test that ten nodes per panel integrate x^19 exactly."""
        nodes, weights = gauss_legendre_panels(np.array([0.0, 1.0, 2.0]))
        assert len(nodes) == 20
        assert np.sum(weights * nodes**19) == pytest.approx(2**20 / 20, rel=1e-12)

    def test_nodes_inside_panels(self) -> None:
        """Test that nodes ascend strictly inside the interval."""
        nodes, weights = gauss_legendre_panels(np.array([1.0, 1.5, 4.0]), order=4)
        assert np.all(np.diff(nodes) > 0)
        assert nodes[0] > 1.0 and nodes[-1] < 4.0
        assert np.sum(weights) == pytest.approx(3.0)


class TestGradedBreakpoints:
    """Test panel edges graded towards the lower end."""

    def test_structure(self) -> None:
        """Test endpoints, first step and growth."""
        edges = graded_breakpoints(1.0, 20.0, width=0.5, first_step=1e-3)
        steps = np.diff(edges)
        assert edges[0] == 1.0
        assert edges[-1] == pytest.approx(20.0)
        assert steps[0] == pytest.approx(1e-3)
        assert steps[1] / steps[0] == pytest.approx(GRADING_RATIO)
        assert np.all(steps > 0)
        assert np.max(steps) <= 0.5 + 1e-12

    def test_coarse_start(self) -> None:
        """Test that a first step wider than the bulk width gives uniform panels."""
        edges = graded_breakpoints(0.0, 2.0, width=0.5, first_step=3.0)
        assert np.diff(edges) == pytest.approx(np.full(4, 0.5))


class TestContinuumGrid:
    """Test the continuum measure."""

    def test_weights_cover_interval(self) -> None:
        """Test that the weights sum to the interval length."""
        grid = continuum_grid(1.0, 50.0, width=0.5, steepness=300.0)
        assert grid.kind == "continuum"
        assert np.all(grid.wavenumbers > 1.0)
        assert np.all(grid.wavenumbers < 50.0)
        assert np.sum(grid.weights) == pytest.approx(49.0, rel=1e-12)

    def test_resolves_steep_decay(self) -> None:
        """Test a Boltzmann factor falling off from the lower end."""
        beta = 300.0
        grid = continuum_grid(1.0, 50.0, width=0.5, steepness=beta)
        integral = np.sum(grid.weights * np.exp(-beta * (grid.wavenumbers - 1.0)))
        assert integral == pytest.approx(1 / beta, rel=1e-10)


class TestBoxGrid:
    """Test box-quantised wavenumbers."""

    def test_nodes_and_weights(self) -> None:
        """Test that nodes are 2 pi n/h above the cutoff with weight 2 pi/h."""
        grid = box_grid(1.0, 10.0, box_length=20.0)
        spacing = 2 * math.pi / 20.0
        n = grid.wavenumbers / spacing
        assert grid.kind == "box"
        assert n == pytest.approx(np.round(n))
        assert grid.wavenumbers[0] > 1.0
        assert grid.wavenumbers[0] - spacing <= 1.0
        assert grid.wavenumbers[-1] >= 10.0
        assert np.all(grid.weights == spacing)
        assert len(grid) == len(grid.wavenumbers)

    def test_convergence_length(self) -> None:
        """Test the aliasing bound and the pinned box length derived from it."""
        assert box_convergence_length(1.0) == pytest.approx(math.sqrt(2 * math.log(2000)))
        assert box_convergence_length(0.5, 1e-6) == pytest.approx(
            0.5 * math.sqrt(2 * math.log(2e6))
        )
        assert 2 * box_convergence_length(1.0) <= BOX_CONVERGENCE_LENGTH
        assert BOX_CONVERGENCE_LENGTH - 2 * box_convergence_length(1.0) < 1.0

    @pytest.mark.parametrize("sigma,tol", [(0.0, 1e-3), (1.0, 0.0), (1.0, 1.0)])
    def test_convergence_length_invalid(self, sigma: float, tol: float) -> None:
        """Test that the bound needs a positive width and 0 < tol < 1."""
        with pytest.raises(ValueError):
            box_convergence_length(sigma, tol)

    @pytest.mark.parametrize("centre", [20.0, 20.3, 21.7])
    def test_gaussian_sum_converges(self, centre: float) -> None:
        """Test box sums of a unit-width Gaussian at and above the bound."""
        exact = math.sqrt(2 * math.pi)
        for box_length, rel in [
            (box_convergence_length(1.0), 1.001e-3),
            (BOX_CONVERGENCE_LENGTH, 1e-10),
        ]:
            grid = box_grid(1.0, 40.0, box_length=box_length)
            total = np.sum(grid.weights * np.exp(-0.5 * (grid.wavenumbers - centre) ** 2))
            assert total == pytest.approx(exact, rel=rel)
