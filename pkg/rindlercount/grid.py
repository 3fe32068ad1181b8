"""Wavenumber quadrature grids.

Two measures share one evaluator: composite Gauss-Legendre panels for the
continuum, and uniform nodes of weight 2 pi/h for a periodic box of length h.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

logger = logging.getLogger(__name__)

GridKind = Literal["continuum", "box"]

PANEL_ORDER = 10
GRADING_RATIO = 1.25
# Box length h/L from which box sums match the continuum to 1e-3 for sigma <= L:
# twice box_convergence_length(1.0, 1e-3) = 2 * 3.90, rounded up
BOX_CONVERGENCE_LENGTH = 8.0


@dataclass(frozen=True)
class SpectralGrid:
    """Quadrature nodes and weights on the positive wavenumber axis."""

    wavenumbers: np.ndarray
    weights: np.ndarray
    kind: GridKind

    def __len__(self) -> int:
        return len(self.wavenumbers)


def gauss_legendre_panels(
    breakpoints: np.ndarray, order: int = PANEL_ORDER
) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule over consecutive breakpoints.

    Args:
        breakpoints: Strictly increasing panel edges
        order: Nodes per panel

    Returns:
        (nodes, weights), nodes ascending
    """
    xg, wg = np.polynomial.legendre.leggauss(order)
    edges = np.asarray(breakpoints, dtype=float)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return (mid + half * xg).ravel(), (half * wg).ravel()


def graded_breakpoints(
    lower: float, upper: float, width: float, first_step: float
) -> np.ndarray:
    """Panel edges that grow geometrically from ``first_step`` up to ``width``.

    The fine start resolves integrands that decay steeply away from ``lower``;
    the rest of the interval is covered by panels no wider than ``width``.
    """
    first_step = min(max(first_step, width * 1e-9), width)
    edges = [lower]
    step = first_step
    while step < width and edges[-1] + step < upper:
        edges.append(edges[-1] + step)
        step *= GRADING_RATIO
    count = max(1, math.ceil((upper - edges[-1]) / width))
    uniform = np.linspace(edges[-1], upper, count + 1)
    return np.concatenate([np.asarray(edges[:-1]), uniform])


def continuum_grid(
    lower: float, upper: float, width: float, steepness: float, order: int = PANEL_ORDER
) -> SpectralGrid:
    """Gauss-Legendre grid on (lower, upper] graded near ``lower``.

    Args:
        lower: Infra-red cutoff
        upper: Largest wavenumber kept
        width: Panel width in the bulk (a fraction of the spectral width)
        steepness: Largest logarithmic slope an integrand may have at ``lower``
        order: Nodes per panel
    """
    edges = graded_breakpoints(lower, upper, width, 0.25 / steepness)
    nodes, weights = gauss_legendre_panels(edges, order)
    logger.debug("continuum grid: %d panels, %d nodes", len(edges) - 1, len(nodes))
    return SpectralGrid(wavenumbers=nodes, weights=weights, kind="continuum")


def box_grid(lower: float, upper: float, box_length: float) -> SpectralGrid:
    """Box modes k = 2 pi n/h with lower < k, up to the first node >= upper."""
    spacing = 2 * math.pi / box_length
    first = math.floor(lower / spacing) + 1
    last = max(first, math.ceil(upper / spacing))
    nodes = spacing * np.arange(first, last + 1, dtype=float)
    logger.debug("box grid: h=%g, %d nodes", box_length, len(nodes))
    return SpectralGrid(
        wavenumbers=nodes, weights=np.full(len(nodes), spacing), kind="box"
    )


def box_convergence_length(sigma: float, tol: float = 1e-3) -> float:
    """Shortest box whose sums reproduce the continuum to relative error ``tol``.

    Sampling e^{-sigma^2 (k - k0)^2/2} at spacing 2 pi/h aliases, by Poisson
    summation, with relative error 2 exp(-h^2/(2 sigma^2)). A thermal factor
    e^{-beta k} only shifts the centre and leaves the bound unchanged.

    Args:
        sigma: Spatial width of the mode
        tol: Relative error allowed in box sums

    Returns:
        sigma sqrt(2 log(2/tol))
    """
    if sigma <= 0 or not 0 < tol < 1:
        raise ValueError("box_convergence_length needs sigma > 0 and 0 < tol < 1")
    return sigma * math.sqrt(2 * math.log(2 / tol))
