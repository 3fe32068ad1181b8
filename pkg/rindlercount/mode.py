"""The detector's Gaussian wave-packet mode and its Rindler overlap spectrum.

The overlap f_k = (psi_D, w_{k,I}) of the Gaussian mode with a continuum
Rindler mode follows from the Fourier transform of the envelope folded
through the Klein-Gordon product:

    f_k = (|k| + N/sigma) * A * sigma * exp(-sigma^2 (k - N/sigma)^2 / 4) / (2 sqrt|k|)

with A = (N sqrt(2 pi))^(-1/2). ``kg_inner`` evaluates the same product by
direct quadrature on a spatial grid and serves as an independent oracle.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import trapezoid

from rindlercount.errors import GridMismatchError, RepresentabilityError, SupportError
from rindlercount.grid import SpectralGrid, box_convergence_length, box_grid, continuum_grid
from rindlercount.logspace import log_sum
from rindlercount.params import PhysicalConfig, validate
from rindlercount.rindler import Region

logger = logging.getLogger(__name__)

# Spectrum kept on [cutoff, N/sigma + SPECTRAL_HALF_WIDTH/sigma]
SPECTRAL_HALF_WIDTH = 12.0
MIN_HALF_WIDTH = 10.0
# Bulk panel width in units of 1/sigma
PANEL_WIDTH = 0.5
RETAINED_NORM_FLOOR = 1e-6
# Nodes whose amplitude is below exp(-40) of the peak are dropped when
# reconstructing the mode in space or time
NEGLIGIBLE_LOG_ABS2 = 80.0

FieldSlice = tuple[np.ndarray, np.ndarray]


def effective_length(accel_group: float) -> float:
    """sigma/L = (2c^2/(aL)) asinh(aL/(2c^2)), which tends to 1 as a -> 0."""
    x = 0.5 * accel_group
    if x < 1e-4:
        return 1.0 - x * x / 6.0
    return math.asinh(x) / x


@dataclass(frozen=True)
class DetectorMode:
    """Gaussian envelope psi_D(xi, 0) = A exp(-xi^2/sigma^2 + i N xi/sigma)."""

    mode_index: int
    sigma: float
    region: Region = Region.I
    center_xi: float = 0.0

    def __post_init__(self) -> None:
        if self.center_xi != 0.0:
            raise ValueError("Only modes centred at xi = 0 are supported")

    @property
    def central_wavenumber(self) -> float:
        return self.mode_index / self.sigma

    @property
    def norm_const(self) -> float:
        return 1.0 / math.sqrt(self.mode_index * math.sqrt(2 * math.pi))

    def value(self, xi: np.ndarray | float) -> np.ndarray:
        """psi_D(xi, 0)."""
        xi = np.asarray(xi, dtype=float)
        return self.norm_const * np.exp(
            -((xi / self.sigma) ** 2) + 1j * self.central_wavenumber * xi
        )

    def time_derivative(self, xi: np.ndarray | float) -> np.ndarray:
        """d psi_D/d tau at tau = 0, i.e. -i (N c/sigma) psi_D."""
        return -1j * self.central_wavenumber * self.value(xi)

    def log_overlap_abs2(self, k: np.ndarray) -> np.ndarray:
        """log|(psi_D, w_k)|^2 before the infra-red projection."""
        k = np.asarray(k, dtype=float)
        k_abs = np.abs(k)
        omega = self.central_wavenumber
        # the Gaussian sees signed k, so k < 0 lies 2N/sigma away from the peak
        with np.errstate(divide="ignore"):
            return (
                math.log((self.norm_const * self.sigma) ** 2 / 4)
                + 2 * np.log(k_abs + omega)
                - np.log(k_abs)
                - 0.5 * (self.sigma * (k - omega)) ** 2
            )

    def overlap(self, k: np.ndarray) -> np.ndarray:
        """(psi_D, w_k) before projection; real and positive for a centred mode."""
        with np.errstate(under="ignore"):
            return np.exp(0.5 * self.log_overlap_abs2(k)).astype(complex)


def build_mode(config: PhysicalConfig) -> DetectorMode:
    """Detector mode selected by a cavity of proper length L in mode N."""
    validate(config)
    return DetectorMode(
        mode_index=int(config.mode_index), sigma=effective_length(config.accel_group)
    )


@dataclass(frozen=True)
class OverlapSpectrum:
    """Normalised overlaps f_k = (psi_D, w_k) of the projected mode."""

    wavenumbers: np.ndarray
    coefficients: np.ndarray
    weights: np.ndarray
    log_abs2: np.ndarray
    region: Region
    mode: DetectorMode
    retained_norm: float
    cutoff: float
    kind: str = "continuum"

    @property
    def log_weighted_abs2(self) -> np.ndarray:
        """log(weight * |f_k|^2) per node."""
        return np.log(self.weights) + self.log_abs2

    @property
    def signs(self) -> np.ndarray:
        """Sign of Re f_k, with underflowed coefficients counted positive."""
        return np.where(self.coefficients.real < 0, -1.0, 1.0)

    def norm(self) -> float:
        """Sum of weight * |f_k|^2."""
        with np.errstate(under="ignore"):
            return float(np.sum(np.exp(self.log_weighted_abs2)))

    def significant(self) -> OverlapSpectrum:
        """The nodes that matter when the mode is reconstructed."""
        cut = np.max(self.log_weighted_abs2) - NEGLIGIBLE_LOG_ABS2
        keep = self.log_weighted_abs2 >= cut
        return replace(
            self,
            wavenumbers=self.wavenumbers[keep],
            coefficients=self.coefficients[keep],
            weights=self.weights[keep],
            log_abs2=self.log_abs2[keep],
        )


def check_shared_grid(first: np.ndarray, second: np.ndarray) -> None:
    """Raise GridMismatchError unless two wavenumber grids are identical."""
    if len(first) != len(second) or not np.array_equal(first, second):
        raise GridMismatchError("Spectra are not on a shared wavenumber grid")


def spectral_grid(mode: DetectorMode, config: PhysicalConfig) -> SpectralGrid:
    """Default grid for a mode: box nodes if a box length is set, else panels.

    The continuum grid is graded at the cutoff so that thermal integrands,
    which may peak at the cutoff and fall off with slope
    sigma^2 (N/sigma - cutoff) + 2 pi c^2/(aL), are resolved.
    """
    omega = mode.central_wavenumber
    lower = config.cutoff_scaled
    upper = omega + SPECTRAL_HALF_WIDTH / mode.sigma
    if config.box_length_scaled is not None:
        if config.box_length_scaled < box_convergence_length(mode.sigma):
            logger.warning(
                "Box length %g is below %.3g; box sums will not match the continuum",
                config.box_length_scaled,
                box_convergence_length(mode.sigma),
            )
        return box_grid(lower, upper, config.box_length_scaled)
    with np.errstate(over="ignore", divide="ignore"):
        thermal_slope = np.float64(2 * math.pi) / np.float64(config.accel_group)
    steepness = max(mode.sigma**2 * max(omega - lower, 0.0) + thermal_slope, mode.sigma)
    return continuum_grid(lower, upper, PANEL_WIDTH / mode.sigma, steepness)


def overlap_spectrum(
    mode: DetectorMode, config: PhysicalConfig, grid: SpectralGrid | None = None
) -> OverlapSpectrum:
    """Project the mode onto Rindler modes above the cutoff and renormalise.

    Args:
        mode: Detector mode
        config: Physical configuration (supplies the cutoff)
        grid: Wavenumber grid; defaults to ``spectral_grid(mode, config)``

    Returns:
        Spectrum with sum(weight * |f_k|^2) = 1

    Raises:
        ValueError: If the grid reaches below the cutoff or stops short
        RepresentabilityError: If the retained norm is below the floor
    """
    if grid is None:
        grid = spectral_grid(mode, config)
    k = grid.wavenumbers
    omega = mode.central_wavenumber
    if np.any(k <= config.cutoff_scaled):
        raise ValueError("Grid nodes must lie above the infra-red cutoff")
    spacing = float(np.max(np.diff(k))) if len(k) > 1 else 0.0
    if k[-1] + spacing < omega + MIN_HALF_WIDTH / mode.sigma:
        raise ValueError("Grid must extend to N/sigma + 10/sigma")

    raw = mode.log_overlap_abs2(k)
    log_norm, _ = log_sum(np.log(grid.weights) + raw)
    retained = math.exp(log_norm) if log_norm > -700 else 0.0
    if retained < RETAINED_NORM_FLOOR:
        raise RepresentabilityError(
            f"Mode retains norm {retained:.3e} above the cutoff "
            f"(floor {RETAINED_NORM_FLOOR:g})"
        )

    log_abs2 = raw - log_norm
    with np.errstate(under="ignore"):
        coefficients = np.exp(0.5 * log_abs2).astype(complex)
    return OverlapSpectrum(
        wavenumbers=k,
        coefficients=coefficients,
        weights=grid.weights,
        log_abs2=log_abs2,
        region=mode.region,
        mode=mode,
        retained_norm=retained,
        cutoff=config.cutoff_scaled,
        kind=grid.kind,
    )


def _mode_sum(
    spectrum: OverlapSpectrum, position: np.ndarray, derivative: bool
) -> np.ndarray:
    # position is the null coordinate u = +-xi - tau on which every w_k depends
    part = spectrum.significant()
    k = part.wavenumbers
    # (w_k, psi) = conj((psi, w_k))
    amplitude = part.weights * np.conj(part.coefficients) / np.sqrt(4 * math.pi * k)
    if derivative:
        amplitude = amplitude * (-1j * k)

    out = np.empty(len(position), dtype=complex)
    for start in range(0, len(position), 512):
        phase = np.outer(position[start : start + 512], k)
        out[start : start + 512] = np.exp(1j * phase) @ amplitude
    return out


def _null_coordinate(
    spectrum: OverlapSpectrum, xi: np.ndarray | float, tau: np.ndarray | float
) -> np.ndarray:
    sign = 1.0 if spectrum.region is Region.I else -1.0
    return np.atleast_1d(sign * np.asarray(xi, dtype=float) - np.asarray(tau, dtype=float))


def mode_value(
    spectrum: OverlapSpectrum, xi: np.ndarray | float, tau: np.ndarray | float = 0.0
) -> np.ndarray:
    """Projected mode sum_k weight (w_k, psi_D) w_k(xi, tau); xi and tau broadcast."""
    values = _mode_sum(spectrum, _null_coordinate(spectrum, xi, tau), derivative=False)
    return values if np.ndim(xi) or np.ndim(tau) else values[0]


def mode_slice(spectrum: OverlapSpectrum, xi: np.ndarray, tau: float = 0.0) -> FieldSlice:
    """Projected mode and its tau-derivative on a spatial grid."""
    position = _null_coordinate(spectrum, xi, tau)
    return (
        _mode_sum(spectrum, position, derivative=False),
        _mode_sum(spectrum, position, derivative=True),
    )


def mirror_mode(spectrum: OverlapSpectrum) -> OverlapSpectrum:
    """The xi' = -xi image of a mode in the opposite wedge.

    Overlaps with that wedge's Rindler modes are identical node by node.
    """
    region = spectrum.region.mirrored
    return replace(spectrum, region=region, mode=replace(spectrum.mode, region=region))


def kg_inner(
    f: FieldSlice,
    g: FieldSlice,
    grid: np.ndarray,
    periodic: bool = False,
    edge_tol: float = 1e-14,
) -> complex:
    """Klein-Gordon product i * integral(f* dg/dtau - df*/dtau g) on a tau = 0 slice.

    Args:
        f: (values, tau-derivatives) of the first solution
        g: (values, tau-derivatives) of the second solution
        grid: Uniform spatial grid; for ``periodic`` the right end is excluded
        periodic: Integrate over one period of a periodic box
        edge_tol: Largest allowed integrand magnitude at the grid edges,
            relative to its peak (ignored for periodic boxes)

    Raises:
        SupportError: If the integrand has not decayed at the edges
    """
    f_val, f_dot = (np.asarray(a, dtype=complex) for a in f)
    g_val, g_dot = (np.asarray(a, dtype=complex) for a in g)
    grid = np.asarray(grid, dtype=float)

    integrand = np.conj(f_val) * g_dot - np.conj(f_dot) * g_val
    if periodic:
        step = grid[1] - grid[0]
        return complex(1j * step * np.sum(integrand))

    size = np.abs(f_val) * np.abs(g_dot) + np.abs(f_dot) * np.abs(g_val)
    peak = np.max(size)
    if peak > 0 and max(size[0], size[-1]) > edge_tol * peak:
        raise SupportError("Spatial grid does not cover the support of the solutions")
    return complex(1j * trapezoid(integrand, grid))


def overlap_oracle(
    mode: DetectorMode, k: float, half_width: float = 8.0, nodes: int = 2**14
) -> complex:
    """(psi_D, w_k) by direct Klein-Gordon quadrature on xi in [-8 sigma, 8 sigma]."""
    xi = np.linspace(-half_width * mode.sigma, half_width * mode.sigma, nodes)
    w = np.exp(1j * k * xi) / math.sqrt(4 * math.pi * abs(k))
    return kg_inner(
        (mode.value(xi), mode.time_derivative(xi)), (w, -1j * abs(k) * w), xi
    )
