"""Second-order response of an Unruh-DeWitt monopole detector.

A multi-level monopole couples with strength mu to the field along the
worldline xi = xi0 for proper times tau0 <= tau <= tau0 + T. Restricting the
field to the detector mode psi_D, the normally ordered click probability is

    P = mu^2 sum_E |m_E|^2 [2 Re(n (J1 + J2) + <d^2> I1 + <d^dagger^2> I2) + V]

where, with s measured from tau0, psi(s) = psi_D(xi0, tau0 + s) and
D = (E - E0)/hbar,

    J1 = int ds1 e^{iDs1} psi(s1)  int_0^s1 ds2 e^{-iDs2} psi*(s2)
    J2 = int ds1 e^{iDs1} psi*(s1) int_0^s1 ds2 e^{-iDs2} psi(s2)
    I1 = int ds1 e^{iDs1} psi(s1)  int_0^s1 ds2 e^{-iDs2} psi(s2)
    I2 = int ds1 e^{iDs1} psi*(s1) int_0^s1 ds2 e^{-iDs2} psi*(s2)

and V is the vacuum-fluctuation integral over all Rindler modes. Keeping only
the rotating term J1 gives P = alpha <d^dagger d> with
alpha = mu^2 sum_E |m_E|^2 2 Re J1. Each inner integral is a running
antiderivative, so every term costs O(samples) per gap.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from rindlercount.errors import PerturbativityError, UndersamplingError
from rindlercount.grid import gauss_legendre_panels
from rindlercount.logspace import LOG_ZERO, safe_exp
from rindlercount.mode import DetectorMode, OverlapSpectrum, mode_value
from rindlercount.observables.single import NumberResult

logger = logging.getLogger(__name__)

DEFAULT_COUPLING = 1e-3
SAMPLES_PER_PERIOD = 16
GAP_CHUNK = 64
PERTURBATIVE_WARNING = 0.01
PERTURBATIVE_CEILING = 0.1
# Vacuum-term upper cutoff in units of N/sigma
VACUUM_CUTOFF_FACTOR = 4.0


@dataclass(frozen=True)
class MonopoleSpec:
    """Energy gaps (E - E0)/hbar and squared monopole matrix elements."""

    levels: np.ndarray
    matrix_elems: np.ndarray
    coupling: float = DEFAULT_COUPLING

    def __post_init__(self) -> None:
        levels = np.atleast_1d(np.asarray(self.levels, dtype=float))
        elems = np.atleast_1d(np.asarray(self.matrix_elems, dtype=float))
        if levels.size == 0:
            raise ValueError("MonopoleSpec needs at least one level")
        if levels.shape != elems.shape:
            raise ValueError("levels and matrix_elems must have the same length")
        if np.any(levels <= 0):
            raise ValueError("Energy gaps must be positive")
        if np.any(np.diff(levels) < 0):
            raise ValueError("Energy gaps must be ascending")
        if np.any(elems < 0):
            raise ValueError("Matrix elements must be non-negative")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "matrix_elems", elems)

    @classmethod
    def resonant(
        cls, mode: DetectorMode, coupling: float = DEFAULT_COUPLING, gap: float | None = None
    ) -> MonopoleSpec:
        """Two-level detector with unit matrix element, resonant with N c/sigma by default."""
        gap = mode.central_wavenumber if gap is None else gap
        return cls(levels=np.array([gap]), matrix_elems=np.array([1.0]), coupling=coupling)

    @classmethod
    def band(
        cls,
        binding_gap: float,
        spacing: float,
        count: int,
        coupling: float = DEFAULT_COUPLING,
        strength: float = 1.0,
    ) -> MonopoleSpec:
        """A binding gap followed by ``count`` equally spaced levels.

        Each level carries |m|^2 = strength * spacing, so the band approximates
        a flat continuum of spectral density ``strength``.
        """
        if count < 1 or spacing <= 0:
            raise ValueError("band needs count >= 1 and a positive spacing")
        levels = binding_gap + spacing * np.arange(count, dtype=float)
        return cls(
            levels=levels,
            matrix_elems=np.full(count, strength * spacing),
            coupling=coupling,
        )

    @property
    def max_gap(self) -> float:
        return float(self.levels[-1])


@dataclass(frozen=True)
class WindowSpec:
    """Measurement window [tau0, tau0 + T] at position xi0.

    ``tau0`` of None centres the window on the packet's passage, tau0 = -T/2.
    """

    T: float
    tau0: float | None = None
    xi0: float = 0.0

    def __post_init__(self) -> None:
        if not self.T > 0:
            raise ValueError("Window duration T must be positive")

    @property
    def start(self) -> float:
        return -0.5 * self.T if self.tau0 is None else self.tau0


@dataclass(frozen=True)
class TimeSeries:
    """psi_D(xi0, tau) on a uniform grid of proper times."""

    taus: np.ndarray
    values: np.ndarray
    xi0: float

    @property
    def step(self) -> float:
        return float(self.taus[1] - self.taus[0])


def mode_time_series(spectrum: OverlapSpectrum, xi0: float, taus: np.ndarray) -> TimeSeries:
    """Sample the projected mode along the worldline xi = xi0.

    Raises:
        UndersamplingError: If the step exceeds 1/16 of the optical period 2 pi sigma/N
    """
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or len(taus) < 2:
        raise ValueError("taus must be a 1-D grid of at least two times")
    steps = np.diff(taus)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0) or steps[0] <= 0:
        raise ValueError("taus must be uniform and ascending")
    period = 2 * math.pi / spectrum.mode.central_wavenumber
    if steps[0] > period / SAMPLES_PER_PERIOD * (1 + 1e-9):
        raise UndersamplingError(
            f"Time step {steps[0]:.3e} exceeds 1/{SAMPLES_PER_PERIOD} "
            f"of the optical period {period:.3e}"
        )
    return TimeSeries(taus=taus, values=mode_value(spectrum, xi0, taus), xi0=xi0)


def window_series(
    spectrum: OverlapSpectrum, window: WindowSpec, max_gap: float = 0.0
) -> TimeSeries:
    """Sample a window finely enough for gaps up to ``max_gap``."""
    fastest = max_gap + spectrum.mode.central_wavenumber
    step = 2 * math.pi / (SAMPLES_PER_PERIOD * fastest)
    count = math.ceil(window.T / step) + 1
    taus = window.start + np.linspace(0.0, window.T, count)
    logger.debug("window series: %d samples over T=%g", count, window.T)
    return mode_time_series(spectrum, window.xi0, taus)


@dataclass(frozen=True)
class ResponseIntegrals:
    """The four ordered double integrals per gap."""

    gaps: np.ndarray
    rotating: np.ndarray
    rotating_partner: np.ndarray
    squeezing: np.ndarray
    squeezing_conj: np.ndarray

    @property
    def rwa(self) -> np.ndarray:
        """J1 + c.c., which equals |int e^{i gap eta} psi d eta|^2."""
        return 2 * self.rotating.real

    @property
    def counter(self) -> np.ndarray:
        """Magnitude of the counter-rotating psi psi integral plus its conjugate."""
        return 2 * np.abs(self.squeezing)


def response_integrals(series: TimeSeries, gaps: np.ndarray | float) -> ResponseIntegrals:
    """Evaluate J1, J2, I1, I2 for every gap by cumulative quadrature."""
    gaps = np.atleast_1d(np.asarray(gaps, dtype=float))
    eta = series.taus - series.taus[0]
    psi = series.values
    psi_conj = np.conj(psi)

    out = np.empty((4, len(gaps)), dtype=complex)
    for start in range(0, len(gaps), GAP_CHUNK):
        chunk = gaps[start : start + GAP_CHUNK, None]
        rising = np.exp(1j * chunk * eta)
        falling = np.conj(rising)
        inner = cumulative_trapezoid(falling * psi, eta, axis=-1, initial=0)
        inner_conj = cumulative_trapezoid(falling * psi_conj, eta, axis=-1, initial=0)
        sl = slice(start, start + GAP_CHUNK)
        out[0, sl] = trapezoid(rising * psi * inner_conj, eta, axis=-1)
        out[1, sl] = trapezoid(rising * psi_conj * inner, eta, axis=-1)
        out[2, sl] = trapezoid(rising * psi * inner, eta, axis=-1)
        out[3, sl] = trapezoid(rising * psi_conj * inner_conj, eta, axis=-1)
    return ResponseIntegrals(gaps, out[0], out[1], out[2], out[3])


def _check_window(series: TimeSeries, window: WindowSpec | None) -> None:
    if window is None:
        return
    span = series.taus[-1] - series.taus[0]
    if not (
        math.isclose(series.taus[0], window.start, abs_tol=1e-12)
        and math.isclose(span, window.T, rel_tol=1e-9)
    ):
        raise ValueError("Time series does not span the measurement window")


def rwa_response(
    series: TimeSeries, gap: float, window: WindowSpec | None = None
) -> float:
    """Rotating-wave double integral J1 + c.c. at one gap.

    The series carries the window; passing ``window`` checks that it matches.
    """
    if gap <= 0:
        raise ValueError("gap must be positive")
    _check_window(series, window)
    return float(response_integrals(series, gap).rwa[0])


def counter_rotating(
    series: TimeSeries, gap: float, window: WindowSpec | None = None
) -> float:
    """Magnitude of the counter-rotating double integral at one gap."""
    if gap <= 0:
        raise ValueError("gap must be positive")
    _check_window(series, window)
    return float(response_integrals(series, gap).counter[0])


def fejer_integrand(gap: float, T: float, k: np.ndarray) -> np.ndarray:
    """Node-wise vacuum integrand 2(1 - cos(uT))/(4 pi k u^2) with u = gap + k.

    The numerator is written as 4 sin^2(uT/2), which is non-negative and keeps
    its relative accuracy for small uT.
    """
    u = gap + np.asarray(k, dtype=float)
    return 4 * np.sin(0.5 * u * T) ** 2 / (u * u) / (4 * math.pi * np.asarray(k))


def vacuum_term(
    gap: float | np.ndarray, window: WindowSpec, k_cutoffs: tuple[float, float]
) -> float | np.ndarray:
    """Vacuum-fluctuation contribution, integrated over k in [k_min, k_max].

    The time integral is done analytically (a Fejer kernel); the k integral by
    Gauss-Legendre panels no wider than min(1, pi/T).

    Raises:
        ValueError: If k_min <= 0 or k_max <= k_min
    """
    k_min, k_max = k_cutoffs
    if k_min <= 0:
        raise ValueError("Vacuum term needs k_min > 0")
    if k_max <= k_min:
        raise ValueError("Vacuum term needs k_max > k_min")
    width = min(1.0, math.pi / window.T)
    count = math.ceil((k_max - k_min) / width)
    k, weights = gauss_legendre_panels(np.linspace(k_min, k_max, count + 1))

    gaps = np.atleast_1d(np.asarray(gap, dtype=float))
    values = np.empty(len(gaps))
    for start in range(0, len(gaps), GAP_CHUNK):
        chunk = gaps[start : start + GAP_CHUNK, None]
        values[start : start + GAP_CHUNK] = fejer_integrand(chunk, window.T, k) @ weights
    return values if np.ndim(gap) else float(values[0])


@dataclass(frozen=True)
class StateMoments:
    """The two mode moments a second-order response depends on."""

    log_n: float
    d2: complex | None = 0.0

    @property
    def mean(self) -> float:
        return safe_exp(self.log_n)

    @classmethod
    def vacuum(cls) -> StateMoments:
        return cls(log_n=LOG_ZERO, d2=0.0)

    @classmethod
    def fock(cls, n: int) -> StateMoments:
        """|n> in the detector mode."""
        if n < 0:
            raise ValueError("Photon number must be non-negative")
        return cls(log_n=math.log(n) if n > 0 else LOG_ZERO, d2=0.0)

    @classmethod
    def coherent(cls, gamma: complex) -> StateMoments:
        """|gamma>: <d^dagger d> = |gamma|^2 and <d^2> = gamma^2."""
        size = abs(gamma)
        return cls(log_n=2 * math.log(size) if size > 0 else LOG_ZERO, d2=complex(gamma) ** 2)

    @classmethod
    def accelerated_vacuum(cls, number: NumberResult) -> StateMoments:
        """Minkowski vacuum seen by one wedge; <d^2> vanishes since modes pair across wedges."""
        return cls(log_n=number.log_mean, d2=0.0)


@dataclass(frozen=True)
class ResponseBreakdown:
    """Level-summed response terms and the resulting click probabilities.

    Terms are weighted by |m_E|^2 and summed over levels; ``alpha`` and the
    probabilities also carry mu^2.
    """

    T: float
    rwa_term: float
    counter_term: float
    vacuum_term: float
    alpha: float
    log_click_prob: float
    click_prob_full: float | None
    counter_bound: float
    vacuum_contribution: float
    perturbativity: float

    @property
    def click_prob(self) -> float:
        """alpha <d^dagger d>."""
        return safe_exp(self.log_click_prob)

    @property
    def factorisation_bound(self) -> float:
        """Largest possible |full - alpha <d^dagger d>| at second order."""
        return self.counter_bound + abs(self.vacuum_contribution)


def detector_alpha(spec: MonopoleSpec, integrals: ResponseIntegrals) -> float:
    """alpha = mu^2 sum_E |m_E|^2 (J1 + c.c.); independent of the field state."""
    return spec.coupling**2 * float(spec.matrix_elems @ integrals.rwa)


def click_probability(
    spec: MonopoleSpec,
    window: WindowSpec,
    spectrum: OverlapSpectrum,
    state: StateMoments,
    k_cutoffs: tuple[float, float] | None = None,
) -> ResponseBreakdown:
    """Second-order click probability of the detector during one window.

    Args:
        spec: Monopole levels, matrix elements and coupling
        window: Measurement window
        spectrum: Detector mode
        state: <d^dagger d> and, optionally, <d^2> of the field state
        k_cutoffs: Vacuum-term cutoffs; defaults to [Lambda, 4 N/sigma]

    Returns:
        Factored probability alpha <d^dagger d>, and the full normally ordered
        probability when ``state.d2`` is given

    Raises:
        PerturbativityError: If a probability exceeds the perturbative ceiling
    """
    mode = spectrum.mode
    if k_cutoffs is None:
        k_cutoffs = (spectrum.cutoff, VACUUM_CUTOFF_FACTOR * mode.central_wavenumber)

    series = window_series(spectrum, window, spec.max_gap)
    integrals = response_integrals(series, spec.levels)
    vacuum = vacuum_term(spec.levels, window, k_cutoffs)
    elems = spec.matrix_elems
    scale = spec.coupling**2

    alpha = detector_alpha(spec, integrals)
    log_click = math.log(alpha) + state.log_n if alpha > 0 else LOG_ZERO
    n = state.mean

    full = None
    if state.d2 is not None:
        d2 = complex(state.d2)
        ordered = (
            n * (integrals.rotating + integrals.rotating_partner)
            + d2 * integrals.squeezing
            + d2.conjugate() * integrals.squeezing_conj
        )
        full = scale * float(elems @ (2 * ordered.real + vacuum))
        d2_size = abs(d2)
    else:
        d2_size = 0.0

    bound = scale * float(
        elems
        @ (
            2 * n * np.abs(integrals.rotating_partner)
            + 2 * d2_size * (np.abs(integrals.squeezing) + np.abs(integrals.squeezing_conj))
        )
    )
    perturbativity = max(alpha * max(1.0, n), abs(full) if full is not None else 0.0)
    if perturbativity > PERTURBATIVE_CEILING:
        raise PerturbativityError(
            f"Click probability {perturbativity:.3e} exceeds {PERTURBATIVE_CEILING}; "
            "reduce the coupling"
        )
    if perturbativity > PERTURBATIVE_WARNING:
        logger.warning("Second-order probability %.3e is not small", perturbativity)

    return ResponseBreakdown(
        T=window.T,
        rwa_term=float(elems @ integrals.rwa),
        counter_term=float(elems @ integrals.counter),
        vacuum_term=float(elems @ vacuum),
        alpha=alpha,
        log_click_prob=log_click,
        click_prob_full=full,
        counter_bound=bound,
        vacuum_contribution=scale * float(elems @ vacuum),
        perturbativity=perturbativity,
    )
