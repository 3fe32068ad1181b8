"""Physical parameters, unit conventions and regime checks.

Units: natural units with c = hbar = k_B = 1 and the cavity proper length L
as the unit of length. Every exported quantity is dimensionless; restore
units with

- wavenumbers k: multiply by 1/L
- times tau: multiply by L/c
- energies and frequencies: multiply by hbar*c/L (resp. c/L)
- temperatures kT: multiply by hbar*c/L
- accelerations a: multiply by c**2/L (``accel_group`` is aL/c**2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from rindlercount.errors import ConfigError

DEFAULT_REGIME_R1 = 2.0
DEFAULT_REGIME_R2 = 5.0


@dataclass(frozen=True)
class PhysicalConfig:
    """The dimensionless parameter groups of one accelerated detector."""

    accel_group: float
    mode_index: int
    cutoff_scaled: float = 1.0
    efficiency: float = 1.0
    box_length_scaled: float | None = None

    @property
    def is_box(self) -> bool:
        """True when the field is quantised in a periodic box of length h."""
        return self.box_length_scaled is not None


@dataclass(frozen=True)
class RegimeFlags:
    """Whether the large-N, small-acceleration asymptotics apply."""

    asymptotic_valid: bool
    cycles: float
    horizon_distance: float


def validate(config: PhysicalConfig) -> PhysicalConfig:
    """Check every invariant of a configuration.

    Args:
        config: The configuration to check

    Returns:
        The same configuration, unchanged

    Raises:
        ConfigError: Naming the first offending field
    """
    if not config.accel_group > 0:
        raise ConfigError("accel_group", "accel_group must be positive")
    if isinstance(config.mode_index, bool) or int(config.mode_index) != config.mode_index:
        raise ConfigError("mode_index", "mode_index must be an integer")
    if config.mode_index < 1:
        raise ConfigError("mode_index", "mode_index must be at least 1")
    if not config.cutoff_scaled > 0:
        raise ConfigError("cutoff_scaled", "cutoff_scaled must be positive")
    if not 0 < config.efficiency <= 1:
        raise ConfigError("efficiency", "efficiency must lie in (0,1]")
    if config.box_length_scaled is not None and not config.box_length_scaled >= 1:
        raise ConfigError("box_length_scaled", "box_length_scaled must be at least 1")
    return config


def asymptotic_regime(
    accel_group: float,
    mode_index: int,
    r1: float = DEFAULT_REGIME_R1,
    r2: float = DEFAULT_REGIME_R2,
) -> RegimeFlags:
    """Evaluate N/(2 pi) >= r1 * c^2/(aL) and c^2/(aL) >= r2."""
    if r1 < 1 or r2 < 1:
        raise ValueError("Regime ratios must be at least 1")
    horizon = 1.0 / accel_group
    cycles = mode_index / (2 * math.pi)
    valid = cycles >= r1 * horizon and horizon >= r2
    return RegimeFlags(asymptotic_valid=valid, cycles=cycles, horizon_distance=horizon)


def regime(
    config: PhysicalConfig,
    r1: float = DEFAULT_REGIME_R1,
    r2: float = DEFAULT_REGIME_R2,
) -> RegimeFlags:
    """Regime flags of a configuration (see ``asymptotic_regime``)."""
    return asymptotic_regime(config.accel_group, config.mode_index, r1, r2)


def unruh_temperature(accel_group: float) -> float:
    """kT = hbar a / (2 pi c), exported as kT L / (hbar c)."""
    return accel_group / (2 * math.pi)
