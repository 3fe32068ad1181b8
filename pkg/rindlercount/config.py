"""Run configuration files.

A configuration is a TOML file of flat ``key = value`` pairs naming fields
of ``PhysicalConfig`` and ``RunOptions``, plus an optional ``[sweep]`` table:

    accel_group = 0.02
    mode_index = 800

    [sweep]
    axis = "accel_group"
    min = 0.002
    max = 0.05
    count = 20
    spacing = "log"        # or "linear"; alternatively values = [...]

Unknown keys are rejected so that a misspelt parameter never falls back to
its default silently.
"""

from __future__ import annotations

import logging
import math
import tomllib
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Literal

import numpy as np

from rindlercount.errors import ConfigError
from rindlercount.params import (
    DEFAULT_REGIME_R1,
    DEFAULT_REGIME_R2,
    PhysicalConfig,
    validate,
)

logger = logging.getLogger(__name__)

SweepAxis = Literal["accel_group", "mode_index", "efficiency", "window_T", "gap"]
SWEEP_AXES: tuple[str, ...] = ("accel_group", "mode_index", "efficiency", "window_T", "gap")


@dataclass(frozen=True)
class RunOptions:
    """Per-run knobs that are not physical parameters of the detector."""

    n_max: int = 20
    estimator_offset: float = 0.0
    regime_r1: float = DEFAULT_REGIME_R1
    regime_r2: float = DEFAULT_REGIME_R2
    window_T: float = 2.0
    window_tau0: float | None = None
    xi0: float = 0.0
    gap: float | None = None
    coupling: float = 1e-3
    mean_override: float | None = None
    fig3_modes: tuple[int, ...] = (800, 1200, 1600)
    fig3_points: int = 40
    fig3_accel_min: float = 1 / 500
    fig3_accel_max: float = 1 / 20


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter and its values, in sweep order."""

    axis: SweepAxis
    values: tuple[float, ...]

    @classmethod
    def from_range(
        cls,
        axis: SweepAxis,
        start: float,
        stop: float,
        count: int,
        spacing: Literal["linear", "log"] = "linear",
    ) -> SweepSpec:
        """Evenly spaced values from ``start`` to ``stop`` inclusive."""
        if count < 1:
            raise ConfigError("sweep.count", "sweep.count must be at least 1")
        if spacing == "log":
            if start <= 0 or stop <= 0:
                raise ConfigError("sweep.min", "log sweeps need positive min and max")
            values = np.geomspace(start, stop, count)
        elif spacing == "linear":
            values = np.linspace(start, stop, count)
        else:
            raise ConfigError("sweep.spacing", f"Unknown sweep spacing: {spacing}")
        if axis == "mode_index":
            values = np.round(values)
        return cls(axis=axis, values=tuple(float(v) for v in values))


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI run depends on."""

    physical: PhysicalConfig
    options: RunOptions = field(default_factory=RunOptions)
    sweep: SweepSpec | None = None

    def points(self) -> list[RunConfig]:
        """One configuration per sweep value, or just this one without a sweep."""
        if self.sweep is None:
            return [self]
        return [self.with_value(self.sweep.axis, value) for value in self.sweep.values]

    def with_value(self, axis: str, value: float) -> RunConfig:
        """This configuration with one parameter replaced."""
        if axis == "mode_index":
            physical = replace(self.physical, mode_index=int(value))
            return replace(self, physical=physical, sweep=None)
        if axis in _PHYSICAL_FIELDS:
            return replace(self, physical=replace(self.physical, **{axis: value}), sweep=None)
        return replace(self, options=replace(self.options, **{axis: value}), sweep=None)

    def stamp(self) -> str:
        """The resolved configuration as sorted ``key=value`` pairs."""
        resolved: dict[str, Any] = {**asdict(self.physical), **asdict(self.options)}
        if self.sweep is not None:
            resolved["sweep.axis"] = self.sweep.axis
            resolved["sweep.values"] = list(self.sweep.values)
        return " ".join(f"{key}={_format(resolved[key])}" for key in sorted(resolved))


def _format(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_format(v) for v in value) + "]"
    return str(value)


_PHYSICAL_FIELDS = {f.name for f in fields(PhysicalConfig)}
_OPTION_FIELDS = {f.name for f in fields(RunOptions)}
_INT_FIELDS = {"mode_index", "n_max", "fig3_points"}

DEFAULT_CONFIG = RunConfig(physical=PhysicalConfig(accel_group=0.02, mode_index=800))


def _coerce(key: str, value: Any) -> Any:
    if key in _INT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(key, f"{key} must be an integer")
        return value
    if key == "fig3_modes":
        if not isinstance(value, list) or not value:
            raise ConfigError(key, "fig3_modes must be a non-empty list of integers")
        if any(isinstance(v, bool) or not isinstance(v, int) or v < 1 for v in value):
            raise ConfigError(key, "fig3_modes must be a non-empty list of integers")
        return tuple(value)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(key, f"{key} must be a number")
    return float(value)


def _parse_sweep(table: dict[str, Any]) -> SweepSpec:
    known = {"axis", "values", "min", "max", "count", "spacing"}
    for key in table:
        if key not in known:
            raise ConfigError(f"sweep.{key}", f"Unknown config key: sweep.{key}")
    axis = table.get("axis")
    if axis not in SWEEP_AXES:
        raise ConfigError(
            "sweep.axis", f"sweep.axis must be one of: {', '.join(SWEEP_AXES)}"
        )

    has_range = any(key in table for key in ("min", "max", "count", "spacing"))
    if "values" in table:
        if has_range:
            raise ConfigError("sweep.values", "Give either sweep.values or a range, not both")
        values = table["values"]
        if not isinstance(values, list) or not values:
            raise ConfigError("sweep.values", "sweep.values must be a non-empty list")
        return SweepSpec(axis=axis, values=tuple(float(_coerce("sweep", v)) for v in values))

    for key in ("min", "max", "count"):
        if key not in table:
            raise ConfigError(f"sweep.{key}", f"Missing config key: sweep.{key}")
    count = table["count"]
    if isinstance(count, bool) or not isinstance(count, int):
        raise ConfigError("sweep.count", "sweep.count must be an integer")
    return SweepSpec.from_range(
        axis,
        float(_coerce("sweep.min", table["min"])),
        float(_coerce("sweep.max", table["max"])),
        count,
        table.get("spacing", "linear"),
    )


def validate_run(config: RunConfig) -> RunConfig:
    """Check physical parameters, run options and every sweep point.

    Raises:
        ConfigError: Naming the first offending field
    """
    validate(config.physical)
    opts = config.options
    if opts.n_max < 1:
        raise ConfigError("n_max", "n_max must be at least 1")
    if opts.regime_r1 < 1 or opts.regime_r2 < 1:
        raise ConfigError("regime_r1", "regime ratios must be at least 1")
    if not opts.window_T > 0:
        raise ConfigError("window_T", "window_T must be positive")
    if opts.gap is not None and not opts.gap > 0:
        raise ConfigError("gap", "gap must be positive")
    if not opts.coupling > 0:
        raise ConfigError("coupling", "coupling must be positive")
    if opts.mean_override is not None and not opts.mean_override >= 0:
        raise ConfigError("mean_override", "mean_override must be non-negative")
    if opts.fig3_points < 2:
        raise ConfigError("fig3_points", "fig3_points must be at least 2")
    if not 0 < opts.fig3_accel_min < opts.fig3_accel_max:
        raise ConfigError(
            "fig3_accel_min", "fig3 accelerations need 0 < fig3_accel_min < fig3_accel_max"
        )
    if config.sweep is not None:
        for value in config.sweep.values:
            if config.sweep.axis == "mode_index" and value != math.floor(value):
                raise ConfigError("sweep.values", "mode_index sweep values must be integers")
            validate_run(config.with_value(config.sweep.axis, value))
    return config


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a configuration file.

    Args:
        path: TOML file

    Returns:
        The resolved configuration, defaults filled in

    Raises:
        ConfigError: On parse errors (with line number), unknown keys or
            out-of-range values
    """
    path = Path(path)
    try:
        with path.open("rb") as handle:
            data = tomllib.load(handle)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError("file", f"Cannot parse {path}: {e}") from e

    sweep_table = data.pop("sweep", None)
    if sweep_table is not None and not isinstance(sweep_table, dict):
        raise ConfigError("sweep", "sweep must be a table")
    physical: dict[str, Any] = {}
    options: dict[str, Any] = {}
    for key, value in data.items():
        if key in _PHYSICAL_FIELDS:
            physical[key] = _coerce(key, value)
        elif key in _OPTION_FIELDS:
            options[key] = _coerce(key, value)
        else:
            raise ConfigError(key, f"Unknown config key: {key}")

    base = DEFAULT_CONFIG.physical
    config = RunConfig(
        physical=replace(base, **physical),
        options=RunOptions(**options),
        sweep=_parse_sweep(sweep_table) if sweep_table is not None else None,
    )
    logger.debug("loaded %s: %s", path, config.stamp())
    return validate_run(config)
