"""Rindlercount: photo-counting of a scalar field by uniformly accelerated detectors."""

from __future__ import annotations

__version__ = "0.1.0"

from rindlercount.mode import (  # noqa: E402
    DetectorMode,
    OverlapSpectrum,
    build_mode,
    kg_inner,
    mirror_mode,
    mode_value,
    overlap_spectrum,
)
from rindlercount.params import PhysicalConfig, RegimeFlags, regime, validate  # noqa: E402
from rindlercount.rindler import (  # noqa: E402
    Region,
    RindlerPoint,
    ThermalSpectrum,
    thermal_spectrum,
)

__all__ = [
    "DetectorMode",
    "OverlapSpectrum",
    "PhysicalConfig",
    "Region",
    "RegimeFlags",
    "RindlerPoint",
    "ThermalSpectrum",
    "build_mode",
    "kg_inner",
    "mirror_mode",
    "mode_value",
    "overlap_spectrum",
    "regime",
    "spectra",
    "thermal_spectrum",
    "validate",
]


def spectra(config: PhysicalConfig) -> tuple[OverlapSpectrum, ThermalSpectrum]:
    """Build the detector mode's overlap spectrum and the matching thermal spectrum.

    Args:
        config: Physical configuration

    Returns:
        (overlap, thermal) on one shared wavenumber grid

    Example:
        >>> from rindlercount import PhysicalConfig, spectra
        >>> overlap, thermal = spectra(PhysicalConfig(accel_group=0.02, mode_index=800))
    """
    overlap = overlap_spectrum(build_mode(config), config)
    return overlap, thermal_spectrum(overlap.wavenumbers, config.accel_group)
