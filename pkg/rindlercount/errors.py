"""Exception types raised by rindlercount.

Every error is a ``ValueError`` so callers can catch the whole family at once.
"""

from __future__ import annotations


class ConfigError(ValueError):
    """A configuration value is missing, unknown or out of range."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(message)
        self.field = field


class WedgeError(ValueError):
    """A Minkowski event lies outside both Rindler wedges."""


class GridMismatchError(ValueError):
    """Two spectra that must share a wavenumber grid do not."""


class SupportError(ValueError):
    """A spatial grid does not cover the support of the sampled solutions."""


class RepresentabilityError(ValueError):
    """The detector mode carries too little norm above the infra-red cutoff."""


class UndersamplingError(ValueError):
    """A time series is sampled too coarsely for the mode's optical period."""


class PerturbativityError(ValueError):
    """A second-order click probability is too large to be trusted."""
