"""Subcommand evaluation over parameter sweeps and CSV output."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from multiprocessing import Pool
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from rindlercount import __version__, spectra
from rindlercount.config import RunConfig
from rindlercount.mode import OverlapSpectrum
from rindlercount.observables.pair import (
    duan_witness,
    entanglement_estimator,
    number_product,
    two_detector_moments,
)
from rindlercount.observables.response import (
    MonopoleSpec,
    StateMoments,
    WindowSpec,
    click_probability,
)
from rindlercount.observables.single import (
    NumberResult,
    mean_number,
    photocount,
    temperature,
)
from rindlercount.params import asymptotic_regime

logger = logging.getLogger(__name__)

Row = dict[str, Any]

COLUMNS: dict[str, list[str]] = {
    "mode": ["accel_group", "N", "k", "weight", "re_f", "im_f", "log_abs2"],
    "number": [
        "accel_group",
        "N",
        "cutoff_scaled",
        "log_mean",
        "mean",
        "log_mean_asymptotic",
        "regime_flag",
    ],
    "photocount": [
        "accel_group",
        "N",
        "efficiency",
        "effective_mean",
        "n",
        "P",
        "log_P",
        "tail_mass",
    ],
    "temperature": [
        "accel_group",
        "N",
        "log_mean",
        "mean_energy",
        "kT_est",
        "kT_unruh",
        "kT_approx",
    ],
    "entangle": [
        "accel_group",
        "N",
        "log_n",
        "log_cross",
        "log_estimator_arg",
        "E",
        "duan_lhs",
        "duan_deviation",
        "entangled",
        "log_number_product",
    ],
    "udw": [
        "T",
        "gap",
        "rwa",
        "counter",
        "vacuum",
        "alpha",
        "p_click_factored",
        "p_click_full",
        "perturbativity",
    ],
    "fig3": ["accel_group", "N", "E", "log_estimator_arg", "duan_deviation", "regime_flag"],
}


def _number(config: RunConfig) -> tuple[OverlapSpectrum, NumberResult]:
    overlap, thermal = spectra(config.physical)
    opts = config.options
    return overlap, mean_number(overlap, thermal, opts.regime_r1, opts.regime_r2)


def _mode_rows(config: RunConfig) -> list[Row]:
    overlap, _ = spectra(config.physical)
    phys = config.physical
    return [
        {
            "accel_group": phys.accel_group,
            "N": phys.mode_index,
            "k": k,
            "weight": w,
            "re_f": f.real,
            "im_f": f.imag,
            "log_abs2": la,
        }
        for k, w, f, la in zip(
            overlap.wavenumbers, overlap.weights, overlap.coefficients, overlap.log_abs2
        )
    ]


def _number_rows(config: RunConfig) -> list[Row]:
    _, number = _number(config)
    phys = config.physical
    return [
        {
            "accel_group": phys.accel_group,
            "N": phys.mode_index,
            "cutoff_scaled": phys.cutoff_scaled,
            "log_mean": number.log_mean,
            "mean": number.mean,
            "log_mean_asymptotic": (
                math.nan if number.log_mean_asymptotic is None else number.log_mean_asymptotic
            ),
            "regime_flag": int(number.regime is not None and number.regime.asymptotic_valid),
        }
    ]


def _photocount_rows(config: RunConfig) -> list[Row]:
    phys, opts = config.physical, config.options
    if opts.mean_override is not None:
        number = NumberResult.from_mean(opts.mean_override)
    else:
        _, number = _number(config)
    dist = photocount(number, phys.efficiency, opts.n_max)
    return [
        {
            "accel_group": phys.accel_group,
            "N": phys.mode_index,
            "efficiency": phys.efficiency,
            "effective_mean": dist.effective_mean,
            "n": n,
            "P": p,
            "log_P": log_p,
            "tail_mass": dist.tail_mass,
        }
        for n, (p, log_p) in enumerate(zip(dist.probs, dist.log_probs))
    ]


def _temperature_rows(config: RunConfig) -> list[Row]:
    overlap, number = _number(config)
    result = temperature(overlap, number, config.physical)
    return [
        {
            "accel_group": config.physical.accel_group,
            "N": config.physical.mode_index,
            "log_mean": number.log_mean,
            "mean_energy": result.mean_energy,
            "kT_est": result.kT_est,
            "kT_unruh": result.kT_unruh,
            "kT_approx": result.kT_approx,
        }
    ]


def _entangle_rows(config: RunConfig) -> list[Row]:
    overlap, thermal = spectra(config.physical)
    moments = two_detector_moments(overlap, thermal)
    witness = duan_witness(moments)
    return [
        {
            "accel_group": config.physical.accel_group,
            "N": config.physical.mode_index,
            "log_n": moments.log_n_I,
            "log_cross": moments.log_cross,
            "log_estimator_arg": moments.log_estimator_arg,
            "E": entanglement_estimator(moments, config.options.estimator_offset),
            "duan_lhs": witness.lhs,
            "duan_deviation": witness.log_excess,
            "entangled": int(witness.entangled),
            "log_number_product": number_product(moments).log_total,
        }
    ]


def _udw_rows(config: RunConfig) -> list[Row]:
    opts = config.options
    overlap, number = _number(config)
    if opts.mean_override is not None:
        state = StateMoments(log_n=NumberResult.from_mean(opts.mean_override).log_mean)
    else:
        state = StateMoments.accelerated_vacuum(number)
    spec = MonopoleSpec.resonant(overlap.mode, coupling=opts.coupling, gap=opts.gap)
    window = WindowSpec(T=opts.window_T, tau0=opts.window_tau0, xi0=opts.xi0)
    result = click_probability(spec, window, overlap, state)
    return [
        {
            "T": result.T,
            "gap": float(spec.levels[0]),
            "rwa": result.rwa_term,
            "counter": result.counter_term,
            "vacuum": result.vacuum_term,
            "alpha": result.alpha,
            "p_click_factored": result.click_prob,
            "p_click_full": result.click_prob_full,
            "perturbativity": result.perturbativity,
        }
    ]


def _fig3_rows(config: RunConfig) -> list[Row]:
    overlap, thermal = spectra(config.physical)
    moments = two_detector_moments(overlap, thermal)
    phys, opts = config.physical, config.options
    flags = asymptotic_regime(phys.accel_group, phys.mode_index, opts.regime_r1, opts.regime_r2)
    return [
        {
            "accel_group": phys.accel_group,
            "N": phys.mode_index,
            "E": entanglement_estimator(moments, opts.estimator_offset),
            "log_estimator_arg": moments.log_estimator_arg,
            "duan_deviation": duan_witness(moments).log_excess,
            "regime_flag": int(flags.asymptotic_valid),
        }
    ]


EVALUATORS: dict[str, Callable[[RunConfig], list[Row]]] = {
    "mode": _mode_rows,
    "number": _number_rows,
    "photocount": _photocount_rows,
    "temperature": _temperature_rows,
    "entangle": _entangle_rows,
    "udw": _udw_rows,
    "fig3": _fig3_rows,
}


def _evaluate(job: tuple[str, RunConfig]) -> list[Row]:
    # Top level so that worker processes can unpickle it
    name, config = job
    return EVALUATORS[name](config)


def fig3_points(config: RunConfig) -> list[RunConfig]:
    """The estimator grid: every mode index against log-spaced accelerations."""
    opts = config.options
    accels = np.geomspace(opts.fig3_accel_min, opts.fig3_accel_max, opts.fig3_points)
    base = RunConfig(physical=config.physical, options=opts)
    return [
        base.with_value("accel_group", float(a)).with_value("mode_index", n)
        for n in opts.fig3_modes
        for a in accels
    ]


def run_subcommand(name: str, config: RunConfig, workers: int = 1) -> pd.DataFrame:
    """Evaluate a subcommand at every sweep point.

    Args:
        name: One of ``EVALUATORS``
        config: Resolved run configuration
        workers: Worker processes; rows keep sweep order regardless

    Returns:
        One frame with the subcommand's fixed columns

    Raises:
        ValueError: If the subcommand is unknown
    """
    if name not in EVALUATORS:
        raise ValueError(
            f"Unknown subcommand: {name}. Choose from: {', '.join(EVALUATORS.keys())}"
        )
    if workers < 1:
        raise ValueError("workers must be at least 1")

    if name == "fig3":
        if config.sweep is not None:
            logger.warning("fig3 ignores the [sweep] table")
        points = fig3_points(config)
    else:
        points = config.points()
    logger.info("%s: evaluating %d point(s) on %d worker(s)", name, len(points), workers)

    jobs = [(name, point) for point in points]
    if workers > 1 and len(jobs) > 1:
        with Pool(workers) as pool:
            results = pool.map(_evaluate, jobs)
    else:
        results = [_evaluate(job) for job in jobs]

    rows = [row for chunk in results for row in chunk]
    return pd.DataFrame(rows, columns=COLUMNS[name])


def write_csv(frame: pd.DataFrame, path: str | Path, name: str, config: RunConfig) -> None:
    """Write a result table with a reproducibility header.

    Floats are written with 17 significant digits, vanishing logarithms as
    ``-inf`` and undefined values as ``nan``.
    """
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(f"# rindlercount {__version__}\n")
        handle.write(f"# subcommand: {name}\n")
        handle.write(f"# config: {config.stamp()}\n")
        frame.to_csv(
            handle, index=False, float_format="%.16e", lineterminator="\n", na_rep="nan"
        )
