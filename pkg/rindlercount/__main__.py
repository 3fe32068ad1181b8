"""Command-line interface for rindlercount."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from rindlercount.config import DEFAULT_CONFIG, load_config, validate_run
from rindlercount.sweep import EVALUATORS, run_subcommand, write_csv
from rindlercount.visualize import write_plot_script


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for the ``rindlercount`` command."""
    parser = argparse.ArgumentParser(
        prog="rindlercount",
        description="Photo-count statistics and entanglement seen by accelerated detectors",
    )

    parser.add_argument(
        "subcommand",
        choices=list(EVALUATORS.keys()),
        help="Quantity to compute",
    )

    parser.add_argument(
        "--config",
        type=Path,
        default=None,
        help="TOML configuration file (default: aL/c^2 = 0.02, N = 800)",
    )

    parser.add_argument(
        "--out",
        "--output",
        dest="output",
        type=Path,
        default=None,
        help="Output CSV path (default: <subcommand>.csv)",
    )

    parser.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Worker processes for sweeps (default: 1)",
    )

    parser.add_argument(
        "--n-max",
        type=int,
        default=None,
        help="Largest photo-count tabulated (overrides n_max in the config)",
    )

    parser.add_argument(
        "--seed-free",
        action="store_true",
        help="Accepted for compatibility; every computation is deterministic",
    )

    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Log grid construction and sweep progress",
    )
    return parser


def main(argv: list[str] | None = None) -> None:
    """Main CLI entry point."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        config = load_config(args.config) if args.config else DEFAULT_CONFIG
        if args.n_max is not None:
            config = validate_run(
                replace(config, options=replace(config.options, n_max=args.n_max))
            )
        output = args.output or Path(f"{args.subcommand}.csv")

        print(f"Running {args.subcommand}...")
        frame = run_subcommand(args.subcommand, config, workers=args.workers)
        write_csv(frame, output, args.subcommand, config)
        print(f"Wrote {len(frame)} row(s) to {output}")

        if args.subcommand == "fig3":
            script = write_plot_script(output)
            print(f"Plot script saved to {script}")

    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
