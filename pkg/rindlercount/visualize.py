"""Plots of the entanglement-estimator curves using matplotlib."""

from __future__ import annotations

from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd

LINE_STYLES = ["-", "--", ":", "-."]

PLOT_SCRIPT = '''"""Plot {csv_name} produced by `rindlercount fig3`."""

from rindlercount.visualize import save_fig3

save_fig3({csv_path!r}, {png_path!r})
'''


def read_table(filename: str | Path) -> pd.DataFrame:
    """Read a rindlercount CSV, skipping its ``#`` header lines."""
    return pd.read_csv(filename, comment="#")


def render_fig3(
    frame: pd.DataFrame,
    figsize: tuple[float, float] = (6.0, 4.0),
    color: str = "black",
) -> plt.Figure:
    """Render E against aL/c^2, one curve per mode index.

    Args:
        frame: Rows with ``accel_group``, ``N`` and ``E`` columns
        figsize: Figure size in inches
        color: Line colour; curves are told apart by line style

    Returns:
        The matplotlib figure
    """
    fig, ax = plt.subplots(figsize=figsize)
    for i, (mode_index, curve) in enumerate(frame.groupby("N", sort=True)):
        curve = curve.sort_values("accel_group")
        ax.plot(
            curve["accel_group"],
            curve["E"],
            linestyle=LINE_STYLES[i % len(LINE_STYLES)],
            color=color,
            label=f"N = {mode_index}",
        )
    ax.set_xscale("log")
    ax.set_xlabel(r"$aL/c^2$")
    ax.set_ylabel(r"$\mathcal{E}$")
    ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def save_fig3(csv_filename: str | Path, filename: str | Path, dpi: int = 100) -> None:
    """Render a ``fig3`` CSV to an image file.

    Args:
        csv_filename: Output of ``rindlercount fig3``
        filename: Image path; the format follows the extension
        dpi: Dots per inch for output
    """
    fig = render_fig3(read_table(csv_filename))
    fig.savefig(filename, dpi=dpi, bbox_inches="tight")
    plt.close(fig)


def write_plot_script(csv_filename: str | Path) -> Path:
    """Write ``<stem>_plot.py`` next to a ``fig3`` CSV and return its path.

    Running the script renders ``<stem>.png``; the CLI itself never draws.
    """
    csv_path = Path(csv_filename)
    script = csv_path.with_name(f"{csv_path.stem}_plot.py")
    script.write_text(
        PLOT_SCRIPT.format(
            csv_name=csv_path.name,
            csv_path=str(csv_path),
            png_path=str(csv_path.with_suffix(".png")),
        ),
        encoding="utf-8",
    )
    return script
