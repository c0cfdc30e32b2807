"""Single-curve SVG line charts.

Output is a pure function of the data: no timestamp metadata, a fixed id
salt and text kept as ``<text>`` elements so no font paths are embedded.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Sequence

import matplotlib
from matplotlib.figure import Figure

SVG_SALT = "canonical-spectra"


@dataclass(frozen=True)
class Series:
    x: Sequence[float]
    y: Sequence[float]
    xlabel: str
    ylabel: str
    title: str
    yscale: str = "linear"


def render_svg(series: Series) -> str:
    rc = {"svg.hashsalt": SVG_SALT, "svg.fonttype": "none", "path.simplify": False}
    with matplotlib.rc_context(rc):
        fig = Figure(figsize=(7, 4))
        ax = fig.add_subplot()
        ax.plot(series.x, series.y, color="black", linewidth=1.0, marker="." if len(series.x) <= 60 else None)
        if series.yscale == "symlog":
            ax.set_yscale("symlog", linthresh=1e-16)
        else:
            ax.set_yscale(series.yscale)
        ax.set_xlabel(series.xlabel)
        ax.set_ylabel(series.ylabel)
        ax.set_title(series.title)
        ax.grid(True, linewidth=0.3)
        fig.tight_layout()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    return buf.getvalue()


def scan_series(alpha: int, rows) -> Series:
    """Smallest singular value against mu, horizontal axis in units of pi."""
    return Series(
        x=[r.mu / math.pi for r in rows],
        y=[max(r.smallest_singular_value, 1e-300) for r in rows],
        xlabel="mu / pi",
        ylabel="smallest singular value",
        title=f"alpha = {alpha}",
        yscale="log",
    )


def spectrum_series(alpha: int, records) -> Series:
    return Series(
        x=[r.n for r in records],
        y=[float(r.delta) for r in records],
        xlabel="n",
        ylabel="delta_n",
        title=f"alpha = {alpha}: offsets from the asymptotic base",
        yscale="symlog",
    )
