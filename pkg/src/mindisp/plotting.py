"""Matplotlib figures written next to the CLI's tabular output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from .bounds import RegionRow  # noqa: E402
from .emptybox import DispersionResult  # noqa: E402
from .geometry import PointSet  # noqa: E402
from .svgchart import PALETTE  # noqa: E402

_RC = {
    "font.size": 11,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.5,
    "svg.hashsalt": "mindisp",
}


def _save(fig, path: str | Path) -> None:
    # Strip timestamps so repeated runs write identical files.
    fmt = Path(path).suffix.lstrip(".").lower() or "png"
    metadata = {"svg": {"Date": None}, "pdf": {"CreationDate": None}, "png": {"Software": None}}.get(fmt)
    fig.savefig(path, format=fmt, metadata=metadata, bbox_inches="tight")
    plt.close(fig)


def plot_regions(rows: list[RegionRow], d: int, path: str | Path) -> None:
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(7, 4.5))
        series: dict[str, tuple[list[float], list[float]]] = {}
        for r in rows:
            for b in r.bounds:
                if b.value > 0:
                    xs, ys = series.setdefault(b.name, ([], []))
                    xs.append(r.eps)
                    ys.append(b.value)
        for name in sorted(series):
            xs, ys = series[name]
            ax.plot(xs, ys, marker=".", label=name, color=PALETTE.get(name))
        ax.step([r.eps for r in rows], [r.value for r in rows], where="mid", color="black",
                linewidth=0.8, linestyle="--", label="best")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel(r"$\varepsilon$")
        ax.set_ylabel(r"lower bound on $N(\varepsilon, d)$")
        ax.set_title(f"d = {d}")
        ax.legend(frameon=False, fontsize=9)
        _save(fig, path)


def plot_dispersion_2d(X: PointSet, result: DispersionResult, path: str | Path) -> None:
    """Points and the largest empty box; only for ``d == 2``."""
    if X.dim != 2:
        raise ValueError("dispersion figures need d == 2")
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        w = result.witness
        ax.add_patch(Rectangle((w.lower[0], w.lower[1]), w.upper[0] - w.lower[0],
                               w.upper[1] - w.lower[1], alpha=0.3, color="tab:green"))
        if len(X):
            arr = X.as_array()
            ax.scatter(arr[:, 0], arr[:, 1], s=12, color="black", zorder=3)
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1)
        ax.set_aspect("equal")
        ax.set_title(f"dispersion = {result.value:.6g}")
        _save(fig, path)
