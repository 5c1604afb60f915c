"""Reshaping of simulation tables and figure rendering.

Consumes the long-format CSV written by the simulate command and produces
either a size table (rows T, column pairs classical/bootstrap per CV, one
panel per alpha) or long-format power-curve data, optionally with rendered
PNG figures alongside the delimited output.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

from .errors import InputError
from .montecarlo import TABLE_COLUMNS

__all__ = [
    "load_table",
    "size_table",
    "power_curves",
    "render_size_figures",
    "render_power_figures",
]


def load_table(path) -> pd.DataFrame:
    """Read and schema-check a simulate output CSV."""
    try:
        df = pd.read_csv(path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise InputError(f"cannot read table {path}: {exc}") from exc
    missing = [c for c in TABLE_COLUMNS if c not in df.columns]
    if missing:
        raise InputError(f"table {path} is missing columns: {', '.join(missing)}")
    return df


def size_table(df: pd.DataFrame) -> pd.DataFrame:
    """Pivot the S=0 rows to rows (alpha, distribution, T), columns CV x method."""
    null_rows = df[df["shift_pct"] == 0]
    if null_rows.empty:
        raise InputError("no S=0 rows in table; cannot build a size table")
    pivot = null_rows.pivot_table(
        index=["alpha", "distribution", "T"],
        columns=["cv_pct", "method"],
        values="rate",
        sort=True,
    )
    # classical before bootstrap within each CV block
    pivot = pivot.reindex(
        columns=pd.MultiIndex.from_product(
            [sorted(null_rows["cv_pct"].unique()), ["classical", "bootstrap"]],
            names=["cv_pct", "method"],
        )
    )
    pivot.columns = [f"cv{cv:g}_{method}" for cv, method in pivot.columns]
    return pivot.reset_index()


def power_curves(df: pd.DataFrame) -> pd.DataFrame:
    """Long-format (T, S, CV, tau, alpha, method, rate) rows for S != 0."""
    power = df[df["shift_pct"] != 0]
    if power.empty:
        raise InputError("no S != 0 rows in table; cannot build power curves")
    out = power[
        ["distribution", "T", "shift_pct", "cv_pct", "tau_pct", "alpha", "method", "rate", "mc_stderr"]
    ].copy()
    return out.sort_values(
        ["distribution", "T", "cv_pct", "tau_pct", "alpha", "shift_pct", "method"]
    ).reset_index(drop=True)


def render_size_figures(df: pd.DataFrame, out_dir: Path) -> list[Path]:
    """One figure per alpha: empirical size vs T, lines per CV and method."""
    null_rows = df[df["shift_pct"] == 0]
    paths = []
    for alpha, panel in null_rows.groupby("alpha"):
        fig, axes = plt.subplots(
            1,
            panel["distribution"].nunique(),
            figsize=(4.2 * panel["distribution"].nunique(), 3.4),
            sharey=True,
            squeeze=False,
        )
        for ax, (dist, block) in zip(axes[0], panel.groupby("distribution")):
            for (cv, method), grp in block.groupby(["cv_pct", "method"]):
                grp = grp.sort_values("T")
                style = "-" if method == "bootstrap" else "--"
                ax.plot(grp["T"], grp["rate"], style, marker="o", ms=3,
                        label=f"CV {cv:g}% {method}")
            ax.axhline(alpha, color="gray", lw=0.8)
            ax.set_title(dist)
            ax.set_xlabel("T")
        axes[0][0].set_ylabel("empirical size")
        axes[0][-1].legend(fontsize=6)
        fig.suptitle(f"Empirical size at alpha = {alpha:g}")
        fig.tight_layout()
        path = out_dir / f"size_alpha_{alpha:g}.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        paths.append(path)
    return paths


def render_power_figures(df: pd.DataFrame, out_dir: Path) -> list[Path]:
    """Per (distribution, T, CV, alpha): power vs shift, one panel per tau."""
    power = df[df["shift_pct"] != 0]
    paths = []
    for (dist, n, cv, alpha), block in power.groupby(
        ["distribution", "T", "cv_pct", "alpha"]
    ):
        taus = sorted(block["tau_pct"].unique())
        fig, axes = plt.subplots(
            1, len(taus), figsize=(4.0 * len(taus), 3.2), sharey=True, squeeze=False
        )
        for ax, tau in zip(axes[0], taus):
            sub = block[block["tau_pct"] == tau]
            for method, grp in sub.groupby("method"):
                grp = grp.sort_values("shift_pct")
                style = "-o" if method == "bootstrap" else "--s"
                ax.plot(grp["shift_pct"], grp["rate"], style, ms=3, label=method)
            ax.set_title(f"change point at {tau:g}%")
            ax.set_xlabel("shift S (%)")
            ax.set_ylim(-0.02, 1.02)
        axes[0][0].set_ylabel("rejection rate")
        axes[0][-1].legend(fontsize=7)
        fig.suptitle(f"{dist}, T={n}, CV={cv:g}%, alpha={alpha:g}")
        fig.tight_layout()
        path = out_dir / f"power_{dist}_T{n}_cv{cv:g}_alpha{alpha:g}.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        paths.append(path)
    return paths
