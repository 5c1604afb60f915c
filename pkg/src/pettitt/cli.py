"""Command-line surface: test a CSV series, run simulation grids, report.

Exit codes: 0 success, 3 input error, 4 configuration error, 5 degenerate
or numerically inapplicable data.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import click
import numpy as np
import pandas as pd

from . import report as report_mod
from .config import load_config
from .core import BootstrapConfig, TestResult, bootstrap_test, classical_test
from .errors import (
    ConfigError,
    DegenerateSeriesError,
    InputError,
    PrewhiteningSingularityError,
)
from .io import read_series_csv
from .montecarlo import run_grid
from .prewhiten import prewhiten_pipeline
from .seeding import derive_seed

EXIT_INPUT = 3
EXIT_CONFIG = 4
EXIT_DEGENERATE = 5

ANALYSIS_COLUMNS = [
    "stage",
    "method",
    "alpha",
    "k_stat",
    "change_index",
    "change_label",
    "p_value",
    "rejected",
    "delta",
    "rho_hat",
    "rho_star",
    "mean_before",
    "mean_after",
    "shift_pct",
]


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    if isinstance(exc, InputError):
        sys.exit(EXIT_INPUT)
    if isinstance(exc, ConfigError):
        sys.exit(EXIT_CONFIG)
    if isinstance(exc, (DegenerateSeriesError, PrewhiteningSingularityError)):
        sys.exit(EXIT_DEGENERATE)
    raise exc


@click.group()
def main() -> None:
    """Pettitt and bootstrap Pettitt change-point tests."""


def _result_line(res: TestResult, label: str, alpha: float) -> str:
    decision = "CHANGE" if res.p_value < alpha else "no change"
    return (
        f"  {res.method:<9s} K={res.k_stat:<6d} tau={res.change_index} "
        f"({label})  p={res.p_value:.5f}  alpha={alpha:g}: {decision}"
    )


def _analysis_rows(
    stage: str,
    res: TestResult,
    alphas: list[float],
    label: str,
    extra: dict | None = None,
) -> list[dict]:
    extra = extra or {}
    rows = []
    for alpha in alphas:
        row = dict.fromkeys(ANALYSIS_COLUMNS, "")
        row.update(
            stage=stage,
            method=res.method,
            alpha=alpha,
            k_stat=res.k_stat,
            change_index=res.change_index,
            change_label=label,
            p_value=res.p_value,
            rejected=res.p_value < alpha,
        )
        row.update(extra)
        rows.append(row)
    return rows


@main.command("test")
@click.argument("csv_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--alpha", "-a", "alphas", multiple=True, type=float, default=(0.05,),
              show_default=True, help="Significance level; repeatable, first one gates.")
@click.option("--bootstrap-resamples", "-B", default=1000, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int, envvar="PETTITT_SEED")
@click.option("--prewhiten", is_flag=True, help="Run the lag-1 prewhitening pipeline.")
@click.option("--gate-bootstrap", is_flag=True,
              help="Gate step 1 of prewhitening on the bootstrap test instead.")
@click.option("--output-dir", type=click.Path(file_okay=False), default=".",
              show_default=True)
def cmd_test(csv_path, alphas, bootstrap_resamples, seed, prewhiten, gate_bootstrap,
             output_dir):
    """Apply both change-point tests to a CSV series."""
    try:
        _run_test(csv_path, list(alphas), bootstrap_resamples, seed, prewhiten,
                  gate_bootstrap, output_dir)
    except (InputError, ConfigError, DegenerateSeriesError,
            PrewhiteningSingularityError) as exc:
        _fail(exc)
    except ValueError as exc:
        _fail(InputError(str(exc)))


def _run_test(csv_path, alphas, num_resamples, seed, prewhiten, gate_bootstrap,
              output_dir):
    for alpha in alphas:
        if not 0.0 < alpha < 1.0:
            raise InputError(f"alpha must be in (0, 1), got {alpha}")
    labels, values = read_series_csv(csv_path)
    min_len = 4 if prewhiten else 2
    if values.size < min_len:
        raise InputError(
            f"series has {values.size} points; need at least {min_len}"
        )
    alpha0 = alphas[0]
    config = BootstrapConfig(num_resamples, seed)

    click.echo(f"# series: {csv_path} (T={values.size})")
    click.echo(f"# seed: {seed}  bootstrap resamples: {num_resamples}")
    click.echo("# change index tau labels the LAST point of the first segment")

    rows: list[dict] = []

    def seg_extras(tau: int) -> dict:
        before = float(values[:tau].mean())
        after = float(values[tau:].mean())
        delta = after - before
        return {
            "mean_before": before,
            "mean_after": after,
            "shift_pct": 100.0 * delta / before if before != 0 else "",
        }

    if not prewhiten:
        res_c = classical_test(values, alpha0)
        res_b = bootstrap_test(values, alpha0, config)
        label = labels[res_c.change_index - 1]
        extras = seg_extras(res_c.change_index)
        click.echo("original series:")
        for alpha in alphas:
            click.echo(_result_line(res_c, label, alpha))
            click.echo(_result_line(res_b, label, alpha))
        s_txt = "n/a" if extras["shift_pct"] == "" else f"{extras['shift_pct']:.2f}%"
        click.echo(
            f"segment means: before={extras['mean_before']:.4f} "
            f"after={extras['mean_after']:.4f} S={s_txt}"
        )
        rows += _analysis_rows("original", res_c, alphas, label, extras)
        rows += _analysis_rows("original", res_b, alphas, label, extras)
    else:
        gate = "bootstrap" if gate_bootstrap else "classical"
        rep = prewhiten_pipeline(values, alpha0, config, gate=gate)
        init_label = labels[rep.initial_classical.change_index - 1]
        click.echo(f"original series (prewhitening gate: {gate}):")
        for alpha in alphas:
            click.echo(_result_line(rep.initial_classical, init_label, alpha))
            click.echo(_result_line(rep.initial_bootstrap, init_label, alpha))
        rows += _analysis_rows("original", rep.initial_classical, alphas, init_label)
        rows += _analysis_rows("original", rep.initial_bootstrap, alphas, init_label)
        if rep.stopped_early:
            click.echo("no change detected on the original data; analysis stopped")
        else:
            tau = rep.initial_classical.change_index
            extras = seg_extras(tau)
            pw = {
                "delta": rep.delta,
                "rho_hat": rep.rho_hat,
                "rho_star": rep.rho_star,
                **extras,
            }
            click.echo(
                f"step removal: delta={rep.delta:.4f} "
                f"(means {extras['mean_before']:.4f} -> {extras['mean_after']:.4f}, "
                f"S={100.0 * rep.delta / extras['mean_before']:.2f}%)"
            )
            click.echo(
                f"lag-1 autocorrelation: rho={rep.rho_hat:.4f} "
                f"bias-corrected rho*={rep.rho_star:.4f}"
            )
            # recombined index t' maps to original index t'+1
            fin_c, fin_b = rep.final_classical, rep.final_bootstrap
            lab_c = labels[fin_c.change_index]
            lab_b = labels[fin_b.change_index]
            click.echo("prewhitened series:")
            for alpha in alphas:
                click.echo(_result_line(fin_c, lab_c, alpha))
                click.echo(_result_line(fin_b, lab_b, alpha))
            rows += _analysis_rows("prewhitened", fin_c, alphas, lab_c, pw)
            rows += _analysis_rows("prewhitened", fin_b, alphas, lab_b, pw)

    out_dir = Path(output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / f"{Path(csv_path).stem}_analysis.csv"
    pd.DataFrame(rows, columns=ANALYSIS_COLUMNS).to_csv(out_path, index=False)
    click.echo(f"wrote {out_path}")


@main.command("simulate")
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--output-dir", type=click.Path(file_okay=False), default=".",
              show_default=True)
@click.option("--profile", type=click.Choice(["desk", "paper"]), default=None,
              help="desk: R=2000, B=500; paper: R=10000, B=1000.")
@click.option("--replications", "-R", type=int, default=None)
@click.option("--bootstrap-resamples", "-B", type=int, default=None)
@click.option("--seed", type=int, default=None, envvar="PETTITT_SEED")
@click.option("--parallelism", type=int, default=None, envvar="PETTITT_PARALLELISM")
def cmd_simulate(config_path, output_dir, profile, replications,
                 bootstrap_resamples, seed, parallelism):
    """Run the rejection-rate study described by a config file."""
    try:
        cfg = load_config(config_path)
        if profile == "desk":
            cfg.replications, cfg.bootstrap_resamples = 2000, 500
        elif profile == "paper":
            cfg.replications, cfg.bootstrap_resamples = 10000, 1000
        if replications is not None:
            cfg.replications = replications
        if bootstrap_resamples is not None:
            cfg.bootstrap_resamples = bootstrap_resamples
        if seed is not None:
            cfg.seed = seed
        if parallelism is not None:
            cfg.parallelism = parallelism
        cfg.validate()

        scenarios = cfg.scenarios()
        click.echo(f"# seed: {cfg.seed}")
        click.echo(
            f"# scenarios: {len(scenarios)}  alphas: {cfg.alphas}  "
            f"R={cfg.replications}  B={cfg.bootstrap_resamples}  "
            f"parallelism={cfg.parallelism}"
        )
        start = time.perf_counter()
        table = run_grid(
            scenarios,
            cfg.alphas,
            cfg.replications,
            BootstrapConfig(cfg.bootstrap_resamples, cfg.seed),
            parallelism=cfg.parallelism,
        )
        elapsed = time.perf_counter() - start
        out_dir = Path(output_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        out_path = out_dir / "rejection_rates.csv"
        table.write_csv(out_path)
        click.echo(f"wrote {out_path} ({len(table)} rows) in {elapsed:.1f}s")
    except ConfigError as exc:
        _fail(exc)
    except (InputError, DegenerateSeriesError) as exc:
        _fail(exc)


@main.command("report")
@click.argument("table_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", type=click.Choice(["size-table", "power-curves"]),
              required=True)
@click.option("--output-dir", type=click.Path(file_okay=False), default=".",
              show_default=True)
@click.option("--figures/--no-figures", default=True, show_default=True,
              help="Also render PNG figures next to the CSV output.")
def cmd_report(table_csv, kind, output_dir, figures):
    """Reshape a simulate table into a size table or power-curve data."""
    try:
        df = report_mod.load_table(table_csv)
        out_dir = Path(output_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        if kind == "size-table":
            out = report_mod.size_table(df)
            out_path = out_dir / "size_table.csv"
            out.to_csv(out_path, index=False, float_format="%.4f")
            figure_paths = report_mod.render_size_figures(df, out_dir) if figures else []
        else:
            out = report_mod.power_curves(df)
            out_path = out_dir / "power_curves.csv"
            out.to_csv(out_path, index=False, float_format="%.6f")
            figure_paths = report_mod.render_power_figures(df, out_dir) if figures else []
        click.echo(f"wrote {out_path}")
        for p in figure_paths:
            click.echo(f"wrote {p}")
    except InputError as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
