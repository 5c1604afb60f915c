"""Monte Carlo rejection-rate estimation for both change-point tests.

For each scenario (distribution, length, CV, shift, change location) the
harness generates R independent series, runs the classical and bootstrap
tests once per series, and counts rejections at every significance level
simultaneously.  Per-replication seeds are derived from (base seed,
scenario key, replication index), so the resulting table is bit-identical
for any parallelism level or work split.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd

from .core import BootstrapConfig, approx_p_value, bootstrap_test, pettitt_statistic
from .seeding import derive_seed, stable_key
from .synth import DistributionSpec, ShiftSpec, generate_series

__all__ = [
    "Scenario",
    "RejectionRow",
    "RejectionTable",
    "rejection_rates",
    "run_grid",
    "TABLE_COLUMNS",
]

TABLE_COLUMNS = [
    "distribution",
    "T",
    "cv_pct",
    "shift_pct",
    "tau_pct",
    "alpha",
    "method",
    "rate",
    "mc_stderr",
    "R",
    "B",
    "seed",
]


@dataclass(frozen=True)
class Scenario:
    """One simulation cell."""

    dist: DistributionSpec
    shift: ShiftSpec
    length: int
    label: str = ""

    def key(self) -> int:
        """Stable 64-bit key from the scenario's defining fields."""
        text = "|".join(
            [
                self.dist.family,
                repr(float(self.dist.mean)),
                repr(float(self.dist.cv)),
                repr(float(self.shift.magnitude)),
                repr(float(self.shift.tau_fraction)),
                str(self.length),
            ]
        )
        return stable_key(text)


@dataclass(frozen=True)
class RejectionRow:
    distribution: str
    length: int
    cv_pct: float
    shift_pct: float
    tau_pct: float
    alpha: float
    method: str
    rate: float
    mc_stderr: float
    replications: int
    num_resamples: int
    seed: int


class RejectionTable:
    """Ordered collection of rejection-rate rows with CSV emission."""

    def __init__(self, rows: Sequence[RejectionRow]):
        self.rows = list(rows)

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                (
                    r.distribution,
                    r.length,
                    r.cv_pct,
                    r.shift_pct,
                    r.tau_pct,
                    r.alpha,
                    r.method,
                    r.rate,
                    r.mc_stderr,
                    r.replications,
                    r.num_resamples,
                    r.seed,
                )
                for r in self.rows
            ],
            columns=TABLE_COLUMNS,
        )

    def write_csv(self, path) -> None:
        self.to_dataframe().to_csv(path, index=False, float_format="%.6f")

    def __len__(self) -> int:
        return len(self.rows)


def _count_rejections(
    scenario: Scenario,
    alphas: Sequence[float],
    start: int,
    stop: int,
    num_resamples: int,
    base_seed: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Rejection counts for replications [start, stop) of one scenario."""
    alphas_arr = np.asarray(alphas, dtype=np.float64)
    key = scenario.key()
    n_classical = np.zeros(alphas_arr.size, dtype=np.int64)
    n_bootstrap = np.zeros(alphas_arr.size, dtype=np.int64)
    for r in range(start, stop):
        gen_seed = derive_seed(base_seed, key, r, 0)
        boot_seed = derive_seed(base_seed, key, r, 1)
        series = generate_series(scenario.dist, scenario.shift, scenario.length, gen_seed)
        k, _ = pettitt_statistic(series)
        p_classical = approx_p_value(k, scenario.length)
        p_boot = bootstrap_test(
            series, alphas_arr[0], BootstrapConfig(num_resamples, boot_seed)
        ).p_value
        n_classical += p_classical < alphas_arr
        n_bootstrap += p_boot < alphas_arr
    return n_classical, n_bootstrap


def _rows_from_counts(
    scenario: Scenario,
    alphas: Sequence[float],
    counts: tuple[np.ndarray, np.ndarray],
    replications: int,
    num_resamples: int,
    base_seed: int,
) -> list[RejectionRow]:
    n_classical, n_bootstrap = counts
    rows = []
    for i, alpha in enumerate(alphas):
        for method, count in (("classical", n_classical[i]), ("bootstrap", n_bootstrap[i])):
            rate = count / replications
            stderr = math.sqrt(rate * (1.0 - rate) / replications)
            rows.append(
                RejectionRow(
                    distribution=scenario.dist.family,
                    length=scenario.length,
                    cv_pct=round(scenario.dist.cv * 100.0, 6),
                    shift_pct=round(scenario.shift.magnitude * 100.0, 6),
                    tau_pct=round(scenario.shift.tau_fraction * 100.0, 6),
                    alpha=float(alpha),
                    method=method,
                    rate=float(rate),
                    mc_stderr=stderr,
                    replications=replications,
                    num_resamples=num_resamples,
                    seed=base_seed,
                )
            )
    return rows


def rejection_rates(
    scenario: Scenario,
    alphas: Sequence[float],
    replications: int,
    config: BootstrapConfig,
) -> list[RejectionRow]:
    """Rates for one scenario at every alpha, for both tests."""
    if replications < 1:
        raise ValueError("replications must be >= 1")
    for alpha in alphas:
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    counts = _count_rejections(
        scenario, alphas, 0, replications, config.num_resamples, config.seed
    )
    return _rows_from_counts(
        scenario, alphas, counts, replications, config.num_resamples, config.seed
    )


def run_grid(
    scenarios: Sequence[Scenario],
    alphas: Sequence[float],
    replications: int,
    config: BootstrapConfig,
    parallelism: int = 1,
) -> RejectionTable:
    """Rates for every scenario; identical output at any parallelism level."""
    if not scenarios:
        raise ValueError("scenario list must be nonempty")
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")

    if parallelism == 1:
        rows: list[RejectionRow] = []
        for scenario in scenarios:
            rows.extend(rejection_rates(scenario, alphas, replications, config))
        return RejectionTable(rows)

    # Split each scenario's replications into chunks; counts add up the same
    # way regardless of which worker handled which chunk.
    chunk = max(1, math.ceil(replications / (parallelism * 2)))
    tasks = []
    for i, scenario in enumerate(scenarios):
        for start in range(0, replications, chunk):
            tasks.append((i, scenario, start, min(start + chunk, replications)))

    totals = {
        i: (np.zeros(len(alphas), dtype=np.int64), np.zeros(len(alphas), dtype=np.int64))
        for i in range(len(scenarios))
    }
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        futures = [
            (
                i,
                pool.submit(
                    _count_rejections,
                    scenario,
                    list(alphas),
                    start,
                    stop,
                    config.num_resamples,
                    config.seed,
                ),
            )
            for i, scenario, start, stop in tasks
        ]
        for i, fut in futures:
            n_c, n_b = fut.result()
            totals[i][0][:] += n_c
            totals[i][1][:] += n_b

    rows = []
    for i, scenario in enumerate(scenarios):
        rows.extend(
            _rows_from_counts(
                scenario, alphas, totals[i], replications, config.num_resamples, config.seed
            )
        )
    return RejectionTable(rows)
