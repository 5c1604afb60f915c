"""Pettitt change-point statistic and the classical / bootstrap tests.

The statistic for a split at time t is the Mann-Whitney-style double sum

    U_t = sum_{i<=t} sum_{j>t} sgn(x_i - x_j),   1 <= t < T,

and the test statistic is K = max_t |U_t|, attained at the most probable
change point tau.  The classical test converts K to an approximate
asymptotic p value; the bootstrap test compares K against the statistics
of B with-replacement resamples of the series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

__all__ = [
    "TestResult",
    "BootstrapConfig",
    "sgn",
    "pettitt_u",
    "u_profile",
    "pettitt_statistic",
    "approx_p_value",
    "classical_test",
    "bootstrap_test",
    "k_stat_batch",
    "as_series",
]

CLASSICAL = "classical"
BOOTSTRAP = "bootstrap"


@dataclass(frozen=True)
class TestResult:
    """Outcome of one change-point test.

    ``change_index`` is the 1-based time index tau of the last point of the
    first segment, so the series splits into t in [1, tau] and [tau+1, T].
    """

    k_stat: int
    change_index: int
    p_value: float
    method: str
    alpha: float
    rejected: bool


@dataclass(frozen=True)
class BootstrapConfig:
    """Resampling parameters for the bootstrap test."""

    num_resamples: int = 1000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.num_resamples < 1:
            raise ValueError("num_resamples must be >= 1")


def as_series(values: Sequence[float] | np.ndarray) -> np.ndarray:
    """Validate and convert input to a 1-D float array of length >= 2."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError("series must be one-dimensional")
    if arr.size < 2:
        raise ValueError(f"series must have at least 2 points, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("series contains NaN or infinite values")
    return arr


def sgn(x: float) -> int:
    """Sign of x: 1, 0, or -1."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def pettitt_u(values: Sequence[float] | np.ndarray, t: int) -> int:
    """Exact double sum U_t for a split after the t-th point (1-based).

    Evaluates sgn(x_i - x_j) over all pairs i <= t < j directly; used as the
    reference implementation that the fast path is checked against.
    """
    arr = as_series(values)
    n = arr.size
    if not 1 <= t < n:
        raise ValueError(f"split index t={t} out of range [1, {n - 1}]")
    diff = arr[:t, None] - arr[None, t:]
    return int(np.sign(diff).sum())


def u_profile(values: Sequence[float] | np.ndarray) -> np.ndarray:
    """All U_t for t = 1..T-1 as an int64 array.

    Uses the incremental recursion U_t = U_{t-1} + sum_j sgn(x_t - x_j),
    with the per-point row sums obtained from midranks
    (sum_j sgn(x_t - x_j) = 2 r_t - T - 1, exact under ties).
    """
    arr = as_series(values)
    n = arr.size
    ranks = rankdata(arr)
    row_sums = 2.0 * ranks - (n + 1)
    u = np.cumsum(row_sums)[: n - 1]
    return np.rint(u).astype(np.int64)


def pettitt_statistic(values: Sequence[float] | np.ndarray) -> tuple[int, int]:
    """Return (K, tau): max_t |U_t| and the smallest t attaining it."""
    u = u_profile(values)
    abs_u = np.abs(u)
    tau = int(np.argmax(abs_u)) + 1  # argmax returns the first maximum
    return int(abs_u[tau - 1]), tau


def approx_p_value(k_stat: int, n: int) -> float:
    """Asymptotic approximate p value, 2 exp(-6 K^2 / (T^3 + T^2)).

    The raw expression equals 2 at K = 0; the result is clamped to 1.
    """
    if k_stat < 0:
        raise ValueError("k_stat must be nonnegative")
    if n < 2:
        raise ValueError("series length must be >= 2")
    raw = 2.0 * np.exp(-6.0 * float(k_stat) ** 2 / (float(n) ** 3 + float(n) ** 2))
    return float(min(1.0, raw))


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")


def classical_test(values: Sequence[float] | np.ndarray, alpha: float) -> TestResult:
    """Classical Pettitt test with the asymptotic p value."""
    _check_alpha(alpha)
    arr = as_series(values)
    k, tau = pettitt_statistic(arr)
    p = approx_p_value(k, arr.size)
    return TestResult(k, tau, p, CLASSICAL, alpha, p < alpha)


def k_stat_batch(matrix: np.ndarray) -> np.ndarray:
    """K statistic for each row of a (n_series, T) matrix."""
    m = np.asarray(matrix, dtype=np.float64)
    n = m.shape[1]
    ranks = rankdata(m, axis=1)
    t = np.arange(1, n)
    u = 2.0 * np.cumsum(ranks[:, :-1], axis=1) - t * (n + 1)
    return np.rint(np.abs(u).max(axis=1)).astype(np.int64)


def bootstrap_test(
    values: Sequence[float] | np.ndarray,
    alpha: float,
    config: BootstrapConfig,
) -> TestResult:
    """Bootstrap Pettitt test.

    Draws ``config.num_resamples`` i.i.d. with-replacement resamples of the
    series, computes the K statistic of each, and returns

        p_boot = (1 + #{b : K*_b >= K}) / (B + 1).

    The reported change index is the classical statistic's location on the
    original sample.  Deterministic for a fixed seed.
    """
    _check_alpha(alpha)
    arr = as_series(values)
    n = arr.size
    k, tau = pettitt_statistic(arr)

    b = config.num_resamples
    rng = np.random.default_rng(config.seed)
    idx = rng.integers(0, n, size=(b, n))
    k_resampled = k_stat_batch(arr[idx])
    exceed = int(np.count_nonzero(k_resampled >= k))
    p_boot = (1 + exceed) / (b + 1)
    return TestResult(k, tau, p_boot, BOOTSTRAP, alpha, p_boot < alpha)
