"""Synthetic series generation for the simulation study.

Series are independent draws from a gamma, Gumbel, or normal distribution
with a target mean and coefficient of variation; an optional mean shift of
S * mean is applied to every point after the change index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DistributionSpec",
    "ShiftSpec",
    "GammaParams",
    "GumbelParams",
    "NormalParams",
    "solve_params",
    "change_index_for",
    "generate_series",
    "FAMILIES",
]

FAMILIES = ("gamma", "gumbel", "normal")


@dataclass(frozen=True)
class DistributionSpec:
    """Target family, mean, and coefficient of variation (as a fraction)."""

    family: str
    mean: float = 100.0
    cv: float = 0.05

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.mean <= 0:
            raise ValueError("mean must be positive")
        if self.cv <= 0:
            raise ValueError("cv must be positive")


@dataclass(frozen=True)
class ShiftSpec:
    """Mean shift as a fraction of the pre-change mean, and its location."""

    magnitude: float = 0.0
    tau_fraction: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.tau_fraction < 1.0:
            raise ValueError("tau_fraction must be in (0, 1)")


@dataclass(frozen=True)
class GammaParams:
    shape: float
    rate: float


@dataclass(frozen=True)
class GumbelParams:
    location: float
    scale: float


@dataclass(frozen=True)
class NormalParams:
    mean: float
    sd: float


def solve_params(spec: DistributionSpec):
    """Invert the first two moments to family-specific parameters.

    gamma:  shape = 1/cv^2, rate = shape/mean
    gumbel: scale = mean*cv*sqrt(6)/pi, location = mean - euler_gamma*scale
    normal: mean, sd = mean*cv
    """
    sd = spec.mean * spec.cv
    if spec.family == "gamma":
        shape = 1.0 / spec.cv**2
        return GammaParams(shape=shape, rate=shape / spec.mean)
    if spec.family == "gumbel":
        scale = sd * np.sqrt(6.0) / np.pi
        return GumbelParams(location=spec.mean - np.euler_gamma * scale, scale=scale)
    return NormalParams(mean=spec.mean, sd=sd)


def change_index_for(shift: ShiftSpec, n: int) -> int:
    """1-based change index floor(tau_fraction * T), clamped into [1, T-1]."""
    if n < 2:
        raise ValueError("series length must be >= 2")
    return min(max(int(np.floor(shift.tau_fraction * n)), 1), n - 1)


def generate_series(
    spec: DistributionSpec,
    shift: ShiftSpec,
    n: int,
    seed: int | np.random.Generator,
) -> np.ndarray:
    """Draw an independent series of length ``n`` with an injected mean shift.

    Points t <= tau have population mean ``spec.mean``; points t > tau are the
    same distribution translated by ``shift.magnitude * spec.mean`` (location
    shift, variance unchanged).  Deterministic given an integer seed.
    """
    tau = change_index_for(shift, n)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    params = solve_params(spec)
    if spec.family == "gamma":
        values = rng.gamma(params.shape, scale=1.0 / params.rate, size=n)
    elif spec.family == "gumbel":
        values = rng.gumbel(params.location, params.scale, size=n)
    else:
        values = rng.normal(params.mean, params.sd, size=n)
    if shift.magnitude != 0.0:
        values[tau:] += shift.magnitude * spec.mean
    return values
