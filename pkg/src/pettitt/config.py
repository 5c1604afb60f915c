"""Simulation configuration files.

Flat key = value text, one key per line, ``#`` starts a comment, lists are
comma-separated.  Recognized keys:

    distributions        = gamma, gumbel, normal
    sample_sizes         = 10, 20, 30, 50, 100
    cvs_pct              = 5, 10, 20, 30
    shifts_pct           = 0, 0.1, 1, 3, 5, 10
    tau_fracs_pct        = 10, 50, 70
    alphas               = 0.01, 0.05, 0.10
    replications         = 2000
    bootstrap_resamples  = 500
    seed                 = 20260823
    parallelism          = 4
    mean                 = 100

Null scenarios (shift 0) are simulated once per (distribution, T, CV); the
change location only matters when a shift is present.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .synth import DistributionSpec, FAMILIES, ShiftSpec
from .montecarlo import Scenario

__all__ = ["SimulationConfig", "parse_config", "load_config"]

_LIST_KEYS = {
    "distributions",
    "sample_sizes",
    "cvs_pct",
    "shifts_pct",
    "tau_fracs_pct",
    "alphas",
}
_SCALAR_KEYS = {"replications", "bootstrap_resamples", "seed", "parallelism", "mean"}


@dataclass
class SimulationConfig:
    distributions: list[str] = field(default_factory=lambda: ["gamma"])
    sample_sizes: list[int] = field(default_factory=lambda: [10, 20, 30, 50, 100])
    cvs_pct: list[float] = field(default_factory=lambda: [5.0, 10.0, 20.0, 30.0])
    shifts_pct: list[float] = field(default_factory=lambda: [0.0])
    tau_fracs_pct: list[float] = field(default_factory=lambda: [50.0])
    alphas: list[float] = field(default_factory=lambda: [0.01, 0.05, 0.10])
    replications: int = 2000
    bootstrap_resamples: int = 500
    seed: int = 0
    parallelism: int = 1
    mean: float = 100.0

    def scenarios(self) -> list[Scenario]:
        """Expand the factorial grid into scenario cells."""
        cells = []
        for family in self.distributions:
            for n in self.sample_sizes:
                for cv_pct in self.cvs_pct:
                    dist = DistributionSpec(family, self.mean, cv_pct / 100.0)
                    for shift_pct in self.shifts_pct:
                        if shift_pct == 0.0:
                            cells.append(
                                Scenario(dist, ShiftSpec(0.0, 0.5), n)
                            )
                            continue
                        for tau_pct in self.tau_fracs_pct:
                            cells.append(
                                Scenario(
                                    dist,
                                    ShiftSpec(shift_pct / 100.0, tau_pct / 100.0),
                                    n,
                                )
                            )
        if not cells:
            raise ConfigError("configuration expands to an empty scenario list")
        return cells

    def validate(self) -> None:
        for family in self.distributions:
            if family not in FAMILIES:
                raise ConfigError(
                    f"distributions: unknown family {family!r}; expected one of {FAMILIES}"
                )
        if not self.distributions:
            raise ConfigError("distributions: list must be nonempty")
        for key in ("sample_sizes", "cvs_pct", "shifts_pct", "tau_fracs_pct", "alphas"):
            if not getattr(self, key):
                raise ConfigError(f"{key}: list must be nonempty")
        if any(n < 2 for n in self.sample_sizes):
            raise ConfigError("sample_sizes: every T must be >= 2")
        if any(cv <= 0 for cv in self.cvs_pct):
            raise ConfigError("cvs_pct: every CV must be positive")
        if any(not 0 < tau < 100 for tau in self.tau_fracs_pct):
            raise ConfigError("tau_fracs_pct: values must be in (0, 100)")
        if any(not 0 < a < 1 for a in self.alphas):
            raise ConfigError("alphas: values must be in (0, 1)")
        if self.replications < 1:
            raise ConfigError("replications: must be >= 1")
        if self.bootstrap_resamples < 1:
            raise ConfigError("bootstrap_resamples: must be >= 1")
        if self.parallelism < 1:
            raise ConfigError("parallelism: must be >= 1")
        if self.mean <= 0:
            raise ConfigError("mean: must be positive")


def _parse_number(key: str, token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ConfigError(
            f"{key}: cannot parse {token!r} as a number (line {lineno})"
        ) from None


def parse_config(text: str) -> SimulationConfig:
    """Parse config text; unknown keys and malformed values name the key."""
    cfg = SimulationConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value' on line {lineno}: {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "distributions":
            cfg.distributions = [tok.strip().lower() for tok in value.split(",") if tok.strip()]
        elif key in _LIST_KEYS:
            numbers = [
                _parse_number(key, tok.strip(), lineno)
                for tok in value.split(",")
                if tok.strip()
            ]
            if key == "sample_sizes":
                cfg.sample_sizes = [int(v) for v in numbers]
            else:
                setattr(cfg, key, numbers)
        elif key in _SCALAR_KEYS:
            number = _parse_number(key, value, lineno)
            if key == "mean":
                cfg.mean = number
            else:
                setattr(cfg, key, int(number))
        else:
            raise ConfigError(f"unknown configuration key {key!r} (line {lineno})")
    cfg.validate()
    return cfg


def load_config(path) -> SimulationConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)
