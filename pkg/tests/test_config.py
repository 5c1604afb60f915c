"""Tests for the simulation config parser."""

import pytest

from pettitt.config import parse_config
from pettitt.errors import ConfigError

FULL = """
# Table-1 style grid
distributions = gamma, gumbel
sample_sizes = 10, 20
cvs_pct = 5, 10
shifts_pct = 0, 5
tau_fracs_pct = 50, 70
alphas = 0.01, 0.05
replications = 500
bootstrap_resamples = 100
seed = 99
parallelism = 2
mean = 100
"""


def test_full_config():
    cfg = parse_config(FULL)
    assert cfg.distributions == ["gamma", "gumbel"]
    assert cfg.sample_sizes == [10, 20]
    assert cfg.alphas == [0.01, 0.05]
    assert cfg.replications == 500
    assert cfg.bootstrap_resamples == 100
    assert cfg.seed == 99
    assert cfg.parallelism == 2


def test_scenario_expansion_null_collapsed_over_tau():
    cfg = parse_config(FULL)
    cells = cfg.scenarios()
    # S=0: once per (dist, T, CV); S=5: once per tau
    null_cells = [c for c in cells if c.shift.magnitude == 0]
    power_cells = [c for c in cells if c.shift.magnitude != 0]
    assert len(null_cells) == 2 * 2 * 2
    assert len(power_cells) == 2 * 2 * 2 * 2


def test_defaults():
    cfg = parse_config("distributions = gamma\n")
    assert cfg.sample_sizes == [10, 20, 30, 50, 100]
    assert cfg.replications == 2000
    assert cfg.bootstrap_resamples == 500


def test_comments_and_blank_lines():
    cfg = parse_config("# heading\n\nseed = 5  # trailing\n")
    assert cfg.seed == 5


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("distributions = cauchy\n", "distributions"),
        ("unknown_key = 3\n", "unknown_key"),
        ("alphas = 0.5, 2\n", "alphas"),
        ("replications = 0\n", "replications"),
        ("sample_sizes = 1\n", "sample_sizes"),
        ("seed = abc\n", "seed"),
        ("distributions =\n", "distributions"),
        ("just some text\n", "key = value"),
    ],
)
def test_errors_name_the_key(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)
