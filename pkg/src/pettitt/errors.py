"""Exception types shared across the package."""


class DegenerateSeriesError(ValueError):
    """Raised when a series is constant (or otherwise has zero variance)
    where a nondegenerate series is required."""


class PrewhiteningSingularityError(ValueError):
    """Raised when the bias-corrected lag-1 coefficient reaches |rho*| >= 1,
    making the 1/(1 - rho*) recombination undefined or explosive."""


class InputError(ValueError):
    """Malformed user input (CSV files, table schemas)."""


class ConfigError(ValueError):
    """Invalid simulation configuration file."""
