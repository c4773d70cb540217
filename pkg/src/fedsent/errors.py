"""Exception hierarchy shared across the pipeline, mapped to CLI exit codes."""


class FedsentError(Exception):
    """Base class for all pipeline errors."""

    exit_code = 1


class ConfigError(FedsentError):
    """Invalid or incomplete configuration (missing paths, bad values)."""

    exit_code = 2


class DataError(FedsentError):
    """Unusable input data (unreadable file, empty corpus, missing class)."""

    exit_code = 3


class NumericError(FedsentError):
    """Numerical failure (non-finite parameters, broken invariant)."""

    exit_code = 4
