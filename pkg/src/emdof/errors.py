"""Error taxonomy shared by the library and the command line tool.

Each class maps to a process exit code so scripted callers can tell a bad
configuration from a resource limit or a numerical breakdown.
"""


class EmdofError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ConfigurationError(EmdofError):
    """A parameter, config file or spec/grid combination is invalid."""

    exit_code = 2


class InvalidRegionError(ConfigurationError):
    """A requested integration region is empty or degenerate."""

    exit_code = 2


class CapacityError(EmdofError):
    """A node-count or memory cap would be exceeded."""

    exit_code = 3


class NumericFailureError(EmdofError):
    """An iterative numerical procedure failed to converge."""

    exit_code = 4
