"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes, so library code should raise
the most specific class that applies rather than bare ValueError.
"""


class VgpoolError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(VgpoolError, ValueError):
    """Input data violates a documented invariant (non-finite values, empty table, ...)."""


class InvalidArgumentError(VgpoolError, ValueError):
    """A parameter is outside its documented domain (bad distance, bad scheme, ...)."""


class ParseError(VgpoolError, ValueError):
    """A file could not be parsed; the message names the offending line."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class ResourceLimitError(VgpoolError, RuntimeError):
    """A request would exceed a configured size budget."""


class InternalInvariantError(VgpoolError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
