"""
Exceptions raised by the package. Each class carries the exit code the
command line returns when it escapes a subcommand.
"""


class ChiError(Exception):
    """Base class of all errors raised by PLocalChi."""

    exit_code = 1


class InputError(ChiError):
    """Malformed input or a violated precondition."""

    exit_code = 2


class ResourceLimitError(ChiError):
    """A configured cap (elements, subgroups, points) was exceeded."""

    exit_code = 3

    def __init__(self, message: str, limit: int | None = None,
                 reached: int | None = None) -> None:
        super().__init__(message)
        self.limit = limit
        self.reached = reached


class InvariantError(ChiError):
    """
    A theorem-level identity failed. The residuals that were not zero are
    kept on the exception so that the caller can serialize them.
    """

    exit_code = 1

    def __init__(self, message: str, residuals: dict | None = None) -> None:
        super().__init__(message)
        self.residuals = residuals or {}


# exit code of a scan that found a counterexample; not an exception
COUNTEREXAMPLE_EXIT_CODE = 4
