"""Exception hierarchy shared by the whole package.

Exit-status mapping used by the CLI and the HTTP layer:
InputError (and subclasses) -> exit 2 / HTTP 422, VerificationError -> exit 1,
everything else is a bug.
"""


class LieSpectraError(Exception):
    """Base class for all errors raised by liespectra."""


class InputError(LieSpectraError):
    """Invalid input: malformed document, bad matrix data, wrong sizes,
    unmet preconditions of an operation."""

    def __init__(self, message, *, field=None):
        super().__init__(message)
        self.field = field


class UnsupportedError(InputError):
    """The input is well-formed but outside the supported class
    (e.g. a Jordan-Hoelder flag of a non-nilpotent algebra)."""


class ToleranceError(LieSpectraError):
    """A numerical result is internally inconsistent at the configured
    tolerances (e.g. a negative homology dimension). Carries diagnostics."""

    def __init__(self, message, *, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class VerificationError(LieSpectraError):
    """A mathematically guaranteed identity failed to verify numerically."""
