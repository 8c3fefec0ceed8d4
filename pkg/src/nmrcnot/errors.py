"""Exception types raised across the package."""


class NmrCnotError(Exception):
    """Base class for all package errors."""


class NotNormal(NmrCnotError, ValueError):
    """The matrix fails the normality check M M^dag = M^dag M."""


class SingularInput(NmrCnotError, ValueError):
    """An inverse was requested for a singular matrix."""


class NotCnotLike(NmrCnotError, ValueError):
    """The operator is not a controlled flip dressed with basis phases."""


class ZeroCoupling(NmrCnotError, ValueError):
    """A coupling rotation was requested while omega12 is zero."""


class TranscriptionError(NmrCnotError):
    """A catalog entry matches neither of its printed pulse sequences."""


class CatalogLookupError(NmrCnotError, KeyError):
    """Unknown catalog id."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown catalog id"


class ParseError(NmrCnotError, ValueError):
    """Malformed pulse-sequence or matrix text.

    ``position`` is the 1-based index of the offending token, or ``None``
    when the error is not tied to a single token.
    """

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"token {position}: {message}"
        super().__init__(message)
