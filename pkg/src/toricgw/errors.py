"""Exception hierarchy shared across the package."""


class ToricGWError(Exception):
    """Base class for all errors raised by :mod:`toricgw`."""


class CenterNotInFan(ToricGWError):
    pass


class NonSmoothInput(ToricGWError):
    pass


class NonCompleteInput(ToricGWError):
    pass


class NotAWall(ToricGWError):
    pass


class BasisModelMismatch(ToricGWError, TypeError):
    """Classes from different models (or the wrong model) were combined."""


class RayPermutationFailure(ToricGWError):
    """A lattice map failed to carry the ray set of one fan onto another."""


class NonVdimZero(ToricGWError):
    """A reduction was requested for a query of nonzero virtual dimension."""


class ParseError(ToricGWError, ValueError):
    """Malformed class spec or table line. ``column`` is 1-based."""

    def __init__(self, message, text="", column=None):
        self.text = text
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}" + (f": {text!r}" if text else ""))


class HypothesisWarning(UserWarning):
    """A coefficient map was applied outside the hypotheses that justify it."""
