"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: invalid input is 1, mathematically
inconsistent data is 2, and a failed internal cross-check is 3.
"""


class SheafCalcError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(SheafCalcError):
    """Malformed or out-of-domain input (bad range, unknown flag, r <= 0)."""


class InconsistentDataError(SheafCalcError):
    """Input that is well-formed but mathematically contradictory."""


class NoSuchSheafError(InconsistentDataError):
    """Numerical data that no rank-2 reflexive sheaf can realize (c3 < 0)."""


class InternalCheckError(SheafCalcError):
    """Two independent evaluation routes disagreed; this is a bug."""
