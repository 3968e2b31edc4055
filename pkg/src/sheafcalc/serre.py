"""The numerical Serre correspondence between curves and rank-2 sheaves.

A sheaf with a section vanishing on a curve C determines, and is numerically
determined by, the curve data (degree d, arithmetic genus pa) together with
the determinant coefficient k:

    c3(F) = 2*pa - 2 + (a - k)*d,    S = c2(F)*h = d.

Only this numerical shadow is modeled; the section, the pairing on the
curve, and the divisor of length c3 are not represented.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chow import NumericalThreefold
from .errors import InconsistentDataError, InvalidInputError
from .rational import Rat, as_rat
from .sheaf import Rank2Sheaf


@dataclass(frozen=True, slots=True)
class CurveData:
    """Degree, arithmetic genus, and asserted geometric flags of a curve.

    The flags are user assertions (they have no numerical test); setting
    ``rational_curve`` forces pa = 0 and ``is_line`` forces d = 1, pa = 0.
    """

    d: Rat
    pa: int
    connected: bool = False
    rational_curve: bool = False
    is_line: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", as_rat(self.d))
        if self.d <= 0:
            raise InvalidInputError(f"curve degree must be positive, got {self.d}")
        if not isinstance(self.pa, int) or isinstance(self.pa, bool):
            raise InvalidInputError(f"arithmetic genus must be an integer, got {self.pa!r}")
        if self.rational_curve and self.pa != 0:
            raise InconsistentDataError(
                f"a rational curve has pa = 0, got pa = {self.pa}"
            )
        if self.is_line and (self.d != 1 or self.pa != 0):
            raise InconsistentDataError(
                f"a line has d = 1 and pa = 0, got d = {self.d}, pa = {self.pa}"
            )


def c3_from_curve(X: NumericalThreefold, k: int, C: CurveData) -> Rat:
    """c3 of the sheaf attached to C with det = O(k); may be negative."""
    return as_rat(2 * C.pa - 2 + (X.a - k) * Fraction(C.d))


def sheaf_from_curve(X: NumericalThreefold, k: int, C: CurveData) -> Rank2Sheaf:
    """The rank-2 reflexive sheaf attached to (C, O(k)).

    S equals the degree of C; the sheaf is locally free exactly when c3 = 0
    (the subcanonical case).  Raises :class:`NoSuchSheafError` when the c3
    formula comes out negative, since no reflexive sheaf realizes it.
    """
    return Rank2Sheaf(X=X, k=k, S=C.d, c3=c3_from_curve(X, k, C))


@dataclass(frozen=True, slots=True)
class GenusResult:
    pa: Rat
    warning: str | None = None

    @property
    def consistent(self) -> bool:
        return self.warning is None


def genus_from_c3(X: NumericalThreefold, k: int, d: Rat, c3: Rat) -> GenusResult:
    """Invert the c3 formula: pa = (c3 - (a-k)*d + 2) / 2.

    The result carries a warning when it is not a non-negative integer,
    meaning no curve with these invariants exists under the correspondence.
    """
    d = as_rat(d)
    if d <= 0:
        raise InvalidInputError(f"curve degree must be positive, got {d}")
    pa = as_rat((Fraction(c3) - (X.a - k) * Fraction(d) + 2) / 2)
    warning = None
    if not isinstance(pa, int):
        warning = f"pa = {pa} is not an integer"
    elif pa < 0:
        warning = f"pa = {pa} is negative"
    return GenusResult(pa=pa, warning=warning)
