"""Exact rational scalars.

Every quantity in the package is an ``int`` or a ``fractions.Fraction``;
floats are rejected at the boundary so that no rounding can creep into the
1/24-type Riemann-Roch denominators.  Values with denominator 1 are
normalized back to plain ``int``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInputError

Rat = int | Fraction


def as_rat(value: object) -> Rat:
    """Normalize to ``int`` when integral; reject anything inexact."""
    if isinstance(value, bool):
        raise InvalidInputError("expected an exact rational, got a bool")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    raise InvalidInputError(
        f"expected an exact rational (int or Fraction), got {type(value).__name__}"
    )


def rat_str(value: Rat) -> str:
    """Render reduced as ``p/q``, or bare ``p`` for integers."""
    return str(as_rat(value))


def parse_rat(text: str) -> Rat:
    """Parse ``p`` or ``p/q`` into an exact rational."""
    try:
        return as_rat(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"cannot parse rational {text!r}") from exc
