"""Inequalities and minimal-integer thresholds for c3 and for sections.

Every ``n >= expression`` statement is realized by an exact integer solver
(integer-square comparisons instead of square roots), so thresholds are
reproducible bit for bit.  Hypotheses with no numerical test, such as
semistability or an asserted H^2 vanishing, are echoed in the report
context rather than silently dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .chow import NumericalThreefold
from .errors import InvalidInputError
from .rational import Rat, as_rat, rat_str
from .sheaf import Rank2Sheaf


@dataclass(slots=True)
class BoundReport:
    """Outcome of one inequality: holds iff ``lhs <comparison> rhs``."""

    name: str
    holds: bool
    lhs: Rat
    rhs: Rat
    comparison: str
    threshold: int | None = None
    context: dict[str, str] = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "lhs": rat_str(self.lhs),
            "rhs": rat_str(self.rhs),
            "comparison": self.comparison,
            "threshold": self.threshold,
            "context": dict(sorted(self.context.items())),
        }


def section_c3_bound(X: NumericalThreefold, F: Rank2Sheaf) -> BoundReport:
    """c3 <= S^2 - 3S + (a - k)S when a section vanishes on a curve.

    Presumes F has a section with curve zero scheme and that h^1 and h^2 of
    the inverse determinant vanish; both presumptions are echoed as context.
    """
    rhs = as_rat(Fraction(F.S) ** 2 - 3 * Fraction(F.S) + (X.a - F.k) * Fraction(F.S))
    return BoundReport(
        name="section-c3-bound",
        holds=F.c3 <= rhs,
        lhs=F.c3,
        rhs=rhs,
        comparison="<=",
        context={
            "assumed": "section with curve zero scheme; h1(det*) = h2(det*) = 0",
            "S": rat_str(F.S),
            "k": str(F.k),
        },
    )


def section_exists_rr(
    X: NumericalThreefold, F: Rank2Sheaf, n: int, t: int = 1
) -> BoundReport:
    """Riemann-Roch criterion for F(n*t) to have a section, with L = O(t*h).

    Requires trivial determinant (k = 0) and assumes H^2(F tensor L^n) = 0;
    the assumption is recorded, not checked.  Holds iff

        4n^3 d + 6n^2 a t^2 N + 2n a^2 t N + 2n t b
            > 12n t S + 6aS - ab - 6c3,      d = t^3 N.
    """
    if F.k != 0:
        raise InvalidInputError(
            f"section criterion requires c1(F) = 0, got k = {F.k}"
        )
    if not isinstance(t, int) or isinstance(t, bool) or t < 1:
        raise InvalidInputError(f"twist scale t must be a positive integer, got {t!r}")
    N, a, b = X.N, X.a, Fraction(X.b)
    S, c3 = Fraction(F.S), Fraction(F.c3)
    lhs = as_rat(
        4 * n**3 * t**3 * N
        + 6 * n * n * a * t * t * N
        + 2 * n * a * a * t * N
        + 2 * n * t * b
    )
    rhs = as_rat(12 * n * t * S + 6 * a * S - a * b - 6 * c3)
    return BoundReport(
        name="section-exists-rr",
        holds=lhs > rhs,
        lhs=lhs,
        rhs=rhs,
        comparison=">",
        context={
            "assumed": f"H2(F tensor L^{n}) = 0 (asserted)",
            "L": f"O({t}h)",
            "n": str(n),
        },
    )


def twisted_c3_bound(X: NumericalThreefold, n: int, S: Rat, t: int = 1) -> Rat:
    """The printed c3 bound after twisting by L^n, with L = O(t*h), k = 0:

        (S - 3 - 2n + 2n^2 d)(S + 2n^2 d) + aS + 2n^2 a t^2 N,   d = t^3 N.

    Implemented verbatim as printed.  An independent derivation (applying
    the section bound to the twisted sheaf) gives different coefficients;
    see :func:`twist_derived_c3_bound` for that variant.
    """
    if not isinstance(t, int) or isinstance(t, bool) or t < 1:
        raise InvalidInputError(f"twist scale t must be a positive integer, got {t!r}")
    d = t**3 * X.N
    S = Fraction(S)
    return as_rat(
        (S - 3 - 2 * n + 2 * n * n * d) * (S + 2 * n * n * d)
        + X.a * S
        + 2 * n * n * X.a * t * t * X.N
    )


def twist_derived_c3_bound(X: NumericalThreefold, n: int, S: Rat, t: int = 1) -> Rat:
    """Cross-check variant: the section bound applied to the twist of F.

    With k = 0 the twisted invariants are S' = S + n^2 t^2 N, k' = 2nt, and
    the bound reads S'^2 - 3S' + (a - k')S'.  Kept separate so reports can
    show both this and the verbatim bound.
    """
    if not isinstance(t, int) or isinstance(t, bool) or t < 1:
        raise InvalidInputError(f"twist scale t must be a positive integer, got {t!r}")
    Sp = Fraction(S) + n * n * t * t * X.N
    kp = 2 * n * t
    return as_rat(Sp * Sp - 3 * Sp + (X.a - kp) * Sp)


def quintic_h2_threshold(S: int) -> int:
    """Minimal n with H^2(F(n)) = 0 for a semistable reflexive sheaf with
    trivial determinant on a quintic hypersurface.

    For S <= 19 the threshold is the constant 31; for S >= 20 it is the
    minimal integer n with n >= 4S - 27 and (2(n - 4S + 27))^2 >= 60S - 525,
    the exact-integer form of n >= 4S - 27 + sqrt(60S - 525)/2.
    """
    if not isinstance(S, int) or isinstance(S, bool) or S < 1:
        raise InvalidInputError(f"S must be a positive integer, got {S!r}")
    if S <= 19:
        return 31
    radicand = 60 * S - 525
    x = math.isqrt(radicand // 4)
    while 4 * x * x < radicand:
        x += 1
    return 4 * S - 27 + x


def p_threshold(r: int, k: int, d: Rat, pa: int) -> int:
    """Minimal integer p with p*d >= c3, i.e. c1(O(p))*c2(F) >= c3(F).

    Here c3 = 2pa - 2 - (r-5+k)*d for a curve of degree d and genus pa on a
    degree-r hypersurface with det O(k).  At the threshold, strict
    inequality gives h^2(F(p) tensor omega) = 0 and equality gives <= 1.
    """
    d = as_rat(d)
    if d <= 0:
        raise InvalidInputError(f"curve degree must be positive, got {d}")
    c3 = Fraction(2 * pa - 2) - (r - 5 + k) * Fraction(d)
    return math.ceil(c3 / Fraction(d))


def cy_genus_bound(S: Rat, pa: int) -> BoundReport:
    """pa <= (S^2 - 3S + 2)/2 for a curve with a trivial-determinant sheaf
    on a canonically trivial threefold.

    Equivalent to 2pa - 2 <= S^2 - 3S; context records the assumed a = 0,
    k = 0, and h^1(O) = h^2(O) = 0.
    """
    S = Fraction(as_rat(S))
    rhs = as_rat((S * S - 3 * S + 2) / 2)
    return BoundReport(
        name="cy-genus-bound",
        holds=pa <= rhs,
        lhs=pa,
        rhs=rhs,
        comparison="<=",
        context={"assumed": "a = 0, k = 0, h1(O) = h2(O) = 0", "S": rat_str(as_rat(S))},
    )
