"""Numerical intersection theory for Picard-rank-one threefolds.

A threefold enters every formula only through three numbers: the top
self-intersection N = h^3 of the ample generator h, the coefficient a with
c1(X) = a*h, and the pairing b = c2(X)*h.  Divisor classes are integer
multiples of h; 2-classes are recorded through their pairing with h, so a
rational b never forces a non-integral class coefficient.

The canonical constructor is the smooth degree-r hypersurface in P^4, whose
tangent Chern classes are the truncation of (1+h)^5 / (1+r*h).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError
from .rational import Rat, as_rat


@dataclass(frozen=True, slots=True)
class NumericalThreefold:
    """Intersection numbers of a smooth projective threefold with Pic = Z*h.

    N is h^3 (a positive integer), a gives c1(X) = a*h, and b is the pairing
    c2(X)*h.  ``hypersurface_degree`` is set by :func:`hypersurface` and
    enables the deduction rules that hold only on hypersurfaces in P^4.
    """

    N: int
    a: int
    b: Rat
    label: str = ""
    hypersurface_degree: int | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.N, int) or isinstance(self.N, bool) or self.N < 1:
            raise InvalidInputError(f"h^3 must be a positive integer, got {self.N!r}")
        if not isinstance(self.a, int) or isinstance(self.a, bool):
            raise InvalidInputError(f"c1 coefficient must be an integer, got {self.a!r}")
        object.__setattr__(self, "b", as_rat(self.b))

    @property
    def is_hypersurface(self) -> bool:
        return self.hypersurface_degree is not None

    @property
    def c1_cubed(self) -> int:
        """c1(X)^3 = a^3 * N."""
        return self.a**3 * self.N

    @property
    def c1_c2(self) -> Rat:
        """c1(X) * c2(X) = a * b."""
        return as_rat(self.a * Fraction(self.b))


def hypersurface(r: int) -> NumericalThreefold:
    """Numerical data of a smooth degree-r hypersurface in P^4.

    N = r, c1 = (5-r)*h, and c2*h = r*(10-5r+r^2); the latter two are the
    degree-1 and degree-2 coefficients of (1+h)^5/(1+r*h) mod h^3, paired
    with h.
    """
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise InvalidInputError(f"hypersurface degree must be a positive integer, got {r!r}")
    return NumericalThreefold(
        N=r,
        a=5 - r,
        b=r * (10 - 5 * r + r * r),
        label=f"hypersurface r={r}",
        hypersurface_degree=r,
    )


def chi_structure_sheaf(X: NumericalThreefold) -> Rat:
    """chi(O_X) = c1(X)*c2(X) / 24."""
    return as_rat(Fraction(X.a) * Fraction(X.b) / 24)


def binom_poly(n: int, k: int = 4) -> int:
    """Binomial coefficient read as the degree-k polynomial n(n-1)...(n-k+1)/k!.

    Unlike the combinatorial convention, this is nonzero for n < 0; for
    example binom_poly(-1) = 1.  The product of k consecutive integers is
    always divisible by k!, so the result is an exact integer.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidInputError(f"binom_poly needs an integer, got {n!r}")
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InvalidInputError(f"binom_poly degree must be a non-negative integer, got {k!r}")
    prod = 1
    for i in range(k):
        prod *= n - i
    return prod // math.factorial(k)


def chi_line_bundle(r: int, m: int) -> int:
    """chi(O_X(m)) on a degree-r hypersurface in P^4.

    binom_poly(m+4) - binom_poly(m+4-r), from the restriction sequence on
    P^4.  Equals h^0 when m >= 0 and r <= 4.
    """
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise InvalidInputError(f"hypersurface degree must be a positive integer, got {r!r}")
    return binom_poly(m + 4) - binom_poly(m + 4 - r)


def h0_line_bundle(r: int, m: int) -> int:
    """h^0(X, O_X(m)) on a degree-r hypersurface in P^4 (exact, all m)."""
    if r < 1:
        raise InvalidInputError(f"hypersurface degree must be a positive integer, got {r!r}")
    if m < 0:
        return 0
    second = binom_poly(m + 4 - r) if m + 4 - r >= 0 else 0
    return binom_poly(m + 4) - second


def h3_line_bundle(r: int, m: int) -> int:
    """h^3(X, O_X(m)) on a degree-r hypersurface; Serre-dual to h^0."""
    return h0_line_bundle(r, r - 5 - m)
