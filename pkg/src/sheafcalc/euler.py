"""Euler characteristics by Riemann-Roch and by closed forms.

The two routes are independent: :func:`chi_rr` expands the general
threefold Riemann-Roch formula in rank-one numerics, while
:func:`chi_closed_form` and :func:`chi_dual_formula` evaluate the
hypersurface closed forms directly.  Their exact agreement across sweeps is
the package's main verification surface, so neither is privileged.

Also here: the five-group Ext bookkeeping for a reflexive sheaf, where the
local-to-global sequence pins ext^0 and ext^3 and bounds ext^1, ext^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chow import NumericalThreefold, binom_poly
from .errors import InvalidInputError
from .rational import Rat, as_rat
from .sheaf import Rank2Sheaf


@dataclass(frozen=True, slots=True)
class ChernInput:
    """Chern data (rank, k, S, c3) fed to the Riemann-Roch evaluation.

    Rank is 1 or 2; for rank 1 the sheaf is the line bundle O(k*h), so S and
    c3 must vanish.
    """

    rank: int
    k: int
    S: Rat
    c3: Rat
    X: NumericalThreefold

    def __post_init__(self) -> None:
        if self.rank not in (1, 2):
            raise InvalidInputError(f"rank must be 1 or 2, got {self.rank!r}")
        object.__setattr__(self, "S", as_rat(self.S))
        object.__setattr__(self, "c3", as_rat(self.c3))
        if self.rank == 1 and (self.S != 0 or self.c3 != 0):
            raise InvalidInputError("rank-1 input must have S = 0 and c3 = 0")

    @classmethod
    def from_sheaf(cls, F: Rank2Sheaf) -> "ChernInput":
        return cls(rank=2, k=F.k, S=F.S, c3=F.c3, X=F.X)

    @classmethod
    def line_bundle(cls, X: NumericalThreefold, m: int) -> "ChernInput":
        return cls(rank=1, k=m, S=0, c3=0, X=X)


def chi_rr(c: ChernInput) -> Rat:
    """chi(X, F) by Riemann-Roch, expanded in rank-one numerics.

    (1/6)k^3 N - (1/2)kS - (1/2)aS + (1/4)a k^2 N + (1/12)a^2 k N
    + (1/12)k b + (rank/24) a b + (1/2)c3.

    All eight terms share the denominator 24, so the value is assembled as
    an exact integer combination divided by 24.
    """
    N, a, b = c.X.N, c.X.a, c.X.b
    k, S, c3 = c.k, c.S, c.c3
    total = (
        4 * k**3 * N
        - 12 * k * S
        - 12 * a * S
        + 6 * a * k * k * N
        + 2 * a * a * k * N
        + 2 * k * b
        + c.rank * a * b
        + 12 * c3
    )
    if isinstance(total, int):
        return as_rat(Fraction(total, 24))
    return as_rat(Fraction(total) / 24)


def chi_closed_form(r: int, k: int, d: Rat, pa: Rat) -> Rat:
    """chi(X, F) for a degree-r hypersurface, det O(k), curve (d, pa).

    (1/12) r (k+5-r) (2k^2 + 5k - kr + 10 - 5r + r^2) + pa - 1 - k*d.
    """
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise InvalidInputError(f"hypersurface degree must be a positive integer, got {r!r}")
    head = Fraction(r * (k + 5 - r) * (2 * k * k + 5 * k - k * r + 10 - 5 * r + r * r), 12)
    return as_rat(head + Fraction(pa) - 1 - k * Fraction(d))


def chi_dual_formula(r: int, k: int, pa: Rat) -> Rat:
    """chi(X, F*) for a degree-r hypersurface with an ample determinant O(k).

    pa - binom_poly(r-1+k) + binom_poly(k-1) - binom_poly(r-1), with the
    polynomial binomial convention.  The formula is a formal identity in
    (r, k, pa), so it is exposed for every r >= 1; its intended domain
    (k >= 1) is the caller's context, not enforced here.
    """
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise InvalidInputError(f"hypersurface degree must be a positive integer, got {r!r}")
    return as_rat(
        Fraction(pa) - binom_poly(r - 1 + k) + binom_poly(k - 1) - binom_poly(r - 1)
    )


@dataclass(frozen=True, slots=True)
class ExtLedger:
    """Dimension bookkeeping for Ext^i(F, G) on a normal projective threefold.

    From h^i = h^i(Hom-sheaf) and e1 = h^0(Ext^1-sheaf):
    ext^0 = h0, ext^3 = h3, and the five-term exact sequence
    0 -> h1 -> ext^1 -> e1 -> h2 -> ext^2 -> 0 bounds ext^1 to
    [ext1_min, ext1_max] and ties ext^2 = ext^1 + ext2_offset.  No
    tie-breaking is invented: the sequence only bounds, so ranges are kept.
    """

    ext0: int
    ext3: int
    ext1_min: int
    ext1_max: int
    ext2_offset: int

    @property
    def determined(self) -> bool:
        return self.ext1_min == self.ext1_max

    def ext2(self, ext1: int) -> int:
        if not (self.ext1_min <= ext1 <= self.ext1_max):
            raise InvalidInputError(
                f"ext1 = {ext1} outside [{self.ext1_min}, {self.ext1_max}]"
            )
        return ext1 + self.ext2_offset

    def ext2_range(self) -> tuple[int, int]:
        return (self.ext1_min + self.ext2_offset, self.ext1_max + self.ext2_offset)


def ext_constraints(h0: int, h1: int, h2: int, h3: int, e1: int) -> ExtLedger:
    """Resolve the local-to-global Ext sequence into exact bounds.

    Exactness forces ext1 >= h1 (injectivity), ext1 <= h1 + e1 (the image in
    e1), and ext2 = ext1 - h1 - e1 + h2 >= 0, which raises the lower bound.
    The alternating sum h1 - ext1 + e1 - h2 + ext2 = 0 holds for every
    admissible ext1 by construction.
    """
    for name, v in (("h0", h0), ("h1", h1), ("h2", h2), ("h3", h3), ("e1", e1)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InvalidInputError(f"{name} must be a non-negative integer, got {v!r}")
    return ExtLedger(
        ext0=h0,
        ext3=h3,
        ext1_min=max(h1, h1 + e1 - h2),
        ext1_max=h1 + e1,
        ext2_offset=h2 - h1 - e1,
    )
