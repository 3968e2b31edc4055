"""Numerical Chern data of rank-2 reflexive sheaves.

A sheaf is the tuple (k, S, c3) over a :class:`NumericalThreefold`: the
determinant coefficient with c1(F) = k*h, the pairing S = c2(F)*h, and c3.
For reflexive rank-2 sheaves c3 >= 0, with equality exactly in the locally
free case; construction enforces this.  c3 is invariant under twisting and
dualizing (it is a local invariant of the singular points), which the twist
and dual operations hard-code.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chow import NumericalThreefold
from .errors import NoSuchSheafError
from .rational import Rat, as_rat


@dataclass(frozen=True, slots=True)
class Rank2Sheaf:
    X: NumericalThreefold
    k: int
    S: Rat
    c3: Rat = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "S", as_rat(self.S))
        object.__setattr__(self, "c3", as_rat(self.c3))
        if self.c3 < 0:
            raise NoSuchSheafError(
                f"no rank-2 reflexive sheaf has c3 = {self.c3} < 0"
            )

    @property
    def reflexive(self) -> bool:
        return True

    @property
    def locally_free(self) -> bool:
        return self.c3 == 0

    def twist(self, t: int) -> "Rank2Sheaf":
        """F(t) = F tensor O(t*h): k -> k+2t, S -> S + t*k*N + t^2*N, c3 fixed."""
        N = self.X.N
        return Rank2Sheaf(
            X=self.X,
            k=self.k + 2 * t,
            S=as_rat(self.S + t * self.k * N + t * t * N),
            c3=self.c3,
        )

    def dual(self) -> "Rank2Sheaf":
        """F*: k -> -k, with S and c3 unchanged."""
        return Rank2Sheaf(X=self.X, k=-self.k, S=self.S, c3=self.c3)

    def canonical_parity(self) -> int | None:
        """The unique m with c1(F(m)) = c1(omega_X), if one exists.

        Requires -a - k even; the twist is m = (-a-k)/2.  Returns None when
        the parity is wrong (absence is a value, not an error).
        """
        target = -self.X.a - self.k
        if target % 2 != 0:
            return None
        return target // 2

    def delta_pair(self) -> Rat:
        """c1(X) paired with the discriminant 4*c2(F) - c1(F)^2."""
        a = self.X.a
        return as_rat(4 * a * self.S - a * self.k * self.k * self.X.N)

    # Derived pairings used throughout the Euler-characteristic formulas.
    @property
    def c1_c2(self) -> Rat:
        """c1(F) * c2(F) = k * S."""
        return as_rat(self.k * self.S)

    @property
    def c1X_c2(self) -> Rat:
        """c1(X) * c2(F) = a * S."""
        return as_rat(self.X.a * self.S)

    @property
    def c1_cubed(self) -> int:
        """c1(F)^3 = k^3 * N."""
        return self.k**3 * self.X.N
