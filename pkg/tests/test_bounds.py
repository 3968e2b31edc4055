"""Section bounds, twist criteria, and minimal-integer thresholds."""

from fractions import Fraction

import pytest

from sheafcalc import (
    CurveData,
    InvalidInputError,
    Rank2Sheaf,
    cy_genus_bound,
    hypersurface,
    p_threshold,
    quintic_h2_threshold,
    section_c3_bound,
    section_exists_rr,
    sheaf_from_curve,
    twist_derived_c3_bound,
    twisted_c3_bound,
)


def test_section_bound_quintic_trivial_det():
    X = hypersurface(5)
    F = Rank2Sheaf(X=X, k=0, S=3, c3=0)
    rep = section_c3_bound(X, F)
    # bound is S^2 - 3S = 0: holds with zero slack
    assert rep.holds and rep.rhs == 0 and rep.lhs == 0
    assert rep.comparison == "<="


def test_section_bound_fails_past_castelnuovo():
    X = hypersurface(5)
    F = Rank2Sheaf(X=X, k=0, S=3, c3=4)  # pa = 3 > (S-1)(S-2)/2 = 1
    assert not section_c3_bound(X, F).holds


def test_section_bound_castelnuovo_equivalence_sample():
    for r in (1, 3, 5):
        X = hypersurface(r)
        for k in (-1, 0, 2):
            for d in range(1, 12):
                for pa in range(0, 12):
                    if 2 * pa - 2 + (X.a - k) * d < 0:
                        continue
                    F = sheaf_from_curve(X, k, CurveData(d=d, pa=pa))
                    assert section_c3_bound(X, F).holds == (
                        pa <= Fraction((d - 1) * (d - 2), 2)
                    )


def test_section_exists_rr_quintic():
    X = hypersurface(5)
    F = Rank2Sheaf(X=X, k=0, S=5, c3=0)
    rep = section_exists_rr(X, F, n=10, t=1)
    assert rep.holds and rep.lhs == 21000 and rep.rhs == 600
    rep0 = section_exists_rr(X, F, n=0, t=1)
    assert not rep0.holds and rep0.lhs == 0 and rep0.rhs == 0


def test_section_exists_rr_p3():
    X = hypersurface(1)
    F = Rank2Sheaf(X=X, k=0, S=1, c3=0)
    rep = section_exists_rr(X, F, n=1, t=1)
    assert rep.holds and rep.lhs == 72 and rep.rhs == 12


def test_section_exists_rr_requires_trivial_determinant():
    X = hypersurface(5)
    F = Rank2Sheaf(X=X, k=1, S=5, c3=0)
    with pytest.raises(InvalidInputError):
        section_exists_rr(X, F, n=1)


def test_twisted_c3_bound_spots():
    assert twisted_c3_bound(hypersurface(5), 1, 5, 1) == 150
    assert twisted_c3_bound(hypersurface(3), 1, 2, 1) == 40


def test_twisted_c3_bound_degenerates_at_n_zero():
    for r in range(1, 11):
        X = hypersurface(r)
        for S in range(1, 41):
            assert twisted_c3_bound(X, 0, S) == Fraction(S) ** 2 - 3 * S + X.a * S


def test_twist_derived_variant_differs():
    # the printed coefficients (2n^2 d) are not the twist-derived ones (n^2 d)
    X = hypersurface(5)
    assert twisted_c3_bound(X, 1, 5) != twist_derived_c3_bound(X, 1, 5)
    assert twisted_c3_bound(X, 0, 5) == twist_derived_c3_bound(X, 0, 5)


@pytest.mark.parametrize("S,expected", [(19, 31), (20, 66), (25, 89), (1, 31)])
def test_quintic_threshold_values(S, expected):
    assert quintic_h2_threshold(S) == expected


def test_quintic_threshold_minimality_and_monotone():
    previous = None
    for S in range(20, 120):
        n = quintic_h2_threshold(S)
        radicand = 60 * S - 525
        assert n >= 4 * S - 27 and (2 * (n - 4 * S + 27)) ** 2 >= radicand
        assert (2 * (n - 1 - 4 * S + 27)) ** 2 < radicand or n - 1 < 4 * S - 27
        if previous is not None:
            assert n >= previous
        previous = n


def test_quintic_threshold_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        quintic_h2_threshold(0)


@pytest.mark.parametrize(
    "r,k,d,pa,expected",
    [(5, 0, 6, 4, 1), (5, 0, 1, 0, -2), (4, 1, 3, 1, 0)],
)
def test_p_threshold_spots(r, k, d, pa, expected):
    assert p_threshold(r, k, d, pa) == expected


def test_p_threshold_minimality():
    for r in (2, 4, 5):
        X = hypersurface(r)
        for k in (-1, 0, 1):
            for d in range(1, 9):
                for pa in range(0, 9):
                    c3 = 2 * pa - 2 + (X.a - k) * d
                    p = p_threshold(r, k, d, pa)
                    assert p * d >= c3
                    assert (p - 1) * d < c3


def test_cy_genus_bound():
    assert cy_genus_bound(6, 4).holds          # 4 <= 10
    boundary = cy_genus_bound(3, 1)
    assert boundary.holds and boundary.rhs == 1
    assert not cy_genus_bound(3, 2).holds
