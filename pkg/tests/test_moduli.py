"""Moduli smoothness reports and the dimension formula."""

from fractions import Fraction

import pytest

from sheafcalc import (
    CurveData,
    Rank2Sheaf,
    all_reports,
    calabi_yau_moduli_report,
    ext2_vanishing_report,
    fano_moduli_report,
    fano_rational_curve_report,
    hypersurface,
    make_context,
    moduli_dimension,
    reflexive_moduli_report,
)


def expansion_oracle(X, F):
    # independent term-by-term expansion of 1 - ab/6 + (4aS - a k^2 N)/2
    a, b, N = Fraction(X.a), Fraction(X.b), Fraction(X.N)
    return 1 - a * b / 6 + (4 * a * Fraction(F.S) - a * F.k * F.k * N) / 2


@pytest.mark.parametrize(
    "r,k,S,expected",
    [(3, 1, 2, 2), (5, 0, 6, 1), (1, 0, 1, 5)],
)
def test_moduli_dimension_spots(r, k, S, expected):
    X = hypersurface(r)
    F = Rank2Sheaf(X=X, k=k, S=S, c3=0)
    assert moduli_dimension(X, F) == expected
    assert moduli_dimension(X, F) == expansion_oracle(X, F)


def test_moduli_dimension_twist_invariant():
    X = hypersurface(3)
    F = Rank2Sheaf(X=X, k=1, S=4, c3=2)
    for t in range(-5, 6):
        assert moduli_dimension(X, F.twist(t)) == moduli_dimension(X, F)


FANO_ASSERTIONS = ("stable", "section", "rational", "normal-h1-zero", "h1-IC-detomega-zero")


def conic_ctx(assume=FANO_ASSERTIONS):
    return make_context(hypersurface(3), det=1, curve=CurveData(d=2, pa=0), assume=assume)


def test_fano_report_success():
    rep = fano_moduli_report(conic_ctx())
    assert rep.established and rep.dimension == 2 and rep.integrality_ok
    assert all(e.ok for e in rep.ledger)
    statuses = {e.hypothesis: e.status for e in rep.ledger}
    assert statuses["X is Fano (a > 0)"] == "verified"
    assert statuses["F is stable"] == "asserted"
    # the two H2 vanishings are re-derived and noted
    assert any("H^2(F)" in n for n in rep.notes)
    assert any("H^2(F*)" in n for n in rep.notes)


def test_fano_report_fails_on_cy():
    ctx = make_context(hypersurface(5), det=0, curve=CurveData(d=3, pa=1),
                       assume=FANO_ASSERTIONS[:2])
    rep = fano_moduli_report(ctx)
    assert not rep.established and rep.dimension is None
    failed = [e for e in rep.ledger if not e.ok]
    assert any("Fano" in e.hypothesis for e in failed)


def test_fano_report_fails_on_reflexive():
    ctx = make_context(hypersurface(3), det=1, curve=CurveData(d=3, pa=1),
                       assume=("stable", "section", "normal-h1-zero",
                               "h1-IC-detomega-zero"))
    assert ctx.sheaf.c3 == 3
    rep = fano_moduli_report(ctx)
    assert not rep.established
    assert any("locally free" in e.hypothesis for e in rep.ledger if not e.ok)


def test_cy_report_success_and_tension_note():
    ctx = make_context(hypersurface(5), det=0, curve=CurveData(d=3, pa=1),
                       assume=("stable", "section", "h1-IC-det-zero", "normal-h1-zero"))
    rep = calabi_yau_moduli_report(ctx)
    assert rep.established and rep.dimension == 0
    assert any("tension" in note for note in rep.notes)
    # ledger is complete: every hypothesis appears exactly once
    names = [e.hypothesis for e in rep.ledger]
    assert len(names) == len(set(names)) == 7


def test_cy_report_fails_off_cy():
    ctx = conic_ctx()
    rep = calabi_yau_moduli_report(ctx)
    assert not rep.established


def test_ext2_report_degree_checks():
    ctx = make_context(hypersurface(3), det=1, curve=CurveData(d=2, pa=0),
                       assume=("section", "rational", "normal-h1-zero"))
    rep = ext2_vanishing_report(ctx)
    assert rep.conclusion == "Ext^2(F, F) = 0"
    statuses = {e.hypothesis: e.status for e in rep.ledger}
    assert statuses["H0(C, det tensor omega on C) = 0"] == "verified"
    assert statuses["H0(C, omega on C) = 0"] == "verified"
    assert rep.smooth is None  # obstruction only, no smoothness claim


def test_ext2_report_cy_condition4_not_derivable():
    ctx = make_context(hypersurface(5), det=0, curve=CurveData(d=3, pa=1),
                       assume=("section", "normal-h1-zero", "h2-F-zero", "h2-Fstar-zero"))
    rep = ext2_vanishing_report(ctx)
    assert rep.conclusion is None
    failing = {e.hypothesis for e in rep.ledger if not e.ok}
    assert "H0(C, det tensor omega on C) = 0" in failing or "H0(C, omega on C) = 0" in failing


def test_reflexive_report_success():
    # reflexive path: c3 = 3 > 0, H2(F) derived by degree, H2(F*) asserted
    ctx = make_context(
        hypersurface(3), det=1, curve=CurveData(d=3, pa=1),
        assume=("stable", "section", "normal-h1-zero", "h2-Fstar-zero"),
    )
    rep = reflexive_moduli_report(ctx)
    assert rep.established and rep.dimension == 6
    statuses = {e.hypothesis: e.status for e in rep.ledger}
    assert statuses["H2(X, F) = 0"] == "verified"
    assert statuses["H2(X, F*) = 0"] == "asserted"
    assert statuses["omega* effective or twist-jump"] == "verified"


def test_reflexive_report_matches_fano_dimension_when_locally_free():
    ctx = conic_ctx()
    fano = fano_moduli_report(ctx)
    big = reflexive_moduli_report(ctx)
    assert big.established and fano.established
    assert big.dimension == fano.dimension == 2


def test_reflexive_report_needs_omega_condition():
    X = hypersurface(7)  # a = -2: general type, omega* not effective
    curve = CurveData(d=3, pa=6)  # c3 = 12 - 2 - 9 = 1
    base = ("stable", "section", "normal-h1-zero",
            "h2-F-zero", "h2-Fstar-zero", "h0-omega-curve-zero")
    rep = reflexive_moduli_report(make_context(X, det=1, curve=curve, assume=base))
    assert not rep.established
    assert any("omega" in e.hypothesis and not e.ok for e in rep.ledger)
    # asserting the twist-jump alternative unblocks it
    rep2 = reflexive_moduli_report(
        make_context(X, det=1, curve=curve, assume=base + ("twist-jump",))
    )
    assert all(e.ok for e in rep2.ledger)


def test_fano_rational_curve_report():
    ctx = make_context(hypersurface(3), det=1, curve=CurveData(d=2, pa=0),
                       assume=("stable", "section", "rational", "normal-h1-zero"))
    rep = fano_rational_curve_report(ctx)
    assert rep.established and rep.dimension == 2
    statuses = {e.hypothesis: e.status for e in rep.ledger}
    assert statuses["det(F) big and nef"] == "verified"


def test_fano_rational_curve_k0_picard_route():
    # k = 0 fails the direct test; stability plus Pic = Z derives big-nef
    base = ("stable", "section", "rational", "normal-h1-zero")
    X = hypersurface(2)
    curve = CurveData(d=2, pa=0)  # c3 = -2 + 3*2 = 4
    rep = fano_rational_curve_report(make_context(X, det=0, curve=curve, assume=base))
    assert not rep.established
    rep2 = fano_rational_curve_report(
        make_context(X, det=0, curve=curve, assume=base + ("picard-rank-one",))
    )
    assert rep2.established
    bignef = [e for e in rep2.ledger if e.hypothesis == "det(F) big and nef"][0]
    assert bignef.status == "verified" and "stability-big-nef" in bignef.note


def test_fano_rational_fails_on_positive_genus():
    ctx = make_context(hypersurface(3), det=1, curve=CurveData(d=3, pa=1),
                       assume=("stable", "section", "normal-h1-zero"))
    rep = fano_rational_curve_report(ctx)
    assert not rep.established
    assert any("rational" in e.hypothesis and not e.ok for e in rep.ledger)


def test_negative_dimension_warning():
    # r = 1, k = 2, S = 1: dimension 1 - 4 + (16 - 16)/2 ... gives -3 + 0 = -3
    X = hypersurface(1)
    ctx = make_context(X, det=2, curve=CurveData(d=1, pa=0),
                       assume=("stable", "section", "rational", "normal-h1-zero"))
    rep = fano_rational_curve_report(ctx)
    assert rep.established and rep.dimension == -3
    assert any("negative" in w for w in rep.warnings)


def test_dimension_integrality_across_hypersurfaces():
    for r in range(1, 6):
        X = hypersurface(r)
        for k in range(-4, 5):
            for d in range(1, 8):
                F = Rank2Sheaf(X=X, k=k, S=d, c3=0)
                assert isinstance(moduli_dimension(X, F), int)


def test_all_reports_order_and_json():
    reports = all_reports(conic_ctx())
    assert [rep.theorem for rep in reports] == ["fano", "cy", "big", "fanocor", "ext2-only"]
    for rep in reports:
        obj = rep.to_json_obj()
        assert obj["smooth"] in (True, "not-established")
        assert set(obj) == {
            "theorem", "smooth", "dimension", "integrality_ok",
            "ledger", "warnings", "notes", "conclusion",
        }
