"""Hypothesis-checked smoothness and dimension reports for moduli of
semistable rank-2 torsion-free sheaves.

A report is never "smooth" on numerics alone: stability and the
normal-bundle vanishing H1(C, N_{C/X}) = 0 are always assertions, and each
ledger entry records whether it was verified numerically, asserted by the
user, or failed.  The dimension value

    1 - c1(X)c2(X)/6 + c1(X)Delta(F)/2,   Delta(F) = 4c2(F) - c1(F)^2,

is exact and twist-invariant; a non-integral or negative value is surfaced,
never rounded or clamped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .rational import Rat, as_rat, rat_str
from .sheaf import Rank2Sheaf
from .chow import NumericalThreefold
from .vanish import (
    Context,
    F_EXPR,
    FSTAR_EXPR,
    FactSet,
    Group,
    infer,
    premise_det_big_nef,
    premise_det_effective,
    premise_h1_O_zero,
)

VERIFIED = "verified"
ASSERTED = "asserted"
FAILED = "failed"


@dataclass(slots=True)
class HypothesisEntry:
    hypothesis: str
    status: str
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAILED

    def to_json_obj(self) -> dict:
        return {"hypothesis": self.hypothesis, "status": self.status, "note": self.note}


@dataclass(slots=True)
class ModuliReport:
    """Per-theorem verdict: smooth is True, or None when not established."""

    theorem: str
    smooth: bool | None
    dimension: Rat | None
    integrality_ok: bool | None
    ledger: list[HypothesisEntry] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    conclusion: str | None = None

    @property
    def established(self) -> bool:
        return self.smooth is True

    def to_json_obj(self) -> dict:
        return {
            "theorem": self.theorem,
            "smooth": True if self.smooth else "not-established",
            "dimension": None if self.dimension is None else rat_str(self.dimension),
            "integrality_ok": self.integrality_ok,
            "ledger": [e.to_json_obj() for e in self.ledger],
            "warnings": list(self.warnings),
            "notes": list(self.notes),
            "conclusion": self.conclusion,
        }


def moduli_dimension(X: NumericalThreefold, F: Rank2Sheaf) -> Rat:
    """1 - c1(X)c2(X)/6 + c1(X)Delta(F)/2 in exact rationals."""
    return as_rat(
        1 - Fraction(X.a) * Fraction(X.b) / 6 + Fraction(F.delta_pair()) / 2
    )


def _dimension_block(X: NumericalThreefold, F: Rank2Sheaf) -> tuple[Rat, bool, list[str]]:
    dim = moduli_dimension(X, F)
    warnings = []
    if dim < 0:
        warnings.append(
            f"dimension {rat_str(dim)} is negative: the hypotheses cannot all hold"
        )
    integral = isinstance(dim, int)
    if not integral:
        warnings.append(f"dimension {rat_str(dim)} is not an integer: inconsistent data")
    return dim, integral, warnings


def _entry_assert(ctx: Context, aid: str, hypothesis: str) -> HypothesisEntry:
    if ctx.has(aid):
        return HypothesisEntry(hypothesis, ASSERTED)
    return HypothesisEntry(hypothesis, FAILED, f"assumption {aid!r} not supplied")


def _fact_note(facts: FactSet, group: Group) -> str | None:
    fact = facts.get(group)
    if fact is None:
        return None
    rules = sorted({d.rule for d in fact.derivations})
    return f"{group} = 0 via {', '.join(rules)}"


def _finalize(report: ModuliReport, ctx: Context, with_dimension: bool) -> ModuliReport:
    if all(e.ok for e in report.ledger):
        report.smooth = True
        if with_dimension and ctx.sheaf is not None:
            dim, integral, warns = _dimension_block(ctx.X, ctx.sheaf)
            report.dimension = dim
            report.integrality_ok = integral
            report.warnings.extend(warns)
    return report


def fano_moduli_report(ctx: Context) -> ModuliReport:
    """Smoothness at a stable locally free sheaf with a section on a Fano.

    The H2 vanishings the theorem needs are re-derived through the engine
    (the ample anticanonical class makes det|_C non-special) and recorded as
    notes; the ledger lists the theorem's own hypotheses.
    """
    report = ModuliReport("fano", None, None, None)
    if ctx.sheaf is None:
        report.warnings.append("no sheaf data supplied")
        return report
    a = ctx.X.a
    report.ledger.append(
        HypothesisEntry(
            "X is Fano (a > 0)",
            VERIFIED if a > 0 else FAILED,
            f"c1(X) = {a}h",
        )
    )
    report.ledger.append(_entry_assert(ctx, "stable", "F is stable"))
    report.ledger.append(
        HypothesisEntry(
            "F is locally free (c3 = 0)",
            VERIFIED if ctx.sheaf.locally_free else FAILED,
            f"c3 = {rat_str(ctx.sheaf.c3)}",
        )
    )
    report.ledger.append(_entry_assert(ctx, "section", "section with curve zero scheme"))
    report.ledger.append(
        _entry_assert(ctx, "h1-IC-detomega-zero", "H1(I_C tensor det tensor omega) = 0")
    )
    report.ledger.append(_entry_assert(ctx, "normal-h1-zero", "H1(C, N_{C/X}) = 0"))

    if all(e.ok for e in report.ledger):
        facts = infer(ctx)
        for group in (Group(2, F_EXPR), Group(2, FSTAR_EXPR)):
            note = _fact_note(facts, group)
            if note:
                report.notes.append(note)
    return _finalize(report, ctx, with_dimension=True)


def calabi_yau_moduli_report(ctx: Context) -> ModuliReport:
    """Dimension-zero smoothness on a canonically trivial threefold."""
    report = ModuliReport("cy", None, None, None)
    if ctx.sheaf is None:
        report.warnings.append("no sheaf data supplied")
        return report
    a = ctx.X.a
    report.ledger.append(
        HypothesisEntry(
            "X is Calabi-Yau (a = 0)",
            VERIFIED if a == 0 else FAILED,
            f"c1(X) = {a}h",
        )
    )
    h1o_routes = premise_h1_O_zero(ctx)
    if not h1o_routes:
        report.ledger.append(
            HypothesisEntry("H1(X, O_X) = 0", FAILED, "not asserted and not derivable")
        )
    else:
        h1o = h1o_routes[0]
        status = ASSERTED if h1o.via == "asserted" else VERIFIED
        report.ledger.append(HypothesisEntry("H1(X, O_X) = 0", status, h1o.via))
    report.ledger.append(_entry_assert(ctx, "stable", "F is stable"))
    report.ledger.append(
        HypothesisEntry(
            "F is locally free (c3 = 0)",
            VERIFIED if ctx.sheaf.locally_free else FAILED,
            f"c3 = {rat_str(ctx.sheaf.c3)}",
        )
    )
    report.ledger.append(_entry_assert(ctx, "section", "section with curve zero scheme"))
    report.ledger.append(_entry_assert(ctx, "h1-IC-det-zero", "H1(I_C tensor det) = 0"))
    report.ledger.append(_entry_assert(ctx, "normal-h1-zero", "H1(C, N_{C/X}) = 0"))

    if all(e.ok for e in report.ledger):
        report.smooth = True
        report.dimension = 0
        report.integrality_ok = True
        general = moduli_dimension(ctx.X, ctx.sheaf)
        report.notes.append(
            f"tension: the general reflexive dimension formula gives {rat_str(general)} "
            "on the same data; this statement fixes dimension 0 (both reported, not adjudicated)"
        )
    return report


def _five_conditions(ctx: Context, facts: FactSet) -> list[HypothesisEntry]:
    """The shared obstruction-vanishing conditions for reflexive moduli."""
    entries: list[HypothesisEntry] = []

    for label, group, aid in (
        ("H2(X, F) = 0", Group(2, F_EXPR), "h2-F-zero"),
        ("H2(X, F*) = 0", Group(2, FSTAR_EXPR), "h2-Fstar-zero"),
    ):
        fact = facts.get(group)
        if fact is not None and facts.is_zero(group):
            rules = sorted({d.rule for d in fact.derivations})
            if rules == ["assertion"]:
                entries.append(HypothesisEntry(label, ASSERTED))
            else:
                entries.append(HypothesisEntry(label, VERIFIED, f"via {', '.join(rules)}"))
        elif ctx.has(aid):
            entries.append(HypothesisEntry(label, ASSERTED))
        else:
            entries.append(HypothesisEntry(label, FAILED, "not derived and not asserted"))

    d = ctx.d
    a, k = ctx.X.a, ctx.k
    cond3 = HypothesisEntry("H0(C, det tensor omega on C) = 0", FAILED, "")
    if d is not None and as_rat((k - a) * Fraction(d)) < 0:
        cond3 = HypothesisEntry(
            "H0(C, det tensor omega on C) = 0",
            VERIFIED,
            f"degree (k-a)d = {rat_str(as_rat((k - a) * Fraction(d)))} < 0 (integral components)",
        )
    elif ctx.has("h0-detomega-curve-zero"):
        cond3 = HypothesisEntry("H0(C, det tensor omega on C) = 0", ASSERTED)
    else:
        cond3.note = "degree test failed and not asserted"
    entries.append(cond3)

    cond4 = HypothesisEntry("H0(C, omega on C) = 0", FAILED, "")
    if d is not None and a > 0:
        cond4 = HypothesisEntry(
            "H0(C, omega on C) = 0",
            VERIFIED,
            f"degree -a*d = {rat_str(as_rat(-a * Fraction(d)))} < 0",
        )
    elif ctx.has("h0-omega-curve-zero"):
        cond4 = HypothesisEntry("H0(C, omega on C) = 0", ASSERTED)
    elif cond3.ok and premise_det_effective(ctx):
        cond4 = HypothesisEntry(
            "H0(C, omega on C) = 0",
            VERIFIED,
            "effective determinant: condition on det tensor omega implies this one",
        )
    else:
        cond4.note = "degree test needs a > 0; not asserted"
    entries.append(cond4)

    entries.append(_entry_assert(ctx, "normal-h1-zero", "H1(C, N_{C/X}) = 0"))
    return entries


def ext2_vanishing_report(ctx: Context) -> ModuliReport:
    """Ext^2(F, F) = 0 from the five obstruction conditions.

    This proposition alone does not establish smoothness; the conclusion
    field records the Ext vanishing when every condition holds.
    """
    report = ModuliReport("ext2-only", None, None, None)
    if ctx.sheaf is None:
        report.warnings.append("no sheaf data supplied")
        return report
    report.ledger.append(_entry_assert(ctx, "section", "section with curve zero scheme"))
    facts = infer(ctx)
    report.ledger.extend(_five_conditions(ctx, facts))
    if all(e.ok for e in report.ledger):
        report.conclusion = "Ext^2(F, F) = 0"
    return report


def reflexive_moduli_report(ctx: Context) -> ModuliReport:
    """Smoothness and dimension for stable reflexive F (c3 >= 0 allowed).

    Needs either an effective anticanonical class or the asserted
    twist-jump condition, a section, and the five obstruction conditions.
    """
    report = ModuliReport("big", None, None, None)
    if ctx.sheaf is None:
        report.warnings.append("no sheaf data supplied")
        return report
    report.ledger.append(_entry_assert(ctx, "stable", "F is stable"))

    a = ctx.X.a
    if a > 0:
        omega_entry = HypothesisEntry(
            "omega* effective or twist-jump", VERIFIED, f"a = {a} > 0"
        )
    elif a == 0:
        omega_entry = HypothesisEntry(
            "omega* effective or twist-jump",
            ASSERTED,
            "omega is trivial (a = 0); effectivity of O recorded as asserted, see notes",
        )
        report.notes.append(
            "a = 0: omega* = O is formally effective, but the dimension here conflicts "
            "with the dimension-zero statement on overlapping hypotheses"
        )
    elif ctx.has("twist-jump"):
        omega_entry = HypothesisEntry("omega* effective or twist-jump", ASSERTED, "twist-jump")
    else:
        omega_entry = HypothesisEntry(
            "omega* effective or twist-jump",
            FAILED,
            "a < 0 and twist-jump not asserted",
        )
    report.ledger.append(omega_entry)
    report.ledger.append(_entry_assert(ctx, "section", "section with curve zero scheme"))
    facts = infer(ctx)
    report.ledger.extend(_five_conditions(ctx, facts))
    return _finalize(report, ctx, with_dimension=True)


def fano_rational_curve_report(ctx: Context) -> ModuliReport:
    """Smoothness for stable reflexive F with big-nef determinant whose
    section vanishes on a rational curve on a Fano threefold."""
    report = ModuliReport("fanocor", None, None, None)
    if ctx.sheaf is None:
        report.warnings.append("no sheaf data supplied")
        return report
    a = ctx.X.a
    report.ledger.append(
        HypothesisEntry("X is Fano (a > 0)", VERIFIED if a > 0 else FAILED, f"c1(X) = {a}h")
    )
    report.ledger.append(_entry_assert(ctx, "stable", "F is stable"))

    bignef_routes = premise_det_big_nef(ctx)
    if not bignef_routes:
        report.ledger.append(
            HypothesisEntry(
                "det(F) big and nef",
                FAILED,
                f"k = {ctx.k} fails the rank-one test and no derivation applies",
            )
        )
    elif bignef_routes[0].via == "asserted":
        report.ledger.append(HypothesisEntry("det(F) big and nef", ASSERTED))
    else:
        bignef = bignef_routes[0]
        note = bignef.label if bignef.kind == "check" else bignef.via
        report.ledger.append(HypothesisEntry("det(F) big and nef", VERIFIED, note))
    report.ledger.append(_entry_assert(ctx, "section", "section with curve zero scheme"))
    report.ledger.append(_entry_assert(ctx, "rational", "the zero curve is rational"))
    report.ledger.append(_entry_assert(ctx, "normal-h1-zero", "H1(C, N_{C/X}) = 0"))

    if all(e.ok for e in report.ledger):
        facts = infer(ctx)
        for group in (Group(2, F_EXPR), Group(2, FSTAR_EXPR)):
            note = _fact_note(facts, group)
            if note:
                report.notes.append(note)
    return _finalize(report, ctx, with_dimension=True)


def all_reports(ctx: Context) -> list[ModuliReport]:
    """Every report in canonical order: fano, cy, big, fanocor, ext2-only."""
    return [
        fano_moduli_report(ctx),
        calabi_yau_moduli_report(ctx),
        reflexive_moduli_report(ctx),
        fano_rational_curve_report(ctx),
        ext2_vanishing_report(ctx),
    ]
