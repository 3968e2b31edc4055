"""Self-verification sweeps: exact identities and randomized properties.

These suites back both ``sheafcalc selftest`` and the acceptance test
module.  Every equality is exact (tolerance zero); randomized suites use a
fixed seed so results are reproducible bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import (
    quintic_h2_threshold,
    section_c3_bound,
    twisted_c3_bound,
)
from .chow import chi_structure_sheaf, hypersurface
from .errors import InconsistentDataError, NoSuchSheafError
from .euler import ChernInput, chi_closed_form, chi_dual_formula, chi_rr
from .moduli import (
    calabi_yau_moduli_report,
    fano_moduli_report,
    fano_rational_curve_report,
    moduli_dimension,
)
from .rational import rat_str
from .serre import CurveData, sheaf_from_curve
from .sheaf import Rank2Sheaf
from .vanish import FSTAR_EXPR, Group, infer, make_context

_SEED = 20240831


@dataclass(slots=True)
class SuiteResult:
    name: str
    cases: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f"  [{self.failures[0]}]"
        return f"{self.name}: {verdict} ({self.cases} cases){extra}"


def _fail(result: SuiteResult, message: str, cap: int = 5) -> None:
    if len(result.failures) < cap:
        result.failures.append(message)
    else:
        result.failures.append("...")
        raise _TooManyFailures


class _TooManyFailures(Exception):
    pass


def _run(name: str, body) -> SuiteResult:
    result = SuiteResult(name=name, cases=0)
    try:
        body(result)
    except _TooManyFailures:
        pass
    return result


# -- truncated power-series oracle (independent of the constructor) ---------


def _series_mul(f: list[Fraction], g: list[Fraction], order: int = 3) -> list[Fraction]:
    return [
        sum((f[j] * g[i - j] for j in range(i + 1)), Fraction(0)) for i in range(order)
    ]


def _series_inv(f: list[Fraction], order: int = 3) -> list[Fraction]:
    assert f[0] == 1
    inv = [Fraction(1)] + [Fraction(0)] * (order - 1)
    for i in range(1, order):
        inv[i] = -sum(f[j] * inv[i - j] for j in range(1, i + 1))
    return inv


def tangent_series_oracle(r: int) -> list[Fraction]:
    """Coefficients of (1+h)^5 / (1+r*h) mod h^3 in exact rationals."""
    numerator = [Fraction(1), Fraction(5), Fraction(10)]
    return _series_mul(numerator, _series_inv([Fraction(1), Fraction(r), Fraction(0)]))


# -- identity sweeps ---------------------------------------------------------


def suite_rank1_riemann_roch() -> SuiteResult:
    """chi by Riemann-Roch equals the binomial line-bundle formula."""

    def body(result: SuiteResult) -> None:
        from .chow import chi_line_bundle

        for r in range(1, 11):
            X = hypersurface(r)
            for m in range(-10, 11):
                result.cases += 1
                lhs = chi_rr(ChernInput.line_bundle(X, m))
                rhs = chi_line_bundle(r, m)
                if lhs != rhs:
                    _fail(result, f"r={r} m={m}: {lhs} != {rhs}")

    return _run("rank1-riemann-roch", body)


def _curve_sweep():
    """The shared (r, k, d, pa) grid, yielding only points with c3 >= 0."""
    for r in range(1, 11):
        X = hypersurface(r)
        a = X.a
        for k in range(-5, 6):
            for d in range(1, 41):
                base = (a - k) * d - 2
                for pa in range(0, 61):
                    c3 = 2 * pa + base
                    if c3 >= 0:
                        yield X, r, k, d, pa, c3


def suite_closed_form_vs_rr() -> SuiteResult:
    """Hypersurface closed form agrees with Riemann-Roch on every sheaf."""

    def body(result: SuiteResult) -> None:
        for X, r, k, d, pa, _ in _curve_sweep():
            result.cases += 1
            F = sheaf_from_curve(X, k, CurveData(d=d, pa=pa))
            lhs = chi_closed_form(r, k, d, pa)
            rhs = chi_rr(ChernInput.from_sheaf(F))
            if lhs != rhs:
                _fail(result, f"r={r} k={k} d={d} pa={pa}: {lhs} != {rhs}")

    return _run("closed-form-vs-riemann-roch", body)


def suite_dual_formula() -> SuiteResult:
    """Dual closed form equals Riemann-Roch on the dual sheaf (k >= 1)."""

    def body(result: SuiteResult) -> None:
        if chi_dual_formula(4, 1, 1) != 0:
            _fail(result, "spot value (4,1,1) != 0")
        for pa in (0, 1, 7, 30):
            if chi_dual_formula(5, 1, pa) != pa - 6:
                _fail(result, f"spot value (5,1,{pa}) != pa-6")
        for X, r, k, d, pa, _ in _curve_sweep():
            if k < 1:
                continue
            result.cases += 1
            F = sheaf_from_curve(X, k, CurveData(d=d, pa=pa))
            lhs = chi_dual_formula(r, k, pa)
            rhs = chi_rr(ChernInput.from_sheaf(F.dual()))
            if lhs != rhs:
                _fail(result, f"r={r} k={k} d={d} pa={pa}: {lhs} != {rhs}")

    return _run("dual-formula-vs-riemann-roch", body)


def suite_canonical_chi_zero() -> SuiteResult:
    """k = -a and c3 = 0 force chi = 0."""

    def body(result: SuiteResult) -> None:
        for X, r, k, d, pa, c3 in _curve_sweep():
            if k != -X.a or c3 != 0:
                continue
            result.cases += 1
            F = sheaf_from_curve(X, k, CurveData(d=d, pa=pa))
            chi = chi_rr(ChernInput.from_sheaf(F))
            if chi != 0:
                _fail(result, f"r={r} k={k} d={d} pa={pa}: chi = {chi}")
        if result.cases == 0:
            _fail(result, "sweep contained no canonical-determinant points")

    return _run("canonical-determinant-chi-zero", body)


def suite_quintic_thresholds() -> SuiteResult:
    """Threshold values 19 -> 31, 20 -> 66, 25 -> 89, plus minimality."""

    def body(result: SuiteResult) -> None:
        for S, expected in ((19, 31), (20, 66), (25, 89)):
            result.cases += 1
            got = quintic_h2_threshold(S)
            if got != expected:
                _fail(result, f"S={S}: {got} != {expected}")
        previous = quintic_h2_threshold(20)
        for S in range(20, 200):
            result.cases += 1
            n = quintic_h2_threshold(S)
            if n < previous:
                _fail(result, f"threshold not nondecreasing at S={S}")
            previous = n
            # n satisfies the displayed inequality, n-1 does not
            radicand = 60 * S - 525
            ok_n = n >= 4 * S - 27 and (2 * (n - 4 * S + 27)) ** 2 >= radicand
            bad = n - 1 >= 4 * S - 27 and (2 * (n - 1 - 4 * S + 27)) ** 2 >= radicand
            if not ok_n or bad:
                _fail(result, f"S={S}: n={n} not minimal")

    return _run("quintic-h2-thresholds", body)


def suite_castelnuovo_equivalence() -> SuiteResult:
    """section bound holds iff pa <= (S-1)(S-2)/2."""

    def body(result: SuiteResult) -> None:
        for r in range(1, 11):
            X = hypersurface(r)
            for k in range(-3, 4):
                for d in range(1, 21):
                    for pa in range(0, 31):
                        c3 = 2 * pa - 2 + (X.a - k) * d
                        if c3 < 0:
                            continue
                        result.cases += 1
                        F = sheaf_from_curve(X, k, CurveData(d=d, pa=pa))
                        holds = section_c3_bound(X, F).holds
                        castelnuovo = pa <= Fraction((d - 1) * (d - 2), 2)
                        if holds != castelnuovo:
                            _fail(result, f"r={r} k={k} d={d} pa={pa}")

    return _run("castelnuovo-equivalence", body)


def suite_twist_bound_degeneration() -> SuiteResult:
    """The printed twist bound at n = 0 equals the plain section bound."""

    def body(result: SuiteResult) -> None:
        for r in range(1, 11):
            X = hypersurface(r)
            for S in range(1, 41):
                result.cases += 1
                at_zero = twisted_c3_bound(X, 0, S, t=1)
                plain = Fraction(S) ** 2 - 3 * S + X.a * S
                if at_zero != plain:
                    _fail(result, f"r={r} S={S}: {at_zero} != {plain}")

    return _run("twist-bound-degeneration", body)


def suite_hypersurface_constants() -> SuiteResult:
    """Constructor values and the truncated series identity for r = 1..20."""

    def body(result: SuiteResult) -> None:
        spots = {5: (5, 0, 50, 0), 3: (3, 2, 12, 1), 1: (1, 4, 6, 1)}
        for r in range(1, 21):
            result.cases += 1
            X = hypersurface(r)
            series = tangent_series_oracle(r)
            beta = Fraction(X.b, X.N)
            if [Fraction(1), Fraction(X.a), beta] != series:
                _fail(result, f"r={r}: (a, b/N) disagrees with the series oracle")
            # (1 + a h + beta h^2)(1 + r h) == (1+h)^5 mod h^3
            product = _series_mul([Fraction(1), Fraction(X.a), beta],
                                  [Fraction(1), Fraction(r), Fraction(0)])
            if product != [Fraction(1), Fraction(5), Fraction(10)]:
                _fail(result, f"r={r}: series identity fails")
            if r in spots:
                N, a, b, chi0 = spots[r]
                if (X.N, X.a, X.b) != (N, a, b) or chi_structure_sheaf(X) != chi0:
                    _fail(result, f"r={r}: constants wrong")

    return _run("hypersurface-constants", body)


def suite_inference_regression() -> SuiteResult:
    """Rational non-line curve with det O(1) on a cubic: H2(F*) and H3(F*)
    vanish with two-rule provenance, and both disappear without rationality."""

    def body(result: SuiteResult) -> None:
        result.cases += 1
        X = hypersurface(3)
        ctx = make_context(
            X,
            det=1,
            curve=CurveData(d=2, pa=0),
            assume=("section", "rational", "not-line"),
        )
        facts = infer(ctx)
        expected_chain = frozenset({"dual-section-sequence", "rational-curve"})
        for i in (2, 3):
            fact = facts.get(Group(i, FSTAR_EXPR))
            if fact is None or not facts.is_zero(Group(i, FSTAR_EXPR)):
                _fail(result, f"H^{i}(F*) = 0 not derived")
            elif not any(d.rule_ids == expected_chain for d in fact.derivations):
                _fail(result, f"H^{i}(F*) lacks the two-rule chain, has "
                              f"{sorted(sorted(d.rule_ids) for d in fact.derivations)}")
        reduced = infer(ctx.without("rational"))
        for i in (2, 3):
            if reduced.get(Group(i, FSTAR_EXPR)) is not None:
                _fail(result, f"H^{i}(F*) survived removing the rationality assertion")

    return _run("inference-regression", body)


def suite_moduli_reports() -> SuiteResult:
    """Fano conic report (dimension 2, two routes) and the CY report
    (dimension 0 with the tension note)."""

    def body(result: SuiteResult) -> None:
        result.cases += 1
        X3 = hypersurface(3)
        ctx = make_context(
            X3,
            det=1,
            curve=CurveData(d=2, pa=0),
            assume=("stable", "section", "rational", "normal-h1-zero", "h1-IC-detomega-zero"),
        )
        fano = fano_moduli_report(ctx)
        cor = fano_rational_curve_report(ctx)
        if not (fano.established and fano.dimension == 2):
            _fail(result, f"fano report: smooth={fano.smooth} dim={fano.dimension}")
        if not (cor.established and cor.dimension == 2):
            _fail(result, f"fanocor report: smooth={cor.smooth} dim={cor.dimension}")

        result.cases += 1
        X5 = hypersurface(5)
        cy_ctx = make_context(
            X5,
            det=0,
            curve=CurveData(d=3, pa=1),
            assume=("stable", "section", "h1-IC-det-zero", "normal-h1-zero"),
        )
        cy = calabi_yau_moduli_report(cy_ctx)
        if not (cy.established and cy.dimension == 0):
            _fail(result, f"cy report: smooth={cy.smooth} dim={cy.dimension}")
        if not any("tension" in note for note in cy.notes):
            _fail(result, "cy report lacks the dimension-tension note")

    return _run("moduli-reports", body)


# -- randomized property suites ----------------------------------------------


def _random_sheaf(rng: random.Random) -> Rank2Sheaf:
    X = hypersurface(rng.randint(1, 8))
    k = rng.randint(-6, 6)
    S = Fraction(rng.randint(1, 60), rng.choice((1, 1, 1, 2, 3)))
    c3 = Fraction(rng.randint(0, 40), rng.choice((1, 1, 2)))
    return Rank2Sheaf(X=X, k=k, S=S, c3=c3)


def suite_twist_group_action(n: int = 1000) -> SuiteResult:
    def body(result: SuiteResult) -> None:
        rng = random.Random(_SEED)
        for _ in range(n):
            result.cases += 1
            F = _random_sheaf(rng)
            s, t = rng.randint(-8, 8), rng.randint(-8, 8)
            if F.twist(0) != F:
                _fail(result, f"identity twist moved {F}")
            if F.twist(s).twist(t) != F.twist(s + t):
                _fail(result, f"twist not additive at {F}, s={s}, t={t}")

    return _run("twist-group-action", body)


def suite_dual_involution(n: int = 1000) -> SuiteResult:
    def body(result: SuiteResult) -> None:
        rng = random.Random(_SEED + 1)
        for _ in range(n):
            result.cases += 1
            F = _random_sheaf(rng)
            t = rng.randint(-8, 8)
            if F.dual().dual() != F:
                _fail(result, f"dual not an involution at {F}")
            if F.twist(t).dual() != F.dual().twist(-t):
                _fail(result, f"dual/twist compatibility fails at {F}, t={t}")

    return _run("dual-involution", body)


def suite_c3_twist_invariance(n: int = 1000) -> SuiteResult:
    def body(result: SuiteResult) -> None:
        rng = random.Random(_SEED + 2)
        for _ in range(n):
            result.cases += 1
            F = _random_sheaf(rng)
            t = rng.randint(-10, 10)
            if F.twist(t).c3 != F.c3 or F.dual().c3 != F.c3:
                _fail(result, f"c3 moved under twist/dual at {F}")

    return _run("c3-twist-invariance", body)


def suite_parity_uniqueness(n: int = 1000) -> SuiteResult:
    def body(result: SuiteResult) -> None:
        rng = random.Random(_SEED + 3)
        for _ in range(n):
            result.cases += 1
            F = _random_sheaf(rng)
            m = F.canonical_parity()
            parity_even = (-F.X.a - F.k) % 2 == 0
            if (m is not None) != parity_even:
                _fail(result, f"parity presence wrong at {F}")
            if m is not None:
                if F.twist(m).k != -F.X.a:
                    _fail(result, f"canonical twist misses -a at {F}")
                other = rng.randint(-8, 8)
                if other != m and F.twist(other).k == -F.X.a:
                    _fail(result, f"canonical twist not unique at {F}")

    return _run("canonical-parity-uniqueness", body)


def suite_dimension_twist_invariance(n: int = 1000) -> SuiteResult:
    def body(result: SuiteResult) -> None:
        rng = random.Random(_SEED + 4)
        for _ in range(n):
            result.cases += 1
            F = _random_sheaf(rng)
            t = rng.randint(-8, 8)
            if moduli_dimension(F.X, F.twist(t)) != moduli_dimension(F.X, F):
                _fail(result, f"dimension moved under twist at {F}, t={t}")

    return _run("dimension-twist-invariance", body)


_ASSUMPTION_POOL = (
    "section",
    "connected",
    "stable",
    "semistable",
    "normal-h1-zero",
    "h1-IC-detomega-zero",
    "h1-IC-det-zero",
    "picard-rank-one",
)


def _random_context(rng: random.Random):
    for _ in range(50):
        r = rng.randint(1, 6)
        X = hypersurface(r)
        k = rng.randint(-2, 4)
        d = rng.randint(1, 8)
        pa = rng.randint(0, 5)
        if 2 * pa - 2 + (X.a - k) * d < 0:
            continue
        pool = list(_ASSUMPTION_POOL)
        if pa == 0:
            pool.append("rational")
        if k >= 0:
            pool.append("det-effective")
        chosen = [aid for aid in pool if rng.random() < 0.5]
        twists = tuple(sorted(rng.sample(range(0, 5), rng.randint(0, 2))))
        try:
            return make_context(
                X,
                det=k,
                curve=CurveData(d=d, pa=pa),
                assume=chosen,
                twists=twists,
            )
        except (InconsistentDataError, NoSuchSheafError):
            continue
    raise RuntimeError("could not draw a consistent random context")


def suite_provenance_soundness(n: int = 1000) -> SuiteResult:
    """Replay determinism plus premise deletion: removing an asserted
    assumption removes exactly the facts all of whose derivations used it."""

    def body(result: SuiteResult) -> None:
        rng = random.Random(_SEED + 5)
        for _ in range(n):
            result.cases += 1
            ctx = _random_context(rng)
            try:
                base = infer(ctx)
                replay = infer(ctx)
            except InconsistentDataError:
                continue  # contradictory random assertion mix; nothing to test
            if base.to_json_obj() != replay.to_json_obj():
                _fail(result, "inference replay differs")
                continue
            base_facts = base.facts()
            for aid in list(ctx.assumptions):
                token = ctx.assumptions[aid].token
                try:
                    reduced = infer(ctx.without(aid))
                except InconsistentDataError:
                    continue
                for fact in base_facts:
                    depends = all(token in d.support for d in fact.derivations)
                    present = reduced.get(fact.group) is not None
                    if depends and present:
                        _fail(result, f"{fact.group} survived deleting {token}")
                    if not depends and not present:
                        _fail(result, f"{fact.group} vanished without depending on {token}")

    return _run("provenance-soundness", body)


def run_all() -> list[SuiteResult]:
    return [
        suite_rank1_riemann_roch(),
        suite_closed_form_vs_rr(),
        suite_dual_formula(),
        suite_canonical_chi_zero(),
        suite_quintic_thresholds(),
        suite_castelnuovo_equivalence(),
        suite_twist_bound_degeneration(),
        suite_hypersurface_constants(),
        suite_inference_regression(),
        suite_moduli_reports(),
        suite_twist_group_action(),
        suite_dual_involution(),
        suite_c3_twist_invariance(),
        suite_parity_uniqueness(),
        suite_dimension_twist_invariance(),
        suite_provenance_soundness(),
    ]
