"""Forward-chaining inference over cohomology-vanishing facts.

Each rule encodes one sufficient condition for a vanishing (or a dimension
bound) of H^i of a twist of F or its dual.  Rules fire only when their
premises are available: an asserted assumption from the closed vocabulary,
a numeric check against the context's invariants, or a premise derivable
inside the model (for example, h^1 and h^2 of every line bundle vanish on a
hypersurface in P^4).  The engine never fabricates a geometric hypothesis:
stability, specific ideal-sheaf vanishings and normal-bundle rigidity enter
only as assertions.

Every fact carries full provenance.  A premise reachable through several
routes (say, connectedness asserted directly and also implied by
rationality) yields one derivation per route, so deleting an asserted
assumption removes exactly the facts whose every derivation rested on it.

Sheaf expressions in fact groups come from the closed grammar F(m), F*(m)
and F tensor omega (m), rendered "F(m)", "F*(m)", "F⊗ω(m)" with "(m)"
omitted at m = 0.

Rules do not consume each other's facts, so a single deterministic pass
saturates; output is canonically ordered (by cohomological index, then
expression) and therefore independent of rule evaluation order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .chow import NumericalThreefold, chi_line_bundle, h0_line_bundle
from .errors import InconsistentDataError, InvalidInputError
from .euler import ChernInput, chi_dual_formula, chi_rr
from .rational import Rat, as_rat, rat_str
from .serre import CurveData, genus_from_c3, sheaf_from_curve
from .sheaf import Rank2Sheaf

# ---------------------------------------------------------------------------
# Assumption vocabulary
# ---------------------------------------------------------------------------

# id -> (takes integer parameter, description)
ASSUMPTION_IDS: dict[str, tuple[bool, str]] = {
    "stable": (False, "F is stable"),
    "semistable": (False, "F is semistable"),
    "section": (False, "F has a section whose zero scheme is a curve C"),
    "connected": (False, "C is connected (h0(O_C) = 1)"),
    "rational": (False, "C is a rational curve"),
    "line": (False, "C is a line (d = 1, pa = 0)"),
    "not-line": (False, "C is not a line"),
    "component-count": (True, "h0(O_C) equals the given count"),
    "h1-O-zero": (False, "H1(X, O_X) = 0"),
    "h2-O-zero": (False, "H2(X, O_X) = 0"),
    "h1-IC-detomega-zero": (False, "H1(X, I_C tensor det(F) tensor omega_X) = 0"),
    "h1-IC-det-zero": (False, "H1(X, I_C tensor det(F)) = 0"),
    "nonspecial": (False, "det(F) restricted to C is non-special"),
    "normal-h1-zero": (False, "H1(C, N_{C/X}) = 0"),
    "det-ample": (False, "det(F) is ample"),
    "det-big-nef": (False, "det(F) is big and nef"),
    "det-effective": (False, "det(F) is effective"),
    "h0-IC-zero": (True, "H0(X, I_C(m)) = 0 for the given twist m"),
    "acm": (False, "F is arithmetically Cohen-Macaulay for O(h)"),
    "picard-rank-one": (False, "Pic(X) = Z (geometric, not just numerical)"),
    "twist-jump": (False, "some n has h0(F tensor omega^n) != 0 and h0(F tensor omega^(n+1)) = 0"),
    "h2-F-zero": (False, "H2(X, F) = 0"),
    "h2-Fstar-zero": (False, "H2(X, F*) = 0"),
    "h0-detomega-curve-zero": (False, "H0(C, det(F) tensor omega_X on C) = 0"),
    "h0-omega-curve-zero": (False, "H0(C, omega_X on C) = 0"),
}


@dataclass(frozen=True, slots=True)
class Assumption:
    id: str
    param: int | None = None

    def __post_init__(self) -> None:
        if self.id not in ASSUMPTION_IDS:
            raise InvalidInputError(f"unknown assumption id {self.id!r}")
        takes_param = ASSUMPTION_IDS[self.id][0]
        if takes_param and self.param is None:
            raise InvalidInputError(f"assumption {self.id!r} needs a value, e.g. {self.id}=1")
        if not takes_param and self.param is not None:
            raise InvalidInputError(f"assumption {self.id!r} takes no value")

    @property
    def token(self) -> str:
        return self.id if self.param is None else f"{self.id}={self.param}"


def parse_assumption(token: str) -> Assumption:
    """Parse "id" or "id=<int>" into an Assumption."""
    text = token.strip()
    if "=" in text:
        name, _, raw = text.partition("=")
        try:
            value = int(raw)
        except ValueError as exc:
            raise InvalidInputError(f"assumption value must be an integer: {token!r}") from exc
        return Assumption(name.strip(), value)
    return Assumption(text)


# ---------------------------------------------------------------------------
# Fact groups and statuses
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SheafExpr:
    """A twist of F or F*, optionally tensored with omega_X."""

    dual: bool = False
    omega: bool = False
    shift: int = 0

    def __str__(self) -> str:
        base = "F*" if self.dual else "F"
        if self.omega:
            base += "⊗ω"
        if self.shift:
            base += f"({self.shift})"
        return base


F_EXPR = SheafExpr()
FSTAR_EXPR = SheafExpr(dual=True)


def F(shift: int = 0) -> SheafExpr:
    return SheafExpr(shift=shift)


def F_omega(shift: int = 0) -> SheafExpr:
    return SheafExpr(omega=True, shift=shift)


@dataclass(frozen=True, slots=True)
class Group:
    i: int
    expr: SheafExpr

    def __str__(self) -> str:
        return f"H^{self.i}({self.expr})"

    @property
    def sort_key(self) -> tuple[int, str]:
        return (self.i, str(self.expr))


@dataclass(frozen=True, slots=True)
class Zero:
    kind: str = "zero"


@dataclass(frozen=True, slots=True)
class DimAtMost:
    bound: int
    kind: str = "dim_at_most"


@dataclass(frozen=True, slots=True)
class DimEquals:
    value: Rat
    kind: str = "dim_equals"


Status = Zero | DimAtMost | DimEquals


def dim_equals(value: Rat) -> Status:
    value = as_rat(value)
    if value < 0:
        raise InconsistentDataError(f"a cohomology dimension cannot be {value} < 0")
    return Zero() if value == 0 else DimEquals(value)


def status_str(status: Status) -> str:
    if isinstance(status, Zero):
        return "= 0"
    if isinstance(status, DimAtMost):
        return f"<= {status.bound}"
    return f"= {rat_str(status.value)}"


def status_json(status: Status) -> dict:
    if isinstance(status, Zero):
        return {"kind": "zero"}
    if isinstance(status, DimAtMost):
        return {"kind": "dim_at_most", "bound": status.bound}
    return {"kind": "dim_equals", "value": rat_str(status.value)}


def _merge_status(a: Status, b: Status, group: Group) -> Status:
    """Keep the strongest of two compatible statuses; raise on contradiction."""
    if a == b:
        return a
    pair = {type(a), type(b)}
    if pair == {Zero, DimAtMost}:
        return Zero()
    if pair == {DimAtMost, DimAtMost}:
        return DimAtMost(min(a.bound, b.bound))  # type: ignore[union-attr]
    if pair == {DimEquals, DimAtMost}:
        eq, am = (a, b) if isinstance(a, DimEquals) else (b, a)
        if eq.value <= am.bound:
            return eq
        raise InconsistentDataError(
            f"{group}: dimension {rat_str(eq.value)} exceeds the bound {am.bound}"
        )
    # Zero vs DimEquals(v>0), or two different DimEquals values.
    raise InconsistentDataError(
        f"{group}: contradictory statuses {status_str(a)!r} and {status_str(b)!r}"
    )


# ---------------------------------------------------------------------------
# Provenance
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Premise:
    """One ingredient of a derivation.

    kind "assumption" points at a vocabulary id, either asserted directly
    (via = "asserted") or derived by a helper rule (via = "derived:<rule>").
    kind "check" is a numeric evaluation against the context data.
    ``support`` is the set of asserted assumption tokens the premise rests
    on; deleting any of them invalidates the premise.
    """

    kind: str
    label: str
    via: str
    support: frozenset[str] = frozenset()

    def to_json_obj(self) -> dict:
        obj: dict = {"kind": self.kind, "label": self.label, "via": self.via}
        if self.support:
            obj["support"] = sorted(self.support)
        return obj


def asserted(assumption: Assumption) -> Premise:
    return Premise("assumption", assumption.token, "asserted", frozenset({assumption.token}))


def derived(label: str, rule: str, support: frozenset[str] = frozenset()) -> Premise:
    return Premise("assumption", label, f"derived:{rule}", support)


def check(text: str) -> Premise:
    return Premise("check", text, "data")


Routes = list[Premise]


def _collapse(routes: Routes) -> Routes:
    """Keep one route per distinct support; an unconditional route wins."""
    for p in routes:
        if not p.support:
            return [p]
    seen: dict[frozenset[str], Premise] = {}
    for p in routes:
        seen.setdefault(p.support, p)
    return list(seen.values())


@dataclass(frozen=True, slots=True)
class Derivation:
    rule: str
    premises: tuple[Premise, ...]
    note: str = ""

    @property
    def support(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for p in self.premises:
            out |= p.support
        return out

    @property
    def rule_ids(self) -> frozenset[str]:
        ids = {self.rule}
        for p in self.premises:
            if p.via.startswith("derived:"):
                ids.add(p.via.split(":", 1)[1])
        return frozenset(ids)

    def to_json_obj(self) -> dict:
        obj: dict = {"rule": self.rule, "premises": [p.to_json_obj() for p in self.premises]}
        if self.note:
            obj["note"] = self.note
        return obj


@dataclass(slots=True)
class Fact:
    group: Group
    status: Status
    derivations: tuple[Derivation, ...]

    @property
    def rule_ids(self) -> frozenset[str]:
        ids: frozenset[str] = frozenset()
        for d in self.derivations:
            ids |= d.rule_ids
        return ids

    def to_json_obj(self) -> dict:
        return {
            "group": {"i": self.group.i, "expr": str(self.group.expr)},
            "status": status_json(self.status),
            "provenance": [d.to_json_obj() for d in self.derivations],
        }


class FactSet:
    """Facts keyed by group, merged to the strongest status, plus reports."""

    def __init__(self) -> None:
        self._facts: dict[Group, tuple[Status, list[Derivation]]] = {}
        self.reports: list[dict] = []

    def add(self, group: Group, status: Status, derivation: Derivation) -> None:
        if group in self._facts:
            old_status, derivs = self._facts[group]
            try:
                merged = _merge_status(old_status, status, group)
            except InconsistentDataError as exc:
                rules = sorted({d.rule for d in derivs} | {derivation.rule})
                raise InconsistentDataError(f"{exc} (from rules: {', '.join(rules)})") from None
            if derivation not in derivs:
                derivs.append(derivation)
            self._facts[group] = (merged, derivs)
        else:
            self._facts[group] = (status, [derivation])

    def add_all(
        self,
        group: Group,
        status: Status,
        rule: str,
        premise_routes: list[Routes],
        note: str = "",
    ) -> None:
        """Add one derivation per combination of premise routes."""
        for combo in itertools.product(*premise_routes):
            self.add(group, status, Derivation(rule, tuple(combo), note))

    def get(self, group: Group) -> Fact | None:
        if group not in self._facts:
            return None
        status, derivs = self._facts[group]
        ordered = tuple(sorted(derivs, key=lambda d: (d.rule, [p.label for p in d.premises])))
        return Fact(group=group, status=status, derivations=ordered)

    def is_zero(self, group: Group) -> bool:
        entry = self._facts.get(group)
        return entry is not None and isinstance(entry[0], Zero)

    def facts(self) -> list[Fact]:
        groups = sorted(self._facts, key=lambda g: g.sort_key)
        return [self.get(g) for g in groups]  # type: ignore[misc]

    def to_json_obj(self) -> dict:
        return {
            "facts": [f.to_json_obj() for f in self.facts()],
            "reports": self.reports,
        }


# ---------------------------------------------------------------------------
# Context
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Context:
    """Everything a rule may consult: threefold, sheaf numbers, assumptions.

    ``d`` and ``pa`` are the curve numbers, present when a curve was given
    or when a section is asserted (then d = S and pa inverts the c3
    formula; a non-integral inversion is rejected at construction).
    """

    X: NumericalThreefold
    k: int
    sheaf: Rank2Sheaf | None
    curve: CurveData | None
    assumptions: Mapping[str, Assumption]
    twists: tuple[int, ...] = ()
    d: Rat | None = None
    pa: int | None = None
    pa_derived: bool = False

    def has(self, assumption_id: str) -> bool:
        return assumption_id in self.assumptions

    def param(self, assumption_id: str) -> int | None:
        a = self.assumptions.get(assumption_id)
        return None if a is None else a.param

    @property
    def degree(self) -> int | None:
        return self.X.hypersurface_degree

    def without(self, assumption_id: str) -> "Context":
        remaining = {i: a for i, a in self.assumptions.items() if i != assumption_id}
        return replace(self, assumptions=remaining)


def make_context(
    X: NumericalThreefold,
    *,
    det: int = 0,
    curve: CurveData | None = None,
    c2: Rat | None = None,
    c3: Rat = 0,
    assume: Iterable[Assumption | str] = (),
    twists: Iterable[int] = (),
) -> Context:
    """Assemble and validate an inference context.

    The sheaf comes either from curve data (through the correspondence) or
    from (det, c2, c3) directly; curve flags and assumption tokens are
    merged and cross-checked.
    """
    assumptions: dict[str, Assumption] = {}
    for item in assume:
        a = parse_assumption(item) if isinstance(item, str) else item
        if a.id in assumptions and assumptions[a.id] != a:
            raise InvalidInputError(f"assumption {a.id!r} given twice with different values")
        assumptions[a.id] = a

    if curve is not None and c2 is not None:
        raise InvalidInputError("give either curve data or c2, not both")

    sheaf: Rank2Sheaf | None = None
    d: Rat | None = None
    pa: int | None = None
    pa_derived = False
    if curve is not None:
        # Lift curve flags into the assumption set so rules see one vocabulary.
        for flag, aid in (
            (curve.connected, "connected"),
            (curve.rational_curve, "rational"),
            (curve.is_line, "line"),
        ):
            if flag and aid not in assumptions:
                assumptions[aid] = Assumption(aid)
        sheaf = sheaf_from_curve(X, det, curve)
        d, pa = curve.d, curve.pa
    elif c2 is not None:
        sheaf = Rank2Sheaf(X=X, k=det, S=c2, c3=c3)
        if "section" in assumptions:
            # With a section the zero curve has degree S; invert c3 for pa.
            if sheaf.S <= 0:
                raise InconsistentDataError(
                    f"a section's zero curve needs positive degree, got S = {rat_str(sheaf.S)}"
                )
            result = genus_from_c3(X, det, sheaf.S, sheaf.c3)
            if result.warning is not None:
                raise InconsistentDataError(
                    f"section asserted but the implied genus fails: {result.warning}"
                )
            d, pa, pa_derived = sheaf.S, int(result.pa), True

    ctx = Context(
        X=X,
        k=det,
        sheaf=sheaf,
        curve=curve,
        assumptions=assumptions,
        twists=tuple(sorted(set(int(t) for t in twists))),
        d=d,
        pa=pa,
        pa_derived=pa_derived,
    )
    _validate_context(ctx)
    return ctx


def _validate_context(ctx: Context) -> None:
    k = ctx.k
    if ctx.has("rational") and ctx.pa is not None and ctx.pa != 0:
        raise InconsistentDataError(f"rational curve asserted but pa = {ctx.pa}")
    if ctx.has("line") and ctx.d is not None and (ctx.d != 1 or ctx.pa != 0):
        raise InconsistentDataError(
            f"line asserted but (d, pa) = ({rat_str(ctx.d)}, {ctx.pa})"
        )
    if ctx.has("det-ample") and k <= 0:
        raise InconsistentDataError(f"det-ample asserted but k = {k} <= 0 in the rank-one model")
    if ctx.has("det-big-nef") and k < 0:
        raise InconsistentDataError(f"det-big-nef asserted but k = {k} < 0")
    if ctx.has("det-effective") and k < 0:
        raise InconsistentDataError(f"det-effective asserted but k = {k} < 0")
    cc = ctx.param("component-count")
    if cc is not None and cc < 1:
        raise InvalidInputError(f"component-count must be at least 1, got {cc}")
    if cc is not None and cc > 1 and (ctx.has("connected") or ctx.has("rational")):
        raise InconsistentDataError(f"connected curve asserted but component-count = {cc}")


# ---------------------------------------------------------------------------
# Premise resolvers.  Each returns every available route, one Premise per
# distinct support set; an unconditional route supersedes the rest.
# ---------------------------------------------------------------------------


def _asserted_route(ctx: Context, assumption_id: str) -> Routes:
    a = ctx.assumptions.get(assumption_id)
    return [] if a is None else [asserted(a)]


def premise_section(ctx: Context) -> Routes:
    return _asserted_route(ctx, "section")


def premise_connected(ctx: Context) -> Routes:
    routes = _asserted_route(ctx, "connected")
    if ctx.has("rational"):
        # A rational curve is irreducible, hence connected.
        routes.append(derived("connected", "rational-curve", frozenset({"rational"})))
    return _collapse(routes)


def component_count(ctx: Context) -> tuple[int | None, Routes]:
    """h0(O_C), from the count assumption or connectedness."""
    routes: Routes = []
    count: int | None = None
    cc = ctx.param("component-count")
    if cc is not None:
        count = cc
        routes.append(asserted(ctx.assumptions["component-count"]))
    if ctx.has("rational"):
        count = count if count is not None else 1
        routes.append(derived("component-count=1", "rational-curve", frozenset({"rational"})))
    if ctx.has("connected"):
        count = count if count is not None else 1
        routes.append(derived("component-count=1", "connected-curve", frozenset({"connected"})))
    return count, _collapse(routes)


def premise_h1_O_zero(ctx: Context) -> Routes:
    if ctx.X.is_hypersurface:
        return [derived("h1-O-zero", "hypersurface-line-bundles")]
    if ctx.X.a > 0:
        return [derived("h1-O-zero", "fano-vanishing")]
    return _asserted_route(ctx, "h1-O-zero")


def premise_h2_O_zero(ctx: Context) -> Routes:
    if ctx.X.is_hypersurface:
        return [derived("h2-O-zero", "hypersurface-line-bundles")]
    if ctx.X.a > 0:
        return [derived("h2-O-zero", "fano-vanishing")]
    return _asserted_route(ctx, "h2-O-zero")


def premise_nonspecial(ctx: Context) -> Routes:
    """h1(C, det(F) on C) = 0, asserted or derived.

    Derivations: the degree argument k*d > 2pa - 2; the ample-anticanonical
    argument for locally free sheaves on a Fano; and, for rational curves,
    the numeric criterion 2 + deg(N_{C/X}) > c3 with
    deg(N_{C/X}) = 2pa - 2 + a*d (local complete intersection proviso).
    """
    F_ = ctx.sheaf
    if F_ is None:
        return _asserted_route(ctx, "nonspecial")
    if F_.locally_free and ctx.X.a > 0:
        # the ample anticanonical class kills h0(C, omega on C)
        return [derived("nonspecial", "ample-anticanonical")]
    if ctx.d is not None and ctx.pa is not None:
        kd = as_rat(ctx.k * Fraction(ctx.d))
        if kd > 2 * ctx.pa - 2:
            return [derived("nonspecial", "degree-on-curve")]
    routes = _asserted_route(ctx, "nonspecial")
    if ctx.has("rational") and ctx.d is not None and ctx.pa is not None:
        deg_normal = as_rat(2 * ctx.pa - 2 + ctx.X.a * Fraction(ctx.d))
        if 2 + deg_normal > F_.c3:
            routes.append(derived("nonspecial", "nef-genus-criterion", frozenset({"rational"})))
    return _collapse(routes)


def premise_det_ample(ctx: Context) -> Routes:
    if ctx.k >= 1:
        return [check(f"det = O({ctx.k}) with k >= 1 is ample (rank-one model)")]
    return _asserted_route(ctx, "det-ample")  # validated against k at context build


def premise_det_effective(ctx: Context) -> Routes:
    if ctx.k == 0:
        return [check("det = O is effective")]
    if ctx.k > 0 and ctx.X.is_hypersurface:
        return [check(f"det = O({ctx.k}) is effective on a hypersurface (k >= 0)")]
    return _asserted_route(ctx, "det-effective")


def premise_det_big_nef(ctx: Context) -> Routes:
    if ctx.k >= 1:
        return [check(f"det = O({ctx.k}) with k >= 1 is big and nef (rank-one model)")]
    routes = _asserted_route(ctx, "det-big-nef")
    if ctx.has("stable") and ctx.has("picard-rank-one"):
        routes.append(
            derived("det-big-nef", "stability-big-nef", frozenset({"stable", "picard-rank-one"}))
        )
    return _collapse(routes)


def premise_h0_IC_zero(ctx: Context, m: int) -> Routes:
    if ctx.X.is_hypersurface and m < 0:
        return [check(f"h0(O_X({m})) = 0 forces h0(I_C({m})) = 0")]
    a = ctx.assumptions.get("h0-IC-zero")
    if a is not None and a.param == m:
        return [asserted(a)]
    return []


# ---------------------------------------------------------------------------
# Rules
# ---------------------------------------------------------------------------

_RuleFn = Callable[[Context, "FactSet"], None]


def rule_assertions(ctx: Context, facts: FactSet) -> None:
    """Inject directly asserted vanishing facts."""
    for aid, group in (("h2-F-zero", Group(2, F_EXPR)), ("h2-Fstar-zero", Group(2, FSTAR_EXPR))):
        a = ctx.assumptions.get(aid)
        if a is not None:
            facts.add(group, Zero(), Derivation("assertion", (asserted(a),)))


def rule_twist_h2(ctx: Context, facts: FactSet) -> None:
    """h2 of F tensor omega(p) on a hypersurface, controlled by p*d vs c3.

    Strict inequality p*d > c3 kills the group; equality bounds it by 1.
    For locally free F the p = 1 case is unconditional, and at p = 0 the
    dimension equals h0(O_C) - 1 when the component count is known.
    """
    sec = premise_section(ctx)
    if not ctx.X.is_hypersurface or not sec or ctx.sheaf is None:
        return
    d, c3 = ctx.sheaf.S, ctx.sheaf.c3
    if d <= 0:
        return
    for p in ctx.twists:
        pd = as_rat(p * Fraction(d))
        cmp_check = [check(f"c1(O({p}))*c2(F) = {rat_str(pd)} vs c3 = {rat_str(c3)}")]
        if pd > c3:
            facts.add_all(Group(2, F_omega(p)), Zero(), "h2-twist-degree", [sec, cmp_check])
        elif pd == c3:
            facts.add_all(Group(2, F_omega(p)), DimAtMost(1), "h2-twist-degree", [sec, cmp_check])
    if ctx.sheaf.locally_free:
        lf = [check("c3 = 0, so F is locally free")]
        facts.add_all(
            Group(2, F_omega(1)),
            Zero(),
            "h2-twist-degree",
            [sec, lf, [check(f"d = {rat_str(d)} > 0")]],
        )
        count, cc_routes = component_count(ctx)
        if count is not None:
            facts.add_all(
                Group(2, F_omega(0)),
                dim_equals(count - 1),
                "h2-twist-degree",
                [sec, lf, cc_routes],
                note="h2(F⊗ω) = h0(O_C) - 1",
            )


def rule_h0_h3_twist(ctx: Context, facts: FactSet) -> None:
    """For p > max(0, -k) on a hypersurface with a section:
    H3(F tensor omega (p)) = 0 and H0(F(-k-p)) = 0."""
    sec = premise_section(ctx)
    if not ctx.X.is_hypersurface or not sec or ctx.sheaf is None:
        return
    k = ctx.k
    for p in ctx.twists:
        if p > max(0, -k):
            cond = [check(f"p = {p} > max(0, -k) = {max(0, -k)}")]
            facts.add_all(Group(3, F_omega(p)), Zero(), "h0-h3-twist", [sec, cond])
            facts.add_all(Group(0, F(-k - p)), Zero(), "h0-h3-twist", [sec, cond])


def rule_det_degree_h2(ctx: Context, facts: FactSet) -> None:
    """k * deg(C) > 2pa - 2 kills H2(F) on a hypersurface."""
    sec = premise_section(ctx)
    if not ctx.X.is_hypersurface or not sec or ctx.d is None or ctx.pa is None:
        return
    kd = as_rat(ctx.k * Fraction(ctx.d))
    if kd > 2 * ctx.pa - 2:
        facts.add_all(
            Group(2, F_EXPR),
            Zero(),
            "h2-det-degree",
            [sec, [check(f"k*d = {rat_str(kd)} > 2pa - 2 = {2 * ctx.pa - 2}")]],
        )


def rule_dual_sequence(ctx: Context, facts: FactSet) -> None:
    """Cohomology of F* from the dualized section sequence on a hypersurface.

    Needs an ample determinant and a connected zero curve.  Always kills
    H0(F*) and H1(F*) and records chi(F*) = h2(F*) - h3(F*) as a
    conditional identity.  When h0(O_X(r+k-5)) = 0 the five-term sequence
    collapses, pinning h2(F*) = h1(O_C) and h3(F*) = h0(O_X(r-5)).  For
    r <= 4 with effective determinant and h0(I_C(r-5+k)) = 0, the value
    h2(F*) = pa - chi(O_X(r-5+k)) is emitted and pa below that value is an
    inconsistency.
    """
    r = ctx.degree
    sec = premise_section(ctx)
    if r is None or not sec or ctx.sheaf is None:
        return
    amp = premise_det_ample(ctx)
    conn = premise_connected(ctx)
    if not amp or not conn:
        return
    k = ctx.k
    base = [sec, amp, conn]
    facts.add_all(Group(0, FSTAR_EXPR), Zero(), "dual-section-sequence", base)
    facts.add_all(Group(1, FSTAR_EXPR), Zero(), "dual-section-sequence", base)

    report: dict = {
        "type": "dual-euler-identity",
        "statement": "chi(F*) = h2(F*) - h3(F*) under these hypotheses",
    }
    if ctx.pa is not None:
        report["chi_dual"] = rat_str(chi_dual_formula(r, k, ctx.pa))
    facts.reports.append(report)

    m1 = r + k - 5
    if h0_line_bundle(r, m1) == 0:
        gone = [check(f"h0(O_X({m1})) = 0")]
        count, cc_routes = component_count(ctx)
        if count is not None and ctx.pa is not None:
            h1_oc = ctx.pa + count - 1
            if h1_oc < 0:
                raise InconsistentDataError(
                    f"h1(O_C) = pa + h0(O_C) - 1 = {h1_oc} < 0 (pa = {ctx.pa})"
                )
            facts.add_all(
                Group(2, FSTAR_EXPR),
                dim_equals(h1_oc),
                "dual-section-sequence",
                base + [cc_routes, gone],
                note="h2(F*) = h1(O_C)",
            )
        h3_val = h0_line_bundle(r, r - 5)
        facts.add_all(
            Group(3, FSTAR_EXPR),
            dim_equals(h3_val),
            "dual-section-sequence",
            base + [gone, [check(f"h0(O_X({r - 5})) = {h3_val}")]],
            note="h3(F*) = h0(O_X(r-5))",
        )

    if r <= 4 and ctx.pa is not None:
        eff = premise_det_effective(ctx)
        ic = premise_h0_IC_zero(ctx, r - 5 + k)
        if eff and ic:
            h0_val = chi_line_bundle(r, r - 5 + k)
            if ctx.pa < h0_val:
                raise InconsistentDataError(
                    f"pa = {ctx.pa} < h0(O_X({r - 5 + k})) = {h0_val}: "
                    "no such connected curve exists"
                )
            facts.add_all(
                Group(2, FSTAR_EXPR),
                dim_equals(ctx.pa - h0_val),
                "dual-h2-value",
                [sec, amp, conn, eff, ic],
                note=f"h2(F*) = pa - h0(O_X({r - 5 + k}))",
            )


def rule_nonspecial_h2(ctx: Context, facts: FactSet) -> None:
    """H2(X, F) = 0 when H2(O) = 0, F has a section and det|_C is non-special."""
    sec = premise_section(ctx)
    h2o = premise_h2_O_zero(ctx)
    nsp = premise_nonspecial(ctx)
    if not sec or not h2o or not nsp or ctx.sheaf is None:
        return
    facts.add_all(Group(2, F_EXPR), Zero(), "h2-from-nonspecial", [h2o, sec, nsp])


def rule_dual_ideal_h2(ctx: Context, facts: FactSet) -> None:
    """H2(X, F*) = 0 for locally free F with H1(I_C tensor det tensor omega) = 0."""
    sec = premise_section(ctx)
    h2o = premise_h2_O_zero(ctx)
    if not sec or not h2o or ctx.sheaf is None or not ctx.sheaf.locally_free:
        return
    ideal = _asserted_route(ctx, "h1-IC-detomega-zero")
    if ctx.X.a == 0 and ctx.has("h1-IC-det-zero"):
        ideal.append(
            derived("h1-IC-detomega-zero", "omega-trivial", frozenset({"h1-IC-det-zero"}))
        )
    if not ideal:
        return
    lf = [check("c3 = 0, so F is locally free")]
    facts.add_all(Group(2, FSTAR_EXPR), Zero(), "h2-dual-ideal", [h2o, sec, lf, _collapse(ideal)])


def rule_cy_duality_h2(ctx: Context, facts: FactSet) -> None:
    """On a canonically trivial threefold, H2(F) is dual to H1(F*), which the
    ideal-sheaf vanishing kills for locally free F with a section."""
    if ctx.X.a != 0 or ctx.sheaf is None or not ctx.sheaf.locally_free:
        return
    sec = premise_section(ctx)
    h1o = premise_h1_O_zero(ctx)
    ideal = _asserted_route(ctx, "h1-IC-det-zero")
    if not sec or not h1o or not ideal:
        return
    facts.add_all(
        Group(2, F_EXPR),
        Zero(),
        "cy-duality",
        [[check("a = 0, omega_X trivial")], h1o, sec, [check("c3 = 0")], ideal],
        note="H2(F) = H1(F*)* when omega is trivial",
    )


def rule_dual_rational_h2(ctx: Context, facts: FactSet) -> None:
    """H2(X, F*) = 0 when the zero curve is rational.

    Uses the dualized section sequence: H2(det*) vanishes (line-bundle
    helper on a hypersurface, or Kawamata-Viehweg for big-nef det on a
    Fano) and H2(I_C) = 0 because C is rational.  Valid for reflexive F.
    """
    sec = premise_section(ctx)
    rat = _asserted_route(ctx, "rational")
    if not sec or not rat or ctx.sheaf is None:
        return
    if ctx.X.is_hypersurface:
        det_dual: Routes = [check(f"h2(O_X({-ctx.k})) = 0 on a hypersurface")]
    else:
        bignef = premise_det_big_nef(ctx)
        if not bignef or ctx.X.a <= 0:
            return
        det_dual = [
            Premise(
                "check",
                f"h2(O({-ctx.k})) = 0 by Kawamata-Viehweg (det big and nef, a > 0)",
                "derived:kawamata-viehweg",
                p.support,
            )
            for p in bignef
        ]
    facts.add_all(
        Group(2, FSTAR_EXPR),
        Zero(),
        "h2-dual-rational",
        [sec, rat, det_dual, [check("h2(I_C) = 0 for a rational curve")]],
    )


def rule_canonical_duality(ctx: Context, facts: FactSet) -> None:
    """With canonical determinant (k = -a): h2 - h1 = c3/2, and
    h2 <= h1, h2 = h1, chi = 0 and local freeness are all equivalent."""
    if ctx.sheaf is None or ctx.k != -ctx.X.a:
        return
    F_ = ctx.sheaf
    chi = chi_rr(ChernInput.from_sheaf(F_))
    offset = as_rat(Fraction(F_.c3) / 2)
    facts.reports.append(
        {
            "type": "canonical-determinant-duality",
            "relation": "h2(F) - h1(F) = c3/2",
            "offset": rat_str(offset),
            "chi": rat_str(chi),
            "locally_free": F_.locally_free,
            "equivalences": "h2 <= h1  <=>  h2 = h1  <=>  chi = 0  <=>  locally free",
            "equivalences_consistent": (chi == 0) == F_.locally_free,
        }
    )


def rule_acm_obstruction(ctx: Context, facts: FactSet) -> None:
    """c3 > 0 obstructs being arithmetically Cohen-Macaulay:
    h2(F(n)) = c3 for n << 0."""
    if ctx.sheaf is None:
        return
    c3 = ctx.sheaf.c3
    if c3 > 0:
        if ctx.has("acm"):
            raise InconsistentDataError(
                f"acm asserted but c3 = {rat_str(c3)} > 0 forces h2(F(n)) = c3 for n << 0"
            )
        facts.reports.append(
            {
                "type": "acm-obstruction",
                "acm_possible": False,
                "asymptotic": f"h2(F(n)) = {rat_str(c3)} for all n << 0",
                "note": "asymptotic statement, not a fixed-twist fact",
            }
        )


_RULES: tuple[_RuleFn, ...] = (
    rule_assertions,
    rule_twist_h2,
    rule_h0_h3_twist,
    rule_det_degree_h2,
    rule_dual_sequence,
    rule_nonspecial_h2,
    rule_dual_ideal_h2,
    rule_cy_duality_h2,
    rule_dual_rational_h2,
    rule_canonical_duality,
    rule_acm_obstruction,
)


def infer(ctx: Context, rule_sequence: Iterable[_RuleFn] | None = None) -> FactSet:
    """Run every rule to saturation and return the canonical fact set.

    Rules consult only the context, never each other's output, so one pass
    reaches the fixed point; facts from multiple rules merge to the
    strongest status and contradictions raise with both provenances named.
    ``rule_sequence`` exists for order-independence testing.
    """
    facts = FactSet()
    for rule in (_RULES if rule_sequence is None else tuple(rule_sequence)):
        rule(ctx, facts)
    facts.reports.sort(key=lambda rep: rep.get("type", ""))
    return facts
