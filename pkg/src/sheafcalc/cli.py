"""Command-line driver.

Subcommands: chi, scan, vanish, moduli, bound, selftest.  All numeric
output is exact; rationals render reduced as ``p/q`` (integers bare) in
human, JSON and CSV modes alike.

Exit codes: 0 success, 1 invalid input, 2 inconsistent mathematical data,
3 internal identity failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .bounds import (
    cy_genus_bound,
    p_threshold,
    quintic_h2_threshold,
    section_c3_bound,
    section_exists_rr,
    twist_derived_c3_bound,
    twisted_c3_bound,
)
from .chow import NumericalThreefold, hypersurface
from .errors import (
    InconsistentDataError,
    InternalCheckError,
    InvalidInputError,
    SheafCalcError,
)
from .euler import ChernInput, chi_closed_form, chi_dual_formula, chi_rr
from .moduli import all_reports
from .rational import parse_rat, rat_str
from .serre import CurveData, sheaf_from_curve
from .sheaf import Rank2Sheaf
from .vanish import infer, make_context, status_str

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INCONSISTENT = 2
EXIT_IDENTITY = 3

SCAN_COLUMNS = [
    "r", "k", "d", "pa", "c3", "chi", "chi_dual",
    "sectionbound_holds", "oldbound_n", "moduli_dim",
]


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _add_context_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--hypersurface", type=int, metavar="R",
                   help="degree-R hypersurface in P^4")
    p.add_argument("--threefold", metavar="N,A,B",
                   help="explicit intersection numbers h^3, c1 coefficient, c2*h pairing")
    p.add_argument("--det", type=int, default=None, metavar="K",
                   help="determinant coefficient, c1(F) = K*h")
    p.add_argument("--c2", metavar="S", default=None, help="pairing c2(F)*h")
    p.add_argument("--c3", metavar="C3", default=None, help="c3(F), default 0")
    p.add_argument("--curve", metavar="D,PA", default=None,
                   help="curve data: degree and arithmetic genus")
    p.add_argument("--assume", action="append", default=[], metavar="ID",
                   help="assert a hypothesis (repeatable); see the vocabulary in the README")
    p.add_argument("--twist", action="append", type=int, default=[], metavar="P",
                   help="instantiate twist-indexed rules at P (repeatable)")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _threefold_from_args(args) -> NumericalThreefold:
    if (args.hypersurface is None) == (args.threefold is None):
        raise InvalidInputError("give exactly one of --hypersurface or --threefold")
    if args.hypersurface is not None:
        return hypersurface(args.hypersurface)
    parts = args.threefold.split(",")
    if len(parts) != 3:
        raise InvalidInputError("--threefold wants N,A,B")
    N, a = int(parts[0]), int(parts[1])
    return NumericalThreefold(N=N, a=a, b=parse_rat(parts[2]), label="explicit")


def _curve_from_args(args) -> CurveData | None:
    if args.curve is None:
        return None
    parts = args.curve.split(",")
    if len(parts) != 2:
        raise InvalidInputError("--curve wants D,PA")
    assume = set(args.assume)
    return CurveData(
        d=parse_rat(parts[0]),
        pa=int(parts[1]),
        connected="connected" in assume,
        rational_curve="rational" in assume,
        is_line="line" in assume,
    )


def _context_from_args(args, require_sheaf: bool = True):
    X = _threefold_from_args(args)
    curve = _curve_from_args(args)
    if curve is not None and args.c2 is not None:
        raise InvalidInputError("give at most one sheaf spec: --curve or --c2/--c3")
    if args.c3 is not None and args.c2 is None:
        raise InvalidInputError("--c3 needs --c2")
    if require_sheaf and curve is None and args.c2 is None:
        raise InvalidInputError("a sheaf spec is required: --det with --curve or --c2")
    det = args.det if args.det is not None else 0
    return make_context(
        X,
        det=det,
        curve=curve,
        c2=None if args.c2 is None else parse_rat(args.c2),
        c3=0 if args.c3 is None else parse_rat(args.c3),
        assume=args.assume,
        twists=args.twist,
    )


def _threefold_json(X: NumericalThreefold) -> dict:
    return {
        "N": rat_str(X.N),
        "a": rat_str(X.a),
        "b": rat_str(X.b),
        "label": X.label,
        "hypersurface_degree": X.hypersurface_degree,
    }


# -- chi ----------------------------------------------------------------------


def cmd_chi(args) -> int:
    ctx = _context_from_args(args)
    F = ctx.sheaf
    assert F is not None
    chi = chi_rr(ChernInput.from_sheaf(F))
    out: dict = {
        "threefold": _threefold_json(ctx.X),
        "k": rat_str(ctx.k),
        "S": rat_str(F.S),
        "c3": rat_str(F.c3),
        "chi": rat_str(chi),
        "locally_free": F.locally_free,
    }
    lines = [
        f"chi(F) = {rat_str(chi)}",
        f"c3(F) = {rat_str(F.c3)}  (locally free: {'yes' if F.locally_free else 'no'})",
    ]
    r = ctx.X.hypersurface_degree
    if r is not None and ctx.curve is not None:
        closed = chi_closed_form(r, ctx.k, ctx.curve.d, ctx.curve.pa)
        dual_closed = chi_dual_formula(r, ctx.k, ctx.curve.pa)
        dual_rr = chi_rr(ChernInput.from_sheaf(F.dual()))
        if closed != chi or dual_closed != dual_rr:
            raise InternalCheckError(
                f"closed form disagreement: chi {rat_str(closed)} vs {rat_str(chi)}, "
                f"dual {rat_str(dual_closed)} vs {rat_str(dual_rr)}"
            )
        out.update(
            {
                "chi_closed_form": rat_str(closed),
                "chi_dual": rat_str(dual_closed),
                "agreement": True,
            }
        )
        lines.append(f"chi closed form = {rat_str(closed)}  [agrees]")
        lines.append(f"chi(F*) = {rat_str(dual_closed)}  [agrees with dual Riemann-Roch]")
    print(_json_dump(out) if args.json else "\n".join(lines))
    return EXIT_OK


# -- scan ----------------------------------------------------------------------


def _parse_range(text: str, flag: str) -> range:
    if ".." in text:
        lo_text, _, hi_text = text.partition("..")
    else:
        lo_text = hi_text = text
    try:
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise InvalidInputError(f"{flag} wants A..B with integers, got {text!r}") from exc
    if hi < lo:
        raise InvalidInputError(f"{flag}: empty range {text!r}")
    return range(lo, hi + 1)


def cmd_scan(args) -> int:
    r_range = _parse_range(args.r, "--r")
    k_range = _parse_range(args.k, "--k")
    d_range = _parse_range(args.d, "--d")
    pa_range = _parse_range(args.pa, "--pa")
    if min(r_range) < 1:
        raise InvalidInputError("--r must stay >= 1")
    if min(d_range) < 1:
        raise InvalidInputError("--d must stay >= 1")
    if min(pa_range) < 0:
        raise InvalidInputError("--pa must stay >= 0")

    writer = csv.writer(sys.stdout)
    writer.writerow(SCAN_COLUMNS)
    for r in r_range:
        X = hypersurface(r)
        for k in k_range:
            for d in d_range:
                for pa in pa_range:
                    c3 = 2 * pa - 2 + (X.a - k) * d
                    if c3 < 0:
                        if args.filter == "all":
                            writer.writerow([r, k, d, pa, f"{c3}!", "", "", "", "", ""])
                        continue
                    if args.filter == "boundary" and c3 != 0:
                        continue
                    F = sheaf_from_curve(X, k, CurveData(d=d, pa=pa))
                    from .moduli import moduli_dimension

                    writer.writerow(
                        [
                            r,
                            k,
                            d,
                            pa,
                            rat_str(c3),
                            rat_str(chi_rr(ChernInput.from_sheaf(F))),
                            rat_str(chi_dual_formula(r, k, pa)),
                            "true" if section_c3_bound(X, F).holds else "false",
                            quintic_h2_threshold(d),
                            rat_str(moduli_dimension(X, F)),
                        ]
                    )
    return EXIT_OK


# -- vanish / moduli / bound ----------------------------------------------------


def _premise_line(p) -> str:
    suffix = "" if p.via == "data" else f" ({p.via})"
    return f"{p.label}{suffix}"


def cmd_vanish(args) -> int:
    ctx = _context_from_args(args)
    facts = infer(ctx)
    if args.json:
        print(_json_dump(facts.to_json_obj()))
        return EXIT_OK
    if not facts.facts():
        print("no facts derived")
    for fact in facts.facts():
        print(f"{fact.group} {status_str(fact.status)}")
        for deriv in fact.derivations:
            print(f"  via {deriv.rule}" + (f"  [{deriv.note}]" if deriv.note else ""))
            for p in deriv.premises:
                print(f"    - {_premise_line(p)}")
    for report in facts.reports:
        print("report:", _json_dump(report))
    return EXIT_OK


def cmd_moduli(args) -> int:
    ctx = _context_from_args(args)
    reports = all_reports(ctx)
    if args.json:
        print(_json_dump([rep.to_json_obj() for rep in reports]))
        return EXIT_OK
    for rep in reports:
        verdict = "smooth" if rep.established else "not established"
        dim = "" if rep.dimension is None else f", dimension {rat_str(rep.dimension)}"
        print(f"[{rep.theorem}] {verdict}{dim}")
        for entry in rep.ledger:
            note = f"  ({entry.note})" if entry.note else ""
            print(f"  {entry.status:9s} {entry.hypothesis}{note}")
        for warning in rep.warnings:
            print(f"  warning: {warning}")
        for note in rep.notes:
            print(f"  note: {note}")
        if rep.conclusion:
            print(f"  conclusion: {rep.conclusion}")
    return EXIT_OK


def cmd_bound(args) -> int:
    ctx = _context_from_args(args)
    F = ctx.sheaf
    assert F is not None
    X = ctx.X
    reports = [section_c3_bound(X, F).to_json_obj()]
    if X.a == 0 and ctx.k == 0 and ctx.pa is not None:
        reports.append(cy_genus_bound(F.S, ctx.pa).to_json_obj())
    r = X.hypersurface_degree
    if r is not None and ctx.d is not None and ctx.pa is not None:
        p = p_threshold(r, ctx.k, ctx.d, ctx.pa)
        boundary = p * ctx.d == F.c3
        reports.append(
            {
                "name": "p-threshold",
                "threshold": p,
                "note": (
                    "at the threshold, equality p*d = c3 gives h2 <= 1; "
                    "strict inequality gives h2 = 0"
                ),
                "boundary_case": boundary,
            }
        )
    if r == 5 and ctx.k == 0 and isinstance(F.S, int):
        reports.append(
            {
                "name": "quintic-h2-threshold",
                "threshold": quintic_h2_threshold(F.S),
                "context": "quintic hypersurface, semistable, c1(F) = 0 (assumed)",
            }
        )
    if args.n is not None:
        t = args.t if args.t is not None else 1
        reports.append(section_exists_rr(X, F, args.n, t).to_json_obj())
        reports.append(
            {
                "name": "twisted-c3-bound",
                "as_printed": rat_str(twisted_c3_bound(X, args.n, F.S, t)),
                "twist_derived_variant": rat_str(twist_derived_c3_bound(X, args.n, F.S, t)),
                "note": "the two variants differ (2n^2*d vs n^2*d); both shown",
            }
        )
    if args.json:
        print(_json_dump(reports))
    else:
        for rep in reports:
            print(_json_dump(rep))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selfcheck import run_all

    results = run_all()
    for res in results:
        print(res.line())
    total = sum(res.cases for res in results)
    bad = [res for res in results if not res.passed]
    print(f"total: {total} cases, {len(results) - len(bad)}/{len(results)} suites passed")
    return EXIT_OK if not bad else EXIT_IDENTITY


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheafcalc",
        description="Exact numerical calculus for rank-2 reflexive sheaves on threefolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_chi = sub.add_parser("chi", help="Euler characteristics with cross-checks")
    _add_context_args(p_chi)
    p_chi.set_defaults(func=cmd_chi)

    p_scan = sub.add_parser("scan", help="parameter sweep over (r, k, d, pa), CSV output")
    p_scan.add_argument("--r", required=True, metavar="A..B")
    p_scan.add_argument("--k", required=True, metavar="A..B")
    p_scan.add_argument("--d", required=True, metavar="A..B")
    p_scan.add_argument("--pa", required=True, metavar="A..B")
    p_scan.add_argument("--filter", choices=("valid", "boundary", "all"), default="valid")
    p_scan.set_defaults(func=cmd_scan)

    p_vanish = sub.add_parser("vanish", help="run the vanishing inference engine")
    _add_context_args(p_vanish)
    p_vanish.set_defaults(func=cmd_vanish)

    p_moduli = sub.add_parser("moduli", help="moduli smoothness and dimension reports")
    _add_context_args(p_moduli)
    p_moduli.set_defaults(func=cmd_moduli)

    p_bound = sub.add_parser("bound", help="inequalities and thresholds")
    _add_context_args(p_bound)
    p_bound.add_argument("--n", type=int, default=None, help="twist for the section criterion")
    p_bound.add_argument("--t", type=int, default=None, help="scale of L = O(t*h), default 1")
    p_bound.set_defaults(func=cmd_bound)

    p_self = sub.add_parser("selftest", help="run every verification sweep")
    p_self.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 1 is the invalid-input code here
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InconsistentDataError as exc:
        print(f"inconsistent data: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except InternalCheckError as exc:
        print(f"internal identity failure: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except SheafCalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
