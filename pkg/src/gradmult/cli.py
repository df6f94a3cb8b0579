"""Command-line interface: ``gradmult <command> -w WORKSPACE ...``.

Every command prints one JSON document (sorted keys, rationals as "p/q"
strings) to standard output.  Exit codes: 0 pass, 1 failed check, 2 usage or
input error, 3 computation cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import shlex
import sys
from pathlib import Path

from . import checks, families, limits, newton
from .length import InfiniteLengthError, colength
from .multiplicity import general_mixed_multiplicities, mixed_multiplicities
from .polyfit import FitError
from .report import EVIDENCE, FAIL, PASS, REFUSED, CheckReport, combine_verdicts, to_jsonable
from .workspace import Workspace, WorkspaceError, ideal_to_json, parse_workspace

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _names(value: str | None) -> list[str]:
    if not value:
        return []
    return [v.strip() for v in value.split(",") if v.strip()]


def _ints(value: str | None, what: str) -> list[int]:
    try:
        out = [int(v) for v in _names(value)]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {value!r}") from None
    if any(v < 0 for v in out):
        raise UsageError(f"{what}: entries must be non-negative")
    return out


def _module(ws: Workspace, args):
    name = getattr(args, "module", None)
    if name:
        return ws.ideal(name)
    return ws.quotient


def _strategy(ws: Workspace, args) -> str:
    s = getattr(args, "strategy", None) or ws.settings.strategy
    return limits.EXACT if s == "exact" else limits.SEQUENCE


def _horizon(ws: Workspace, args):
    return getattr(args, "horizon", None) or ws.settings.horizon


def _families(ws: Workspace, value: str | None, what="--families"):
    names = _names(value)
    if not names:
        raise UsageError(f"{what}: at least one family name required")
    return [ws.family(n) for n in names]


def _limit_kw(ws, args):
    return dict(strategy=_strategy(ws, args), horizon=_horizon(ws, args), q_max=ws.settings.q_max)


# ---------------------------------------------------------------------------
# command handlers: each returns (payload, verdict or None, csv rows or None)


def cmd_colength(ws, args):
    I = ws.ideal(args.ideal)
    return {"ideal": args.ideal, "generators": ideal_to_json(I), "colength": colength(I)}, None, None


def cmd_multiplicity(ws, args):
    I = ws.ideal(args.ideal)
    Q = _module(ws, args)
    table = mixed_multiplicities(Q, [I], cap=ws.settings.cap)
    return {"ideal": args.ideal, "e": table[(I.dimension,)], "table": table}, None, _table_rows(table)


def cmd_mixed(ws, args):
    names = _names(args.ideals)
    if not names:
        raise UsageError("--ideals: at least one ideal required")
    table = mixed_multiplicities(_module(ws, args), [ws.ideal(n) for n in names], cap=ws.settings.cap)
    return {"ideals": names, "table": table}, None, _table_rows(table)


def cmd_general_mixed(ws, args):
    names = _names(args.ideals)
    table = general_mixed_multiplicities(ws.ideal(args.primary), [ws.ideal(n) for n in names], cap=ws.settings.cap)
    return {"primary": args.primary, "ideals": names, "table": table}, None, _table_rows(table)


def cmd_family_value(ws, args):
    fams = _families(ws, args.families)
    point = _ints(args.point, "--point")
    est = limits.family_G_value(_module(ws, args), fams, point, **_limit_kw(ws, args))
    rows = [["m", "ratio", "approx"]] + [[m, str(r), f"{float(r):.12g}"] for m, r in est.samples]
    return {"families": _names(args.families), "point": point, "estimate": est}, None, rows


def cmd_family_mixed(ws, args):
    table = limits.family_mixed_multiplicities(_module(ws, args), _families(ws, args.families), **_limit_kw(ws, args))
    return {"families": _names(args.families), "table": table}, None, _table_rows(table)


def cmd_general_family_mixed(ws, args):
    table = limits.general_family_mixed_multiplicities(
        ws.family(args.primary_family),
        [ws.family(n) for n in _names(args.families)],
        tolerance=ws.settings.tolerance,
        growth_horizon=args.growth_horizon,
        **_limit_kw(ws, args),
    )
    return {"primary_family": args.primary_family, "families": _names(args.families), "table": table}, None, _table_rows(table)


def cmd_vol_mult(ws, args):
    report = limits.volume_equals_multiplicity(
        _module(ws, args),
        _families(ws, args.families),
        _ints(args.type, "--type"),
        _ints(args.p, "--p"),
        tolerance=ws.settings.tolerance,
        **_limit_kw(ws, args),
    )
    rows = [["p", "ratio", "approx"]] + [[p, str(r), f"{float(r):.12g}"] for p, r in report.details["ratios"]]
    return {"report": report}, report.verdict, rows


def cmd_newton(ws, args):
    if args.body:
        verts = newton.scaled_staircase_body(ws.family(args.body), args.at)
        return {"body": args.body, "at": args.at, "vertices": [list(v) for v in verts]}, None, [
            [str(x) for x in v] for v in verts
        ]
    if not args.ideal:
        raise UsageError("--ideal is required unless --body is given")
    I = ws.ideal(args.ideal)
    if args.covolume:
        vol = newton.covolume(I)
        return {"ideal": args.ideal, "covolume": vol, "approx": f"{float(vol):.12g}"}, None, None
    if args.closure_power is not None:
        J = newton.integral_closure_power(I, args.closure_power)
        return {"ideal": args.ideal, "n": args.closure_power, "generators": ideal_to_json(J), "string": J.to_string()}, None, None
    raise UsageError("newton: choose one of --covolume, --closure-power N, --body F --at N")


def cmd_check(ws, args):
    name = args.check
    tol = ws.settings.tolerance
    horizon = _horizon(ws, args) or limits.default_horizon(ws.ring.dimension)
    if name in ("graded", "filtration"):
        F = ws.family(args.family) if args.family else None
        if F is None:
            raise UsageError("--family is required")
        fn = families.verify_graded if name == "graded" else families.verify_filtration
        report = fn(F, horizon)
    elif name == "linear-growth":
        if not args.family or not args.subfamily:
            raise UsageError("--family (J) and --subfamily (I) are required")
        witness = families.linear_growth_search(ws.family(args.family), ws.family(args.subfamily), args.c_max, horizon)
        report = CheckReport(
            "linear-growth",
            f"({args.family}, {args.subfamily})",
            PASS if witness else FAIL,
            lhs=witness.c if witness else None,
            notes=[f"evidence at horizon N={horizon}, not a proof for all n"],
            details={"witness": witness, "c_max": args.c_max},
        )
    elif name == "nilradical":
        Q = _module(ws, args)
        if Q is None:
            raise UsageError("--module is required (or a ring quotient)")
        report = checks.nilradical_hypothesis(Q)
    elif name == "additivity":
        report = checks.additivity_check(
            _module(ws, args), _ints(args.f, "--f"), _families(ws, args.families), tolerance=tol, **_limit_kw(ws, args)
        )
    elif name == "associativity":
        Q = _module(ws, args)
        if Q is None:
            raise UsageError("--module is required (or a ring quotient)")
        report = checks.associativity_check(Q, _families(ws, args.families), tolerance=tol, **_limit_kw(ws, args))
    elif name == "minkowski":
        fams = _families(ws, args.families)
        if len(fams) != 2:
            raise UsageError("--families: minkowski needs exactly two families")
        report = checks.minkowski_check(fams[0], fams[1], _module(ws, args), tolerance=tol, **_limit_kw(ws, args))
    elif name == "comparison":
        if not args.primary_family:
            raise UsageError("--primary-family is required")
        report = limits.comparison_check(
            ws.family(args.primary_family), [ws.family(n) for n in _names(args.families)], tolerance=tol, **_limit_kw(ws, args)
        )
    elif name == "double-limit":
        report = limits.double_limit_check(
            _families(ws, args.families),
            [ws.family(n) for n in _names(args.j_families)],
            _ints(args.point, "--point"),
            _ints(args.j_point, "--j-point"),
            p_factor=args.p_factor,
            m_value=args.m_value,
            q_max=ws.settings.q_max,
            horizon=_horizon(ws, args),
            tolerance=tol,
        )
    else:  # argparse restricts the choices
        raise UsageError(f"unknown check {name!r}")
    return {"report": report}, report.verdict, None


def _table_rows(table):
    return [["type", "e", "approx"]] + [[",".join(map(str, k)), str(v), f"{float(v):.12g}"] for k, v in table.entries.items()]


HANDLERS = {
    "colength": cmd_colength,
    "multiplicity": cmd_multiplicity,
    "mixed": cmd_mixed,
    "general-mixed": cmd_general_mixed,
    "family-value": cmd_family_value,
    "family-mixed": cmd_family_mixed,
    "general-family-mixed": cmd_general_family_mixed,
    "vol-mult": cmd_vol_mult,
    "newton": cmd_newton,
    "check": cmd_check,
}

CHECKS = ("graded", "filtration", "linear-growth", "nilradical", "additivity", "associativity", "minkowski", "comparison", "double-limit")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gradmult", description="Exact mixed multiplicities of graded families of monomial ideals.")
    parser.add_argument("--strict", action="store_true", help="exit nonzero on evidence-only verdicts")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-w", "--workspace", required=True, help="workspace JSON file")
        p.add_argument("--csv", metavar="PATH", help="also write tabular output as CSV")
        p.add_argument("--strict", action="store_true", default=argparse.SUPPRESS)
        return p

    def limit_opts(p):
        p.add_argument("--strategy", choices=("exact", "sequence"))
        p.add_argument("--horizon", type=int)
        p.add_argument("--module", help="ideal Q; work on R/Q")

    p = add("colength", "length of R/I")
    p.add_argument("--ideal", required=True)
    p = add("multiplicity", "Hilbert-Samuel multiplicity e(I)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--module")
    p = add("mixed", "mixed multiplicities of m-primary ideals")
    p.add_argument("--ideals", required=True)
    p.add_argument("--module")
    p = add("general-mixed", "mixed multiplicities of J's with respect to an m-primary I")
    p.add_argument("--primary", required=True)
    p.add_argument("--ideals", default="")
    p = add("family-value", "limit polynomial of m-primary families at a point")
    p.add_argument("--families", required=True)
    p.add_argument("--point", required=True)
    limit_opts(p)
    p = add("family-mixed", "mixed multiplicities of m-primary families")
    p.add_argument("--families", required=True)
    limit_opts(p)
    p = add("general-family-mixed", "mixed multiplicities of families with respect to an m-primary family")
    p.add_argument("--primary-family", required=True)
    p.add_argument("--families", default="")
    p.add_argument("--growth-horizon", type=int, default=None, help="also search linear growth up to this horizon")
    limit_opts(p)
    p = add("vol-mult", "compare e(I_p)/p^d with the family value")
    p.add_argument("--families", required=True)
    p.add_argument("--type", required=True)
    p.add_argument("--p", required=True)
    limit_opts(p)
    p = add("newton", "Newton polyhedron computations")
    p.add_argument("--ideal")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--covolume", action="store_true")
    g.add_argument("--closure-power", type=int)
    g.add_argument("--body", metavar="FAMILY")
    p.add_argument("--at", type=int, default=1)
    p = add("check", "structural checks")
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--family")
    p.add_argument("--subfamily")
    p.add_argument("--families")
    p.add_argument("--primary-family")
    p.add_argument("--j-families", default="")
    p.add_argument("--point")
    p.add_argument("--j-point", default="")
    p.add_argument("--f")
    p.add_argument("--c-max", type=int, default=8)
    p.add_argument("--p-factor", type=int, default=8)
    p.add_argument("--m-value", type=int, default=8)
    limit_opts(p)
    p = add("report", "run a suite of commands and aggregate the reports")
    p.add_argument("--suite", required=True, help="JSON list of argument lists")
    return parser


def _exit_code(verdict, strict: bool) -> int:
    if verdict in (FAIL, REFUSED):
        return EXIT_FAILED
    if verdict == EVIDENCE and strict:
        return EXIT_FAILED
    return EXIT_OK


def _error(message: str, code: int):
    return {"error": message, "exit": code}, code


def run(argv):
    """Execute one command; returns (payload, exit code, csv rows, csv path)."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        payload, code = _error(f"usage: {exc}", EXIT_USAGE)
        return payload, code, None, None
    strict = getattr(args, "strict", False)
    try:
        if args.command == "report":
            payload, code = run_suite(args.workspace, args.suite, strict)
            return payload, code, None, None
        ws = parse_workspace(args.workspace)
        result, verdict, rows = HANDLERS[args.command](ws, args)
    except FitError as exc:
        payload, code = _error(f"cap exceeded: {exc}", EXIT_CAP)
        payload["fits"] = exc.fits
        return payload, code, None, None
    except (UsageError, WorkspaceError, InfiniteLengthError, newton.UnsupportedDimensionError) as exc:
        payload, code = _error(str(exc), EXIT_USAGE)
        return payload, code, None, None
    except (ValueError, limits.StructuralError) as exc:
        payload, code = _error(str(exc), EXIT_USAGE)
        return payload, code, None, None
    payload = {"command": args.command, "result": result}
    if verdict is not None:
        payload["verdict"] = verdict
    return payload, _exit_code(verdict, strict), rows, getattr(args, "csv", None)


def run_suite(workspace: str, suite_path: str, strict: bool):
    try:
        items = json.loads(Path(suite_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        return _error(f"{suite_path}: cannot read suite: {exc}", EXIT_USAGE)
    if not isinstance(items, list):
        return _error(f"{suite_path}: expected a JSON list of argument lists", EXIT_USAGE)
    results, codes, verdicts = [], [], []
    for i, item in enumerate(items):
        argv = shlex.split(item) if isinstance(item, str) else item
        if not isinstance(argv, list) or not all(isinstance(a, str) for a in argv):
            return _error(f"{suite_path}[{i}]: expected a list of strings", EXIT_USAGE)
        if argv and argv[0] == "report":
            return _error(f"{suite_path}[{i}]: nested suites are not allowed", EXIT_USAGE)
        if "-w" not in argv and "--workspace" not in argv and len(argv) >= 1:
            argv = argv + ["-w", workspace]
        payload, code, _, _ = run(argv)
        results.append({"argv": argv, "exit": code, "output": payload})
        codes.append(code)
        if "verdict" in payload:
            verdicts.append(payload["verdict"])
    overall = combine_verdicts(verdicts) if verdicts else PASS
    if any(c == EXIT_USAGE for c in codes):
        code = EXIT_USAGE
    elif any(c == EXIT_CAP for c in codes):
        code = EXIT_CAP
    else:
        code = max([_exit_code(overall, strict)] + codes)
    return {"command": "report", "results": results, "verdict": overall}, code


def render(payload) -> str:
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    payload, code, rows, csv_path = run(argv)
    sys.stdout.write(render(payload) + "\n")
    if csv_path and rows:
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerows(rows)
    if code == EXIT_USAGE and "error" in payload:
        print(f"gradmult: {payload['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
