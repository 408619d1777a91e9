"""Command-line front end.

Exit status: 0 decided true, 1 decided false, 2 inconclusive; anything
larger is an error, with one code per error family (see ``EXIT_CODES``).
"""

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .decide import (
    ConstantMinor,
    DecideConfig,
    decide_convex,
    decide_lower_bounded,
    decide_nonnegative,
    sample_point,
)
from .errors import (
    ConstantPolynomial,
    DimensionMismatch,
    DivisionByZero,
    Inconclusive,
    NonRational,
    NotGeneric,
    ParseError,
    PolyboundError,
    ResourceLimit,
    UnknownVariable,
    VariableCollision,
)
from .groebner import Budget
from .mpoly import Point
from .parser import parse_poly, parse_vars
from .sturm import v_count
from .tangency import test_condition_C
from .upoly import UPoly

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3
EXIT_PARSE = 4
EXIT_INPUT = 5
EXIT_RESOURCE = 6
EXIT_NOT_GENERIC = 7
EXIT_IO = 8
EXIT_INTERNAL = 9

# checked in order, so subclasses come before their bases
EXIT_CODES = (
    (ParseError, EXIT_PARSE),
    (DivisionByZero, EXIT_PARSE),
    (UnknownVariable, EXIT_INPUT),
    (DimensionMismatch, EXIT_INPUT),
    (VariableCollision, EXIT_INPUT),
    (NonRational, EXIT_INPUT),
    (ConstantPolynomial, EXIT_INPUT),
    (ResourceLimit, EXIT_RESOURCE),
    (NotGeneric, EXIT_NOT_GENERIC),
    (Inconclusive, EXIT_INCONCLUSIVE),
    (PolyboundError, EXIT_INTERNAL),
)

REPORT_FIELDS = (
    "command",
    "argv",
    "input",
    "vars",
    "decided_polynomial",
    "decided_vars",
    "linear_change",
    "point",
    "t_good",
    "deg_phi",
    "phi",
    "deg_theta",
    "signs_minus_inf_F",
    "signs_minus_inf",
    "v_F",
    "v_R",
    "v",
    "verdict",
    "status",
    "retries",
    "failed_points",
    "minors",
    "first_failure",
    "timings",
    "kernel",
    "error",
)


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def exit_code_for(exc):
    for cls, code in EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return EXIT_INTERNAL


# -- report assembly ------------------------------------------------------------------

def _sign_str(s):
    return "+" if s > 0 else "-" if s < 0 else "0"


def _point_json(pt):
    return None if pt is None else [str(c) for c in pt]


def empty_report(command, argv):
    rep = dict.fromkeys(REPORT_FIELDS)
    rep["command"] = command
    rep["argv"] = list(argv)
    rep["timings"] = {}
    rep["kernel"] = {}
    return rep


def _fill_decision(rep, dec):
    rep["decided_polynomial"] = str(dec.polynomial) if dec.polynomial is not None else None
    rep["decided_vars"] = list(dec.polynomial.vars) if dec.polynomial is not None else None
    rep["linear_change"] = (
        [[int(c) for c in row] for row in dec.change.matrix] if dec.change is not None else None
    )
    rep["point"] = _point_json(dec.point)
    rep["retries"] = dec.retries_used
    rep["failed_points"] = [{"point": _point_json(pt), "reason": why} for pt, why in dec.failed_points]
    rep["verdict"] = bool(dec.verdict)
    rep["status"] = "true" if dec.verdict else "false"
    rep["timings"] = {k: round(v, 6) for k, v in dec.timings.items()}
    if dec.report is not None:
        _fill_tangency(rep, dec.report)
    if dec.sturm is not None:
        _fill_sturm(rep, dec.sturm)
    if dec.reason == "constant":
        rep["kernel"] = {"shortcut": "constant"}


def _fill_tangency(rep, tr):
    rep["point"] = _point_json(tr.point)
    rep["t_good"] = bool(tr.t_good)
    rep["deg_phi"] = tr.phi.degree()
    rep["phi"] = tr.phi.to_int_arrays()
    rep["deg_theta"] = tr.theta.degree()
    kernel = dict(tr.stats)
    kernel["algebra_dim"] = tr.algebra_dim
    rep["kernel"] = kernel


def _fill_sturm(rep, st):
    rep["signs_minus_inf_F"] = [_sign_str(s) for s in st.signs_at_minus_infty_F]
    rep["signs_minus_inf"] = [_sign_str(s) for s in st.signs_at_minus_infty]
    rep["v_F"], rep["v_R"], rep["v"] = st.v_F, st.v_R, st.v


def _minor_json(idx, result):
    out = {"minor": list(idx)}
    if isinstance(result, ConstantMinor):
        out.update(constant=str(result.value), verdict=bool(result.verdict))
        return out
    sub = empty_report("minor", [])
    _fill_decision(sub, result)
    for key in ("command", "argv", "input", "vars", "minors", "first_failure", "error"):
        sub.pop(key)
    out.update(sub)
    return out


# -- text rendering ---------------------------------------------------------------------

def _signs_text(signs):
    return "[" + ",".join(signs) + "]" if signs is not None else "-"


def text_row(rep):
    """One result row: point, deg phi, both sign lists, counts, verdict, time."""
    pt = "(" + ",".join(rep["point"]) + ")" if rep["point"] else "-"
    cells = [
        rep["input"] or "",
        f"a={pt}",
        f"deg_phi={rep['deg_phi'] if rep['deg_phi'] is not None else '-'}",
        f"-inf_F:{_signs_text(rep['signs_minus_inf_F'])}",
        f"-inf:{_signs_text(rep['signs_minus_inf'])}",
        f"v_F={_dash(rep['v_F'])}",
        f"v_R={_dash(rep['v_R'])}",
        f"output={rep['status']}",
        f"time={rep['timings'].get('total', 0):.3f}s",
    ]
    return "  ".join(cells)


def _dash(x):
    return "-" if x is None else str(x)


# -- subcommands -------------------------------------------------------------------------

def _config(args):
    point = Point.parse(args.point) if args.point else None
    budget = Budget(max_pairs=args.budget) if args.budget else Budget()
    return DecideConfig(
        seed=args.seed,
        coordinate_bound=args.bound,
        max_retries=args.retries,
        resource_budget=budget,
        explicit_point=point,
        method=args.method,
    )


def _read_poly(args):
    vars = parse_vars(args.vars) if args.vars else None
    return parse_poly(args.expr, vars)


def cmd_decide(args, rep):
    p = _read_poly(args)
    rep["input"] = str(p)
    rep["vars"] = list(p.vars)
    cfg = _config(args)
    start = time.perf_counter()
    if args.command == "convex":
        res = decide_convex(p, cfg)
        rep["verdict"] = bool(res.verdict)
        rep["status"] = "true" if res.verdict else "false"
        rep["minors"] = [_minor_json(idx, r) for idx, r in res.per_minor]
        rep["first_failure"] = list(res.first_failure) if res.first_failure else None
        rep["timings"] = {"total": round(time.perf_counter() - start, 6)}
        return EXIT_TRUE if res.verdict else EXIT_FALSE
    decider = decide_lower_bounded if args.command == "lbound" else decide_nonnegative
    dec = decider(p, cfg)
    _fill_decision(rep, dec)
    rep["timings"]["total"] = round(time.perf_counter() - start, 6)
    return EXIT_TRUE if dec.verdict else EXIT_FALSE


def cmd_tangency(args, rep):
    p = _read_poly(args)
    rep["input"] = str(p)
    rep["vars"] = list(p.vars)
    cfg = _config(args)
    a = cfg.explicit_point if cfg.explicit_point is not None else sample_point(p.nvars, cfg, 0)
    start = time.perf_counter()
    tr = test_condition_C(p, a, cfg.method, cfg.resource_budget)
    _fill_tangency(rep, tr)
    rep["theta"] = tr.theta.to_int_arrays()
    rep["phi_text"] = str(tr.phi)
    rep["theta_text"] = str(tr.theta)
    rep["timings"] = {k: round(v, 6) for k, v in tr.timings.items()}
    rep["timings"]["total"] = round(time.perf_counter() - start, 6)
    rep["status"] = "t_good" if tr.t_good else "not_t_good"
    return EXIT_TRUE if tr.t_good else EXIT_FALSE


def cmd_sturm(args, rep):
    f = parse_poly(args.expr, parse_vars(args.vars) if args.vars else None, field=True)
    used = f.used_vars()
    if len(used) > 1:
        raise UnknownVariable(f"expected one variable besides w, found {', '.join(used)}")
    phi = UPoly.from_mpoly(f, used[0] if used else "t")
    start = time.perf_counter()
    st = v_count(phi)
    rep["input"] = str(phi)
    rep["vars"] = [phi.var]
    rep["deg_phi"] = phi.degree()
    rep["phi"] = phi.to_int_arrays()
    rep["sequence"] = [str(g) for g in st.sequence]
    _fill_sturm(rep, st)
    rep["timings"] = {"sturm": round(time.perf_counter() - start, 6)}
    rep["status"] = "ok"
    return EXIT_TRUE


# -- batch tables ------------------------------------------------------------------------

TABLE_COLUMNS = ("input", "deg phi", "v_F", "v_R", "output", "time")


def parse_batch_line(line):
    """``<expr> [| point=..] [| vars=..] [| label=..] [| command=..]`` -> (expr, options)."""
    parts = [s.strip() for s in line.split("|")]
    opts = {}
    for part in parts[1:]:
        key, sep, value = part.partition("=")
        if not sep:
            raise ParseError(f"option {part!r} is not of the form key=value")
        key = key.strip()
        if key not in ("point", "vars", "label", "command"):
            raise ParseError(f"unknown option {key!r}")
        opts[key] = value.strip()
    return parts[0], opts


def emit_table(lines, cfg_args, out):
    """Run one decision per line and print a fixed-width table; return the rows."""
    rows = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label = line
        start = time.perf_counter()
        try:
            expr, opts = parse_batch_line(line)
            label = opts.get("label", expr)
            vars = parse_vars(opts["vars"]) if "vars" in opts else None
            p = parse_poly(expr, vars)
            point = Point.parse(opts["point"]) if "point" in opts else cfg_args.explicit_point
            cfg = DecideConfig(
                seed=cfg_args.seed,
                coordinate_bound=cfg_args.coordinate_bound,
                max_retries=cfg_args.max_retries,
                resource_budget=cfg_args.resource_budget,
                explicit_point=point,
                method=cfg_args.method,
            )
            command = opts.get("command", "lbound")
            if command == "lbound":
                dec = decide_lower_bounded(p, cfg)
            elif command == "nonneg":
                dec = decide_nonnegative(p, cfg)
            else:
                raise ParseError(f"unsupported batch command {command!r}")
            deg = dec.report.phi.degree() if dec.report is not None else None
            vF = dec.sturm.v_F if dec.sturm is not None else None
            vR = dec.sturm.v_R if dec.sturm is not None else None
            status = "true" if dec.verdict else "false"
        except Inconclusive:
            deg = vF = vR = None
            status = "INCONCLUSIVE"
        except (PolyboundError, ValueError) as exc:
            print(f"error in {label!r}: {exc}", file=sys.stderr)
            deg = vF = vR = None
            status = "ERROR"
        rows.append((label, deg, vF, vR, status, time.perf_counter() - start))
    if rows:
        width = max(len(TABLE_COLUMNS[0]), *(len(r[0]) for r in rows))
        print(f"{TABLE_COLUMNS[0]:<{width}}  {'deg phi':>7}  {'v_F':>4}  {'v_R':>4}  {'output':<12}  {'time':>9}",
              file=out)
        for label, deg, vF, vR, status, secs in rows:
            print(f"{label:<{width}}  {_dash(deg):>7}  {_dash(vF):>4}  {_dash(vR):>4}  {status:<12}  {secs:>8.3f}s",
                  file=out)
    return rows


def cmd_table(args, rep):
    try:
        with open(args.batch, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        print(f"polybound: cannot read {args.batch}: {exc}", file=sys.stderr)
        return EXIT_IO
    rows = emit_table(lines, _config(args), sys.stdout)
    if args.json:
        rep["rows"] = [
            {"input": r[0], "deg_phi": r[1], "v_F": r[2], "v_R": r[3], "output": r[4], "time": round(r[5], 6)}
            for r in rows
        ]
    return EXIT_TRUE


# -- entry points --------------------------------------------------------------------------

def _default_seed():
    raw = os.environ.get("POLYBOUND_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"POLYBOUND_SEED must be an integer, got {raw!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--point", help="explicit point a1,a2,... (rationals)")
    common.add_argument("--seed", type=int, default=None, help="seed for point sampling (env POLYBOUND_SEED)")
    common.add_argument("--retries", type=int, default=3, help="extra points to try when (C) fails")
    common.add_argument("--bound", type=int, default=10, help="coordinate bound for sampled points")
    common.add_argument("--budget", type=int, default=None, metavar="PAIRS",
                        help="maximum number of critical pairs per Groebner run")
    common.add_argument("--vars", help="variable order x1,...,xn (last one is distinguished)")
    common.add_argument("--method", choices=("quotient", "buchberger"), default="quotient")
    common.add_argument("--json", action="store_true", help="print a JSON report")

    ap = _ArgParser(prog="polybound", description="Exact lower-boundedness, non-negativity and convexity checks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgParser)
    for name, help_ in (
        ("lbound", "is the polynomial bounded below?"),
        ("nonneg", "is the polynomial non-negative?"),
        ("convex", "is the polynomial convex?"),
        ("tangency", "tangency polynomials and the (C) test at a point"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("expr")
    sp = sub.add_parser("sturm", parents=[common], help="Sturm sequence of a polynomial over Q(w)")
    sp.add_argument("expr", help="univariate polynomial; w is the infinitesimal")
    sp = sub.add_parser("table", parents=[common], help="batch file to a results table")
    sp.add_argument("batch")
    return ap


def run(argv=None, stdout=None):
    """Execute one invocation; return ``(exit_status, report)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = _default_seed()
        if args.retries < 0 or args.bound <= 0 or (args.budget is not None and args.budget <= 0):
            raise UsageError("--retries must be >= 0, --bound and --budget positive")
    except UsageError as exc:
        print(f"polybound: {exc}", file=sys.stderr)
        return EXIT_USAGE, None

    rep = empty_report(args.command, argv)
    handler = {
        "lbound": cmd_decide,
        "nonneg": cmd_decide,
        "convex": cmd_decide,
        "tangency": cmd_tangency,
        "sturm": cmd_sturm,
        "table": cmd_table,
    }[args.command]
    try:
        status = handler(args, rep)
    except PolyboundError as exc:
        status = exit_code_for(exc)
        rep["status"] = "inconclusive" if status == EXIT_INCONCLUSIVE else "error"
        rep["error"] = {"type": type(exc).__name__, "message": str(exc)}
        print(f"polybound: {type(exc).__name__}: {exc}", file=sys.stderr)

    if args.command == "table" and not args.json:
        return status, rep
    if args.json:
        json.dump(rep, stdout, indent=2, default=_json_default)
        stdout.write("\n")
    elif rep["error"] is None:
        stdout.write(_text(args.command, rep) + "\n")
    return status, rep


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"not JSON serializable: {x!r}")


def _text(command, rep):
    if command == "convex":
        lines = [f"{rep['input']}  convex={rep['status']}"]
        for m in rep["minors"]:
            idx = "{" + ",".join(map(str, m["minor"])) + "}"
            detail = f"constant {m['constant']}" if "constant" in m else text_row({**m, "input": ""}).strip()
            lines.append(f"  minor {idx}: {'true' if m['verdict'] else 'false'}  {detail}")
        if rep["first_failure"]:
            lines.append("  first failure: {" + ",".join(map(str, rep["first_failure"])) + "}")
        return "\n".join(lines)
    if command == "tangency":
        pt = ",".join(rep["point"])
        return "\n".join([
            f"a=({pt})  t_good={'true' if rep['t_good'] else 'false'}  "
            f"deg_phi={rep['deg_phi']}  deg_theta={rep['deg_theta']}",
            f"phi   = {rep['phi_text']}",
            f"theta = {rep['theta_text']}",
        ])
    if command == "sturm":
        lines = [f"[{i}] {g}" for i, g in enumerate(rep["sequence"])]
        lines.append(f"-inf_F: {_signs_text(rep['signs_minus_inf_F'])}  v_F={rep['v_F']}")
        lines.append(f"-inf:   {_signs_text(rep['signs_minus_inf'])}  v_R={rep['v_R']}")
        lines.append(f"v = {rep['v']}")
        return "\n".join(lines)
    return text_row(rep)


def main(argv=None):
    status, _ = run(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
