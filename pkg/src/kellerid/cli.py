"""Command line front end.

Exit status: 0 when every requested check holds, 1 when some identity or
oracle check fails, 2 on malformed input or usage.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Dict, List, Optional, Sequence

from .algebra import AlgebraError, MPoly, format_rational, render
from .keller import (
    AssumptionsReport,
    CurveF,
    DegenerateQ,
    IdentityReport,
    NotKeller,
    ZeroPartialX,
    build_M,
    check_detM_resultant,
    check_main_assumptions,
    check_theorem_A,
    check_theorem_B,
    component_oracle_Q,
    construct_associated,
    identities_m3,
    normalize_a1,
)
from .oracles import BudgetExceeded, DegreeBounds, implication_scan, keller_oracle_linear
from .parser import NotMonicInY, PolySyntaxError, load_curve, parse_curve
from .polymatrix import determinant

COMMANDS = (
    "assumptions",
    "normalize",
    "matrix",
    "detres",
    "check-a",
    "check-b",
    "associate",
    "oracle-a",
    "oracle-b",
    "m3",
    "scan",
    "report",
)

# fixed key order of the JSON report
KEYS = (
    "command",
    "input",
    "assumptions",
    "normalized",
    "matrix",
    "detres",
    "identities",
    "q",
    "associated",
    "oracle_b",
    "m3",
    "scan",
    "verdict",
    "warnings",
)


class UsageError(Exception):
    pass


def _rat(c) -> str:
    return format_rational(c)


def _order(o) -> Any:
    return "inf" if o == math.inf else o


def assumptions_payload(a: AssumptionsReport) -> Dict[str, Any]:
    return {
        "monic": a.monic_form_ok,
        "degree_bounds": a.degree_bounds_ok,
        "reduced": a.reduced_all_lambda,
        "bad_lambda_gcd": render(a.bad_lambda_gcd),
        "bad_lambda_rational_roots": [_rat(r) for r in a.bad_lambda_roots],
        "dy_fx_positive": a.dy_fx_positive,
    }


def identity_payload(r: IdentityReport) -> Dict[str, Any]:
    return {"family": r.family, "k": r.k, "i": r.i, "j": r.j, "residual": render(r.residual), "holds": r.holds}


class Report:
    def __init__(self, command: str, source: Optional[str] = None):
        self.data: Dict[str, Any] = {k: None for k in KEYS}
        self.data["command"] = command
        self.data["input"] = source
        self.data["identities"] = []
        self.data["warnings"] = []
        self.data["verdict"] = True

    def __getitem__(self, key):
        return self.data[key]

    def __setitem__(self, key, value):
        if key not in self.data:
            raise KeyError(key)
        self.data[key] = value

    def warn(self, *messages: str) -> None:
        for msg in messages:
            if msg not in self.data["warnings"]:
                self.data["warnings"].append(msg)

    def fail(self) -> None:
        self.data["verdict"] = False


def emit_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.data, indent=2) + "\n"
    return render_text(report.data)


def render_text(d: Dict[str, Any]) -> str:
    out: List[str] = [f"command: {d['command']}"]
    if d["input"] is not None:
        out.append(f"f = {d['input']}")
    if d["assumptions"]:
        a = d["assumptions"]
        out.append(
            "assumptions: monic={monic} degree_bounds={degree_bounds} reduced={reduced} "
            "dy_fx_positive={dy_fx_positive} bad_lambda_gcd={bad_lambda_gcd}".format(**a)
        )
    if d["normalized"] is not None:
        out.append(f"normalized: {d['normalized']}")
    if d["matrix"]:
        mat = d["matrix"]
        out.append(f"M (m={mat['m']}, k_vanish={mat['k_vanish']}):")
        for row in mat["rows"]:
            out.append("  [" + ", ".join(row) + "]")
        out.append(f"det M = {mat['detM']}")
    if d["detres"]:
        r = d["detres"]
        if r["status"] == "skipped":
            out.append("detres: skipped (f_x = 0)")
        else:
            out.append(f"detres: k={r['k']} detM={r['detM']} res={r['res']} factor={r['factor']} holds={r['holds']}")
    for r in d["identities"]:
        label = f"A k={r['k']} i={r['i']} j={r['j']}" if r["family"] == "A" else f"B k={r['k']}"
        out.append(f"{label}: holds={r['holds']} residual={r['residual']}")
    if d["q"]:
        q = d["q"]
        out.append(f"Q = {q['Q']}")
        out.append(f"N = {q['N']}; ord Q_i = {q['orders']}; oracle verdict={q['verdict']}")
    if d["associated"]:
        s = d["associated"]
        out.append(f"g = {s['g']}  (b = {s['b']}, R = {s['R']}, Jac = {s['jac']})")
    if d["oracle_b"]:
        o = d["oracle_b"]
        out.append(f"linear oracle (degy={o['degy_g']}, degx={o['degx_b']}): exists={o['exists']} g={o['g']}")
    if d["m3"]:
        r = d["m3"]
        out.append(f"m=3 forms: A3={r['A3']} B3={r['B3']} residuals={r['residuals']}")
    if d["scan"]:
        s = d["scan"]
        out.append(
            f"scan: tested={s['tested']} b_pass={s['b_pass']} a_pass={s['a_pass']} "
            f"counterexamples={len(s['counterexamples'])}"
        )
        for c in s["counterexamples"]:
            out.append(f"  counterexample: {c}")
    for w in d["warnings"]:
        out.append(f"warning: {w}")
    out.append(f"verdict: {d['verdict']}")
    return "\n".join(out) + "\n"


# -- subcommand bodies ----------------------------------------------------------

def do_assumptions(rep: Report, f: CurveF, asm: AssumptionsReport) -> None:
    rep["assumptions"] = assumptions_payload(asm)
    if not asm.all_ok:
        rep.fail()
    rep.warn(*asm.warnings())


def do_normalize(rep: Report, f: CurveF) -> None:
    rep["normalized"] = render(normalize_a1(f).poly())


def do_matrix(rep: Report, f: CurveF) -> None:
    M = build_M(f)
    rep["matrix"] = {
        "m": f.m,
        "k_vanish": M.k_vanish,
        "rows": M.matrix.to_strings(),
        "detM": render(determinant(M.matrix)),
    }


def do_detres(rep: Report, f: CurveF) -> None:
    try:
        r = check_detM_resultant(f)
    except ZeroPartialX:
        rep["detres"] = {"status": "skipped", "k": None, "holds": None, "detM": None, "res": None, "factor": None}
        rep.warn("f_x = 0: the true-degree resultant is undefined, det M relation skipped")
        rep.fail()
        return
    m = f.m
    factor = (-1) ** (r.k * (m + 1)) * m ** r.k
    rep["detres"] = {
        "status": "checked",
        "k": r.k,
        "holds": r.holds,
        "detM": render(r.detM),
        "res": render(r.res),
        "factor": _rat(factor),
    }
    if not r.holds:
        rep.fail()


def do_family(rep: Report, f: CurveF, asm: AssumptionsReport, family: str) -> bool:
    check = check_theorem_A(f, asm) if family == "A" else check_theorem_B(f, asm)
    rep["identities"] = rep["identities"] + [identity_payload(r) for r in check.identities]
    rep.warn(*check.warnings)
    if not check.verdict:
        rep.fail()
    return check.verdict


def do_oracle_a(rep: Report, f: CurveF, asm: AssumptionsReport) -> Optional[bool]:
    try:
        res = component_oracle_Q(f, asm)
    except DegenerateQ as exc:
        rep.warn(str(exc))
        rep.fail()
        return None
    d = res.data
    rep["q"] = {
        "Q": render(d.Q),
        "N": d.N,
        "coefficients": [render(c) for c in d.Qk],
        "orders": [_order(o) for o in res.orders],
        "verdict": res.verdict,
    }
    rep.warn(*res.warnings)
    if not res.verdict:
        rep.fail()
    return res.verdict


def do_associate(rep: Report, f: CurveF) -> Optional[MPoly]:
    try:
        a = construct_associated(f)
    except NotKeller as exc:
        rep.warn(f"NotKeller: {exc}")
        rep.fail()
        return None
    rep["associated"] = {
        "b": [render(b) for b in a.b],
        "g": render(a.g),
        "jac": _rat(a.jac_value),
        "R": _rat(a.R),
    }
    return a.g


def do_oracle_b(rep: Report, f: CurveF, bounds: DegreeBounds) -> bool:
    g = keller_oracle_linear(f, bounds)
    rep["oracle_b"] = {
        "degy_g": bounds.degy_g,
        "degx_b": bounds.degx_b,
        "exists": g is not None,
        "g": None if g is None else render(g),
    }
    if g is None:
        rep.fail()
    return g is not None


def do_m3(rep: Report, f: CurveF) -> None:
    if f.m != 3:
        raise UsageError(f"m3 needs a cubic in y, got m = {f.m}")
    if not f.a[0].is_zero():
        f = normalize_a1(f)
        rep.warn(f"a_1 != 0: normalized to {render(f.poly())}")
    r = identities_m3(f.a[1], f.a[2])
    names = ("((a2')^2*a2 + 3*(a3')^2)'", "a2''", "a3'''", "a3''")
    rep["m3"] = {
        "A3": r.A3,
        "B3": r.B3,
        "residuals": {n: render(p) for n, p in zip(names, r.residuals)},
    }
    if not (r.A3 and r.B3):
        rep.fail()


def do_scan(rep: Report, args) -> None:
    if args.m is None:
        raise UsageError("scan needs --m")
    lo, hi = _parse_pair(args.range or "-1:1", "--range")
    try:
        s = implication_scan(args.m, lo, hi, exhaustive=args.exhaustive, samples=args.samples, seed=args.seed)
    except BudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    rep["scan"] = {
        "m": s.m,
        "range": [s.lo, s.hi],
        "exhaustive": s.exhaustive,
        "tested": s.tested,
        "b_pass": s.b_pass,
        "a_pass": s.a_pass,
        "counterexamples": s.counterexamples,
        "m3_mismatches": s.m3_mismatches,
    }
    if s.counterexamples or s.m3_mismatches:
        rep.fail()


def do_report(rep: Report, f: CurveF, asm: AssumptionsReport, bounds: DegreeBounds) -> None:
    # assumption failures are reported as warnings here, not as a failed verdict
    rep["assumptions"] = assumptions_payload(asm)
    rep.warn(*asm.warnings())
    do_normalize(rep, f)
    do_matrix(rep, f)
    do_detres(rep, f)
    do_family(rep, f, asm, "A")
    b_ok = do_family(rep, f, asm, "B")
    q_verdict = do_oracle_a(rep, f, asm)
    if b_ok:
        do_associate(rep, f)
    lin = do_oracle_b(rep, f, bounds)
    a_ok = all(r["holds"] for r in rep["identities"] if r["family"] == "A")
    if q_verdict is not None and q_verdict != a_ok:
        rep.warn(f"identities (A) verdict {a_ok} differs from the Q-order oracle verdict {q_verdict}")
    if lin != b_ok:
        rep.warn(f"identities (B) verdict {b_ok} differs from the linear oracle verdict {lin}")
    if f.m == 3:
        do_m3(rep, f)
    rep["verdict"] = a_ok and b_ok and bool(rep["detres"]["holds"])


# -- argument handling ------------------------------------------------------------

def _parse_pair(text: str, flag: str):
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"{flag} expects two integers as a:b, got {text!r}") from exc
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kellerid", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--poly", help="polynomial monic in y, e.g. 'y^3 + 3*x*y + x'")
    p.add_argument("--file", help="file with an expression or a JSON {m, a} object")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--m", type=int, help="y-degree for scan")
    p.add_argument("--range", help="coefficient range lo:hi for scan")
    p.add_argument("--exhaustive", action="store_true", help="enumerate every instance in scan")
    p.add_argument("--samples", type=int, default=200, help="random instances when scan is not exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bounds", help="degy:degx caps for the linear oracle (default m:2m^2)")
    return p


def _join_negative_values(argv: List[str]) -> List[str]:
    # argparse reads "--range -1:1" as two options
    out = []
    it = iter(range(len(argv)))
    for i in it:
        tok = argv[i]
        if tok in ("--range", "--bounds") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(tok)
    return out


def _load(args) -> tuple:
    if args.poly is not None and args.file is not None:
        raise UsageError("give either --poly or --file, not both")
    if args.poly is not None:
        return parse_curve(args.poly)
    if args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            return load_curve(fh.read())
    raise UsageError(f"{args.command} needs --poly or --file")


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = "json" if args.json else "text"
    try:
        rep = execute(args)
    except (UsageError, PolySyntaxError, NotMonicInY, AlgebraError, ValueError, OSError) as exc:
        print(f"kellerid: error: {exc}", file=stderr)
        return 2
    stdout.write(emit_report(rep, fmt))
    return 0 if rep["verdict"] else 1


def execute(args) -> Report:
    if args.command == "scan":
        rep = Report("scan")
        do_scan(rep, args)
        return rep
    f, warnings = _load(args)
    rep = Report(args.command, render(f.poly()))
    rep.warn(*warnings)
    bounds = DegreeBounds.default(f.m)
    if args.bounds:
        bounds = DegreeBounds(*_parse_pair(args.bounds, "--bounds"))
    cmd = args.command
    if cmd == "m3":
        do_m3(rep, f)
        return rep
    asm = check_main_assumptions(f)
    if cmd == "assumptions":
        do_assumptions(rep, f, asm)
    elif cmd == "normalize":
        do_normalize(rep, f)
    elif cmd == "matrix":
        do_matrix(rep, f)
    elif cmd == "detres":
        do_detres(rep, f)
    elif cmd == "check-a":
        do_family(rep, f, asm, "A")
    elif cmd == "check-b":
        do_family(rep, f, asm, "B")
    elif cmd == "associate":
        do_associate(rep, f)
    elif cmd == "oracle-a":
        do_oracle_a(rep, f, asm)
    elif cmd == "oracle-b":
        do_oracle_b(rep, f, bounds)
    elif cmd == "report":
        do_report(rep, f, asm, bounds)
    return rep


def main() -> None:
    sys.exit(run())
