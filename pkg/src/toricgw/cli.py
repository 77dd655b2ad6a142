"""Command line interface: ``toricgw build | verify | transform | reduce``.

Exit status: 0 when every check of the command passes, 1 when a check fails
(or a reduction stays unresolved), 2 for usage, parse and model errors.
"""
import argparse
import json
import re
import sys
import warnings
from typing import List, Optional, Tuple

from .checks import CHECKS, run_check
from .errors import BasisModelMismatch, HypothesisWarning, NonVdimZero, ParseError, ToricGWError
from .gw_calculus import (
    BaseTable, GWQuery, ReductionTrace, excess, reduce, theorem1_inverse,
    theorem1_map, theorem4_map, vdim,
)
from .intersection import ClassBasis, CurveClass
from .lattice_fan import (
    build_cube_fan, build_p3_fan, build_permutohedral_from_cube,
    build_permutohedral_from_p3, completeness_certificate,
)
from .toric_symmetry import cremona_cube, cremona_p3, tau_inverse, tau_pushforward

# ---------------------------------------------------------------------------
# class specs

_HEAD = re.compile(r"\s*(?P<side>[A-Za-z0-9]+)\s*\(\s*k\s*=\s*(?P<k>\d+)\s*(?P<lines>,\s*lines\s*)?\)\s*:")


def parse_class_spec(text: str) -> CurveClass:
    """Parse ``P3(k=6): d=3; a=1,1,1,1,1,1`` or ``CUBE(k=4,lines): d=1,1,1; a=..; b=..``.

    ``a`` may be omitted when ``k=0``; ``b`` is required exactly when the
    model carries the line blowups, except that ``b=0`` is accepted (and
    ignored) on models without them.  Errors report a 1-based column.
    """
    m = _HEAD.match(text)
    if not m:
        raise ParseError("expected MODEL(k=N): at the start", text, 1)
    side = m["side"].upper()
    if side not in ("P3", "CUBE"):
        raise ParseError(f"unknown model {m['side']!r}", text, m.start("side") + 1)
    basis = ClassBasis(side, int(m["k"]), bool(m["lines"]))
    groups, pos = {}, m.end()
    for part in text[m.end():].split(";"):
        col = pos + len(part) - len(part.lstrip()) + 1
        name, eq, body = part.strip().partition("=")
        name = name.strip()
        if not eq or name not in ("d", "a", "b"):
            raise ParseError("expected a group d=..., a=... or b=...", text, col)
        if name in groups:
            raise ParseError(f"duplicate group {name!r}", text, col)
        values, vcol = [], col + part.strip().index("=") + 1
        for tok in body.split(","):
            try:
                values.append(int(tok))
            except ValueError:
                raise ParseError(f"{tok.strip()!r} is not an integer", text, vcol + len(tok) - len(tok.lstrip())) from None
            vcol += len(tok) + 1
        groups[name] = (tuple(values), col)
        pos += len(part) + 1
    want = {"d": basis.n_degrees, "a": basis.points, "b": basis.n_lines}
    if "d" not in groups:
        raise ParseError("missing degree group d=...", text, m.end() + 1)
    if not basis.lines and groups.get("b", ((0,), 0))[0] == (0,):
        groups.pop("b", None)
    out = {}
    for name, n in want.items():
        values, col = groups.get(name, ((), m.end() + 1))
        if name not in groups and n == 0:
            values = ()
        if len(values) != n:
            raise ParseError(f"{basis.tag} needs {n} value(s) in group {name!r}, got {len(values)}", text, col)
        out[name] = values
    return CurveClass(basis, out["d"] + out["a"] + out["b"])


def format_class_spec(beta: CurveClass) -> str:
    d, a, b = beta.basis.split(beta.coefficients)
    parts = ["d=" + ",".join(map(str, d))]
    if a:
        parts.append("a=" + ",".join(map(str, a)))
    if beta.basis.lines:
        parts.append("b=" + ",".join(map(str, b)))
    return f"{beta.basis.tag}: " + "; ".join(parts)


# ---------------------------------------------------------------------------
# reports

def _text(value, indent=0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        out = []
        for v in value:
            if isinstance(v, dict):
                sub = _text(v, indent + 1)
                out.append(pad + "- " + sub[0].lstrip())
                out.extend(sub[1:])
            else:
                out.append(f"{pad}- {_scalar(v)}")
        return out
    return [pad + _scalar(value)]


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "pass" if v else "FAIL"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def emit(report: dict, fmt: str, stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(_jsonable(report), indent=2) + "\n")
    else:
        stream.write("\n".join(_text(report)) + "\n")


# ---------------------------------------------------------------------------
# commands

BUILDERS = {
    "p3": build_p3_fan,
    "cube": build_cube_fan,
    "perm-p3": build_permutohedral_from_p3,
    "perm-cube": build_permutohedral_from_cube,
}


def cmd_build(args) -> Tuple[dict, int]:
    fan = BUILDERS[args.model]()
    cert = completeness_certificate(fan)
    smooth = fan.is_smooth()
    report = {
        "command": f"build {args.model}",
        "rays": {label: tuple(v) for label, v in zip(fan.labels, fan.rays)},
        "max_cones": [" ".join(fan.cone_labels(c)) for c in fan.max_cones],
        "f_vector": tuple(fan.f_vector),
        "smooth": smooth,
        "complete": cert["complete"],
    }
    if cert["problems"]:
        report["problems"] = [str(p) for p in cert["problems"]]
    return report, 0 if smooth and cert["complete"] else 1


def _verify_report(name: str, result: dict) -> dict:
    result = dict(result)
    passed = result.pop("passed")
    if name == "iso":
        result["entries"] = [{"class": n, "pushforward": got, "table": want, "match": ok}
                             for n, got, want, ok in result["entries"]]
    if name == "zeta":
        result["columns"] = [{"class": n, "transport": list(t), "closed_form": list(c)}
                             for n, t, c in result["columns"]]
    return {"command": f"verify {name}", **result, "result": passed}


def cmd_verify(args) -> Tuple[dict, int]:
    result = run_check(args.check, args.seed, args.trials)
    return _verify_report(args.check, result), 0 if result["passed"] else 1


RULES = {
    "cremona-p3": cremona_p3,
    "cremona-cube": cremona_cube,
    "tau": tau_pushforward,
    "tau-inverse": tau_inverse,
    "thm1": theorem1_map,
    "thm1-inverse": theorem1_inverse,
    "thm4": theorem4_map,
}


def cmd_transform(args) -> Tuple[dict, int]:
    beta = parse_class_spec(args.spec)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", HypothesisWarning)
        image = RULES[args.rule](beta)
    report = {
        "command": f"transform {args.rule}",
        "input": format_class_spec(beta),
        "output": format_class_spec(image),
        "output_class": str(image),
        "warnings": [str(w.message) for w in caught if issubclass(w.category, HypothesisWarning)],
    }
    return report, 0


def _trace_report(trace: ReductionTrace) -> dict:
    steps = []
    for s in trace.steps:
        row = {"rule": s.rule, "before": format_class_spec(s.before.beta),
               "after": format_class_spec(s.after.beta), "status": s.status}
        if s.before.point_insertions != s.after.point_insertions:
            row["points"] = f"{s.before.point_insertions} -> {s.after.point_insertions}"
        if s.params:
            row["params"] = {k: v for k, v in s.params}
        if s.note:
            row["note"] = s.note
        steps.append(row)
    return {"steps": steps, "outcome": str(trace.outcome)}


def cmd_reduce(args) -> Tuple[dict, int]:
    beta = parse_class_spec(args.spec)
    table = BaseTable.from_file(args.table) if args.table else BaseTable.default()
    q = GWQuery(beta.basis, args.genus, beta, args.points)
    report = {
        "command": "reduce",
        "query": {"genus": args.genus, "points": args.points, "class": format_class_spec(beta)},
        "vdim": vdim(q),
        "excess": excess(q),
    }
    trace = reduce(q, table)
    report.update(_trace_report(trace))
    return report, 0 if trace.resolved else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised checks")
    common.add_argument("--trials", type=int, default=1000, help="number of random classes")
    common.add_argument("--table", help="base table file for reduce")

    p = argparse.ArgumentParser(prog="toricgw",
                                description="Toric blowups of P^3 and (P^1)^3 and their curve-class correspondences.")
    sub = p.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", parents=[common], help="construct a fan and certify it")
    b.add_argument("model", choices=sorted(BUILDERS))
    v = sub.add_parser("verify", parents=[common], help="run a named check")
    v.add_argument("check", choices=list(CHECKS))
    t = sub.add_parser("transform", parents=[common], help="apply a coefficient map to a class")
    t.add_argument("rule", choices=list(RULES))
    t.add_argument("spec", help='class spec, e.g. "P3(k=6): d=3; a=1,1,1,1,1,1"')
    r = sub.add_parser("reduce", parents=[common], help="reduce a stationary query to the base table")
    r.add_argument("--genus", type=int, default=0)
    r.add_argument("--points", type=int, default=0)
    r.add_argument("spec")
    return p


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "transform": cmd_transform, "reduce": cmd_reduce}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        report, status = COMMANDS[args.command](args)
    except (ParseError, BasisModelMismatch, NonVdimZero, ValueError, ToricGWError) as exc:
        emit({"command": args.command, "error": type(exc).__name__, "message": str(exc)}, args.format, sys.stderr)
        return 2
    emit(report, args.format)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
