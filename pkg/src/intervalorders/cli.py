"""Command-line front end.

Every command prints one JSON report ``{command, inputs, result, witnesses,
certificates, counts}``.  Exit status: 0 when the property holds / the
problem is feasible / the input is valid, 1 for a definite negative (the
report carries the witness or certificate), 2 for bad input.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from fractions import Fraction

from . import formats
from .audit import audit_interval_orders, audit_biorders
from .biorders import (
    NotFerrersError,
    biorder_traces,
    biorder_weakly_continuous,
    check_ferrers_biorder,
    construct_biorder_representation,
    decide_continuous_biorder_representation,
)
from .demo import demo_lex
from .relations import (
    NotIntervalOrderError,
    check_axioms,
    is_total_preorder,
    strict_part,
    traces,
    trace_classes,
)
from .repcore import (
    check_io_separability,
    construct_representation,
    decide_continuous_representation,
    is_weakly_continuous,
    verify_almost_representation,
    verify_representation,
)
from .scales import scale_to_function, validate_scale


def new_report(command, inputs) -> dict:
    return {"command": command, "inputs": inputs, "result": {},
            "witnesses": {}, "certificates": {}, "counts": {}}


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (frozenset, set)):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, dict):
        return {str(_key(k)): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if hasattr(obj, "u") and hasattr(obj, "v"):
        return {"u": _jsonable(obj.u), "v": _jsonable(obj.v)}
    if hasattr(obj, "lhs") and hasattr(obj, "bound"):
        return str(obj)
    return obj


def _key(k):
    return ",".join(k) if isinstance(k, tuple) else k


def _matrix(R):
    return R.matrix_lines()


def _interval_failure(report, exc: NotIntervalOrderError):
    report["result"]["interval_order"] = False
    report["result"]["error"] = str(exc)
    if exc.witness:
        report["witnesses"]["ferrers"] = list(exc.witness)
    if exc.point:
        report["witnesses"]["not_reflexive_at"] = exc.point
    return 1


def cmd_check(args, report):
    R = formats.read(args.relation, formats.parse_relation)
    ax = check_axioms(R)
    report["result"].update({k: getattr(ax, k) for k in (
        "reflexive", "total", "transitive", "ferrers", "interval_order", "total_preorder")})
    if ax.ferrers_witness:
        report["witnesses"]["ferrers"] = list(ax.ferrers_witness)
    return 0 if ax.interval_order else 1


def cmd_traces(args, report):
    R = formats.read(args.relation, formats.parse_relation)
    star, starstar = traces(R)
    res = report["result"]
    res["star"] = _matrix(star)
    res["starstar"] = _matrix(starstar)
    res["star_total_preorder"] = is_total_preorder(star)
    res["starstar_total_preorder"] = is_total_preorder(starstar)
    if res["star_total_preorder"]:
        res["star_classes"] = [sorted(c) for c in trace_classes(R, "star")]
    if res["starstar_total_preorder"]:
        res["starstar_classes"] = [sorted(c) for c in trace_classes(R, "starstar")]
    return 0


def cmd_represent(args, report):
    R = formats.read(args.relation, formats.parse_relation)
    try:
        p = construct_representation(R)
    except NotIntervalOrderError as exc:
        return _interval_failure(report, exc)
    report["result"]["pair"] = p
    report["result"]["verified"] = verify_representation(R, p).holds
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(formats.format_function_pair(p, R.elements))
    return 0


def cmd_verify(args, report):
    R = formats.read(args.relation, formats.parse_relation)
    p = formats.read(args.pair, formats.parse_function_pair)
    check = (verify_almost_representation if args.almost else verify_representation)(R, p)
    report["result"]["kind"] = "almost" if args.almost else "representation"
    report["result"]["holds"] = check.holds
    if check.counterexample:
        report["witnesses"]["counterexample"] = list(check.counterexample)
    return 0 if check.holds else 1


def cmd_weakcont(args, report):
    R = formats.read(args.relation, formats.parse_relation)
    T = formats.read(args.topology, formats.parse_topology)
    if tuple(T.points) != R.elements:
        raise formats.ParseError("relation and topology list different points")
    try:
        weak = is_weakly_continuous(R, T)
    except NotIntervalOrderError as exc:
        return _interval_failure(report, exc)
    decision = decide_continuous_representation(R, T)
    report["result"].update({
        "weakly_continuous": weak.holds,
        "continuous_representation": decision.feasible,
        "pair": decision.pair,
    })
    report["witnesses"]["separating_pairs"] = weak.witnesses
    if weak.failing_pair:
        report["witnesses"]["failing_pair"] = list(weak.failing_pair)
        report["certificates"]["negative_cycle"] = weak.certificate
    if decision.certificate:
        report["certificates"]["representation_cycle"] = decision.certificate
    report["counts"]["strict_pairs"] = len(strict_part(R).pairs())
    return 0 if weak.holds else 1


def cmd_separable(args, report):
    R = formats.read(args.relation, formats.parse_relation)
    D = R.elements
    if args.dense:
        D = formats.read(args.dense, lambda text, source=None: formats.parse_labels(text))
        unknown = [d for d in D if d not in R.index]
        if unknown:
            raise formats.ParseError(f"unknown labels {unknown}", None, args.dense)
    try:
        sep = check_io_separability(R, D)
    except NotIntervalOrderError as exc:
        return _interval_failure(report, exc)
    report["result"]["holds"] = sep.holds
    report["result"]["dense_set"] = sorted(D)
    report["result"]["minimal_dense"] = sep.minimal_dense
    if sep.failing_strict_pair:
        report["witnesses"]["failing_strict_pair"] = list(sep.failing_strict_pair)
    return 0 if sep.holds else 1


def cmd_biorder(args, report):
    B = formats.read(args.biorder, formats.parse_biorder)
    res = report["result"]
    ferrers = check_ferrers_biorder(B)
    res["ferrers"] = ferrers.holds
    star, starstar = biorder_traces(B)
    res["trace_on_A"] = _matrix(star)
    res["trace_on_X"] = _matrix(starstar)
    status = 0
    try:
        res["pair"] = construct_biorder_representation(B, args.mode)
        res["mode"] = args.mode
    except NotFerrersError as exc:
        report["witnesses"]["ferrers"] = list(exc.witness)
        status = 1
    if (args.top_a is None) != (args.top_x is None):
        raise formats.ParseError("--top-a and --top-x must be given together")
    if args.top_a:
        TA = formats.read(args.top_a, formats.parse_topology)
        TX = formats.read(args.top_x, formats.parse_topology)
        if tuple(TA.points) != B.a_labels or tuple(TX.points) != B.x_labels:
            raise formats.ParseError("topology points must match the biorder's label sets")
        weak = biorder_weakly_continuous(B, TA, TX)
        decision = decide_continuous_biorder_representation(B, TA, TX)
        res["weakly_continuous"] = weak.holds
        res["continuous_representation"] = decision.feasible
        res["continuous_pair"] = decision.pair
        report["witnesses"]["separating_pairs"] = weak.witnesses
        if not weak.holds:
            report["witnesses"]["failing_pair"] = list(weak.failing_pair)
            report["certificates"]["negative_cycle"] = weak.certificate
            status = 1
    return status


def cmd_scale(args, report):
    T = formats.read(args.topology, formats.parse_topology)
    sc = formats.read(args.scale, formats.parse_scale, T)
    check = validate_scale(T, sc)
    report["result"]["valid"] = check.valid
    if not check.valid:
        report["witnesses"]["violation"] = check.violation
        report["witnesses"]["levels"] = list(check.levels or ())
        return 1
    if args.to_function:
        report["result"]["function"] = scale_to_function(sc)
    return 0


def cmd_audit(args, report):
    if args.biorder:
        rep = audit_biorders(args.size, "all" if args.all_topologies else "extremal")
    else:
        rep = audit_interval_orders(args.n, depth=args.depth)
    d = rep.to_dict()
    report["result"].update({"name": d["name"], "passed": d["passed"],
                             "violations": d["violations"], "notes": len(d["notes"])})
    report["counts"].update(d["counts"])
    return 0 if rep.passed else 1


def cmd_demo(args, report):
    res = demo_lex(args.denom)
    report["result"].update(res)
    report["counts"].update({k: res[k] for k in ("points", "ordered_pairs", "strict_pairs")})
    return 0 if res["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="intervalorders",
        description="Interval orders, biorders and their continuous representations.")
    ap.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    ap.add_argument("--no-timestamp", action="store_true",
                    help="omit the timestamp field so reports are byte-identical")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="axioms of a relation")
    p.add_argument("relation")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("traces", help="the two traces and their classes")
    p.add_argument("relation")
    p.set_defaults(func=cmd_traces)

    p = sub.add_parser("represent", help="staircase representation")
    p.add_argument("relation")
    p.add_argument("--out", help="write the function table to this file")
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify", help="check a function table against a relation")
    p.add_argument("relation")
    p.add_argument("pair")
    p.add_argument("--almost", action="store_true", help="check almost representation")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("weakcont", help="weak continuity and continuous representability")
    p.add_argument("relation")
    p.add_argument("topology")
    p.set_defaults(func=cmd_weakcont)

    p = sub.add_parser("separable", help="i.o. separability through a dense set")
    p.add_argument("relation")
    p.add_argument("--dense", help="file of whitespace-separated labels (default: all)")
    p.set_defaults(func=cmd_separable)

    p = sub.add_parser("biorder", help="Ferrers check, traces and representation of a biorder")
    p.add_argument("biorder")
    p.add_argument("--mode", choices=("strict", "weak"), default="strict")
    p.add_argument("--top-a")
    p.add_argument("--top-x")
    p.set_defaults(func=cmd_biorder)

    p = sub.add_parser("scale", help="validate a scale")
    p.add_argument("topology")
    p.add_argument("scale")
    p.add_argument("--to-function", action="store_true")
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("audit", help="exhaustive audits of the representation equivalences")
    p.add_argument("--n", type=int, default=3, help="largest number of points (<= 4)")
    p.add_argument("--depth", type=int, default=2, help="dyadic grid depth for scales")
    p.add_argument("--biorder", action="store_true", help="audit biorders instead of interval orders")
    p.add_argument("--size", type=int, default=3, help="largest side for --biorder (<= 3)")
    p.add_argument("--all-topologies", action="store_true",
                   help="with --biorder, use every topology pair, not just discrete/indiscrete")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("demo", help="worked examples")
    p.add_argument("example", choices=("lex",))
    p.add_argument("--denom", type=int, default=16, help="denominator bound of the grid")
    p.set_defaults(func=cmd_demo)
    return ap


def _inputs(args):
    skip = {"func", "verb", "output", "no_timestamp"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def execute(args) -> tuple[int, dict]:
    report = new_report(args.verb, _inputs(args))
    try:
        status = args.func(args, report)
    except (formats.ParseError, ValueError, KeyError) as exc:
        report["result"] = {"error": str(exc)}
        status = 2
    data = _jsonable(report)
    data["status"] = status
    if not args.no_timestamp:
        data["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return status, data


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    status, data = execute(args)
    text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
