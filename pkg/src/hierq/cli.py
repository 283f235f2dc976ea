"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 non-hierarchical
query where the algorithm was requested, 4 oracle cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import oracles
from .applications import (
    BsmInstance,
    ShapleyInstance,
    bag_set_maximize,
    count_sat,
    prob_query_eval,
    shapley_all,
    shapley_value,
)
from .engine import NonHierarchical, plan_elimination
from .errors import (
    DuplicateFact,
    HierqError,
    InstanceTooLarge,
    NonHierarchicalQuery,
    OverlapError,
    ParseError,
    ProbabilityOutOfRange,
    QueryError,
    SchemaMismatch,
    SelfLoop,
)
from .hardness import bcbs_brute, bcbs_reduce
from .parsing import (
    format_facts,
    parse_facts_file,
    parse_graph_file,
    parse_query_file,
)
from .query import Fact, Query, check_schema

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NONHIER, EXIT_CAP = 0, 1, 2, 3, 4

_PARSE_ERRORS = (
    ParseError,
    DuplicateFact,
    QueryError,
    SchemaMismatch,
    ProbabilityOutOfRange,
    SelfLoop,
    OverlapError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


def decimal_12(x: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 12
        value = Decimal(x.numerator) / Decimal(x.denominator)
    return format(value.normalize(), "f") if value else "0"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _query(path: str) -> Query:
    return parse_query_file(_read(path))


def _facts(path: str, q: Query, mode: str = "plain"):
    parsed = parse_facts_file(_read(path), mode)
    check_schema(q, parsed.facts)
    return parsed


def _one_fact(text: str) -> Fact:
    text = text.strip()
    if not text.endswith("."):
        text += "."
    (fact,) = parse_facts_file(text).facts
    return fact


def _cap(args, default: int) -> int:
    return args.cap if getattr(args, "cap", None) is not None else default


def _fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ------------------------------------------------------------ subcommands


def cmd_check(args) -> tuple[dict, list[str]]:
    q = _query(args.query)
    plan = plan_elimination(q)
    if isinstance(plan, NonHierarchical):
        lines = ["not hierarchical", *map(str, plan.steps), f"stuck: {plan}"]
        return {
            "hierarchical": False,
            "steps": [str(s) for s in plan.steps],
            "stuck": str(plan),
        }, lines
    lines = ["hierarchical", *map(str, plan)]
    return {"hierarchical": True, "steps": [str(s) for s in plan], "stuck": None}, lines


def cmd_prob(args):
    q = _query(args.query)
    pd = _facts(args.probdb, q, "prob")
    if args.oracle:
        p = oracles.oracle_prob(q, pd, cap=_cap(args, oracles.PROB_CAP))
    else:
        p = prob_query_eval(q, pd)
    return {"probability": p, "method": _method(args)}, [repr(p)]


def cmd_bsm(args):
    q = _query(args.query)
    inst = BsmInstance(_facts(args.db, q), _facts(args.repairdb, q), args.budget)
    if args.oracle:
        cap = _cap(args, oracles.BSM_CAP)
        vector = [oracles.oracle_bsm(q, inst, i, cap=cap) for i in range(inst.theta + 1)]
    else:
        vector = list(bag_set_maximize(q, inst))
    value = vector[inst.theta]
    out = {"value": value, "theta": inst.theta, "vector": vector, "method": _method(args)}
    lines = [" ".join(map(str, vector)) if args.full_vector else str(value)]
    if args.tau is not None:
        out["tau"] = args.tau
        out["decision"] = value >= args.tau
        lines.append("true" if value >= args.tau else "false")
    return out, lines


def _shapley_instance(args) -> tuple[Query, ShapleyInstance]:
    q = _query(args.query)
    return q, ShapleyInstance(_facts(args.exo, q), _facts(args.endo, q))


def cmd_shapley(args):
    q, inst = _shapley_instance(args)
    cap = _cap(args, oracles.SHAPLEY_CAP)
    if args.fact is not None:
        f = _one_fact(args.fact)
        if args.oracle:
            values = {f: oracles.oracle_shapley(q, inst, f, cap=cap)}
        else:
            values = {f: shapley_value(q, inst, f)}
    elif args.oracle:
        values = oracles.oracle_shapley_all(q, inst, cap=cap)
    else:
        values = shapley_all(q, inst)
    rows = [
        {"fact": str(f), "value": _fraction(v), "decimal": decimal_12(v)}
        for f, v in sorted(values.items())
    ]
    if args.fact is not None:
        (row,) = rows
        return {**row, "method": _method(args)}, [f"{row['value']} {row['decimal']}"]
    lines = [f"{r['fact']}\t{r['value']}\t{r['decimal']}" for r in rows]
    return {"values": rows, "method": _method(args)}, lines


def cmd_sharpsat(args):
    q, inst = _shapley_instance(args)
    if args.oracle:
        cap = _cap(args, oracles.SHARP_SAT_CAP)
        counts = [
            oracles.oracle_sharp_sat(q, inst, k, cap=cap)
            for k in range(len(inst.d_endo) + 1)
        ]
    else:
        counts = count_sat(q, inst)
    return {"counts": counts, "method": _method(args)}, [" ".join(map(str, counts))]


def cmd_reduce_bcbs(args):
    g = parse_graph_file(_read(args.graph))
    q = _query(args.query)
    inst, tau = bcbs_reduce(g, args.k, q)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "query.txt").write_text(q.to_text() + "\n", encoding="utf-8")
    (out_dir / "d.facts").write_text(format_facts(inst.d), encoding="utf-8")
    (out_dir / "dr.facts").write_text(format_facts(inst.d_repair), encoding="utf-8")
    out = {
        "theta": inst.theta,
        "tau": tau,
        "database": str(out_dir / "d.facts"),
        "repair": str(out_dir / "dr.facts"),
        "database_size": len(inst.d),
        "repair_size": len(inst.d_repair),
    }
    return out, [f"theta {inst.theta}", f"tau {tau}", f"database {out['database']}", f"repair {out['repair']}"]


def cmd_bcbs_brute(args):
    g = parse_graph_file(_read(args.graph))
    found = bcbs_brute(g, args.k, cap=_cap(args, 12))
    return {"biclique": found, "k": args.k}, ["true" if found else "false"]


def _method(args) -> str:
    return "oracle" if args.oracle else "engine"


# ------------------------------------------------------------ argument parsing


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a single JSON object")
    common.add_argument("--oracle", action="store_true", default=argparse.SUPPRESS,
                        help="use the brute-force oracle instead of the engine")
    common.add_argument("--cap", type=_positive, default=argparse.SUPPRESS,
                        help="override the oracle size cap")

    parser = _Parser(prog="hierq", parents=[common],
                     description="Unified evaluation of hierarchical conjunctive queries.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="run the elimination procedure")
    p.add_argument("query")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("prob", parents=[common], help="probabilistic query evaluation")
    p.add_argument("query")
    p.add_argument("probdb")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("bsm", parents=[common], help="bag-set maximization")
    p.add_argument("query")
    p.add_argument("db")
    p.add_argument("repairdb")
    p.add_argument("--budget", type=_natural, required=True)
    p.add_argument("--tau", type=_natural)
    p.add_argument("--full-vector", action="store_true")
    p.set_defaults(func=cmd_bsm)

    p = sub.add_parser("shapley", parents=[common], help="Shapley values of endogenous facts")
    p.add_argument("query")
    p.add_argument("exo")
    p.add_argument("endo")
    p.add_argument("--fact", help='single fact, e.g. "R(1)"')
    p.set_defaults(func=cmd_shapley)

    p = sub.add_parser("sharpsat", parents=[common], help="#Sat counts by subset size")
    p.add_argument("query")
    p.add_argument("exo")
    p.add_argument("endo")
    p.set_defaults(func=cmd_sharpsat)

    p = sub.add_parser("reduce-bcbs", parents=[common],
                       help="build a bag-set decision instance from a graph")
    p.add_argument("graph")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_reduce_bcbs)

    p = sub.add_parser("bcbs-brute", parents=[common], help="exhaustive biclique search")
    p.add_argument("graph")
    p.add_argument("--k", type=_positive, required=True)
    p.set_defaults(func=cmd_bcbs_brute)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("hierq: a subcommand is required")
    except UsageError as exc:
        print(exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    args.json = getattr(args, "json", False)
    args.oracle = getattr(args, "oracle", False)
    args.cap = getattr(args, "cap", None)

    try:
        payload, lines = args.func(args)
    except UsageError as exc:
        return _fail(args, EXIT_USAGE, str(exc))
    except _PARSE_ERRORS as exc:
        return _fail(args, EXIT_PARSE, str(exc))
    except NonHierarchicalQuery as exc:
        return _fail(args, EXIT_NONHIER, str(exc))
    except InstanceTooLarge as exc:
        return _fail(args, EXIT_CAP, str(exc))
    except HierqError as exc:
        return _fail(args, EXIT_USAGE, str(exc))

    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return EXIT_OK


def _fail(args, code: int, message: str) -> int:
    if args.json:
        print(json.dumps({"error": message, "exit_code": code}, sort_keys=True))
    print(f"error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
