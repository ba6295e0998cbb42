"""Command-line front end. Every command prints one JSON document on stdout.

Exit codes: 0 success, 1 a law failed, 2 usage, parse or validation error.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import laws as law_suite
from .dgm_env import (
    all_paths,
    dgm_satisfies,
    factor_is_functor,
    factor_through_quotient,
    path_id,
    quotient_category,
)
from .errors import TruthkitError, ValidationError
from .fol_struc import dataset_morphism_check, dataset_to_structure, frames_to_structure, \
    structure_to_dataset, validate_structure
from .serialize import (
    category_to_json,
    dumps,
    equations_from_json,
    graph_from_json,
    load_json,
    parse_input,
    to_json,
)
from .theory_flow import Sequent, closure_enumerate, dir_flow, entails, inv_flow, join_theories
from .truth_core import extent, intent, intent_enumerate, join_logic, nat_logic, satisfies, \
    sum_normal_instances

VERBS = ("close", "entails", "intent", "extent", "satisfies", "flow", "join", "sum", "nat",
         "laws", "dgm", "fol")


@dataclass
class RunReport:
    verb: str
    status: int
    payload: Any
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)


def _names(text: str | None) -> list[str]:
    if not text:
        return []
    return [t for t in (s.strip() for s in text.split(",")) if t]


def _close(a) -> Any:
    return {"closure": to_json(closure_enumerate(parse_input(a.thy, "theory")))}


def _entails(a) -> Any:
    T = parse_input(a.thy, "theory")
    if a.sequent:
        q = parse_input(a.sequent, "sequent")
    else:
        q = Sequent(_names(a.lhs), _names(a.rhs))
    return {"entails": entails(T, q), "sequent": to_json(q)}


def _intent(a) -> Any:
    M = parse_input(a.cls, "classification")
    return {"intent": to_json(intent_enumerate(M) if a.closed else intent(M))}


def _extent(a) -> Any:
    return {"extent": to_json(extent(parse_input(a.thy, "theory")))}


def _satisfies(a) -> Any:
    return {"satisfies": satisfies(parse_input(a.cls, "classification"), parse_input(a.thy, "theory"))}


def _flow(a) -> Any:
    f = parse_input(a.map, "map")
    T = parse_input(a.thy, "theory")
    result = dir_flow(f, T) if a.direct else inv_flow(f, T)
    return {"theory": to_json(result)}


def _join(a) -> Any:
    if a.logic:
        return {"logic": to_json(join_logic(parse_input(a.logic, "logic")))}
    if not a.thy or len(a.thy) != 2:
        raise ValidationError("join needs --logic, or --thy given exactly twice", "thy")
    T1, T2 = (parse_input(p, "theory") for p in a.thy)
    return {"theory": to_json(join_theories(T1, T2))}


def _sum(a) -> Any:
    return {"classification": to_json(sum_normal_instances(parse_input(a.logic, "logic")))}


def _nat(a) -> Any:
    return {"logic": to_json(nat_logic(parse_input(a.cls, "classification")))}


def _laws(a) -> tuple[Any, int]:
    reports = law_suite.run_suite(a.suite, a.seed, a.max_types, a.trials)
    status = 0 if all(r.passed for r in reports) else 1
    return [r.to_json() for r in reports], status


def _dgm(a) -> Any:
    if a.action == "paths":
        G = parse_input(a.graph, "graph")
        return {"paths": [path_id(p) for p in all_paths(G, a.length_cap)]}
    if a.action == "quotient":
        G = parse_input(a.graph, "graph")
        eqs = _equations(a.equations, G)
        Q = quotient_category(G, eqs, a.length_cap)
        return {"category": category_to_json(Q.category), "classes": dict(sorted(Q.canonical.items()))}
    D = parse_input(a.diagram, "diagram")
    eqs = _equations(a.equations, D.graph)
    if a.action == "satisfies":
        results = [{"equation": to_json(eq), "satisfies": dgm_satisfies(D, eq)} for eq in eqs]
        return {"satisfies": all(r["satisfies"] for r in results), "equations": results}
    F = factor_through_quotient(D, eqs, a.length_cap)
    return {"class_map": dict(sorted(F.class_map.items())), "unique": F.unique,
            "functor": factor_is_functor(F, D)}


def _equations(path: str | None, G) -> list:
    if not path:
        return []
    return equations_from_json(load_json(path), G)


def _fol(a) -> Any:
    if a.action == "validate":
        violations = validate_structure(parse_input(a.structure, "structure"))
        return {"valid": not violations, "violations": to_json(violations)}
    if a.action == "from-frames":
        return {"structure": to_json(frames_to_structure(parse_input(a.frames, "frames"), a.entity_type))}
    if a.action == "to-dataset":
        return {"dataset": to_json(structure_to_dataset(parse_input(a.structure, "structure")))}
    if a.action == "from-dataset":
        return {"structure": to_json(dataset_to_structure(parse_input(a.dataset, "dataset")))}
    H = parse_input(a.functor, "functor")
    F = parse_input(a.source, "dataset")
    G = parse_input(a.target, "dataset")
    return {"morphism": dataset_morphism_check(H, F, G)}


_HANDLERS = {
    "close": _close, "entails": _entails, "intent": _intent, "extent": _extent,
    "satisfies": _satisfies, "flow": _flow, "join": _join, "sum": _sum, "nat": _nat,
    "laws": _laws, "dgm": _dgm, "fol": _fol,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("--timing", action="store_true", help="report wall time on stderr")
    common.add_argument("-o", "--output", help="write the JSON result to this file instead of stdout")

    p = argparse.ArgumentParser(prog="truthkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("close", parents=[common], help="enumerate the closure of a theory")
    s.add_argument("--thy", required=True)

    s = sub.add_parser("entails", parents=[common], help="does a theory entail a sequent")
    s.add_argument("--thy", required=True)
    s.add_argument("--lhs", help="comma-separated antecedent types")
    s.add_argument("--rhs", help="comma-separated succedent types")
    s.add_argument("--sequent", help="sequent JSON file, instead of --lhs/--rhs")

    s = sub.add_parser("intent", parents=[common], help="theory of a classification")
    s.add_argument("--cls", required=True)
    s.add_argument("--closed", action="store_true", help="enumerate every entailed sequent")

    s = sub.add_parser("extent", parents=[common], help="classification of satisfying subsets")
    s.add_argument("--thy", required=True)

    s = sub.add_parser("satisfies", parents=[common], help="does a classification satisfy a theory")
    s.add_argument("--cls", required=True)
    s.add_argument("--thy", required=True)

    s = sub.add_parser("flow", parents=[common], help="translate a theory along a type map")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--direct", action="store_true")
    g.add_argument("--inverse", action="store_true")
    s.add_argument("--map", required=True)
    s.add_argument("--thy", required=True)

    s = sub.add_parser("join", parents=[common], help="join two theories, or the join logic")
    s.add_argument("--thy", action="append")
    s.add_argument("--logic")

    s = sub.add_parser("sum", parents=[common], help="normal instances of a logic")
    s.add_argument("--logic", required=True)

    s = sub.add_parser("nat", parents=[common], help="natural logic of a classification")
    s.add_argument("--cls", required=True)

    s = sub.add_parser("laws", parents=[common], help="run the law suite")
    s.add_argument("--suite", default="all", help="a law id or 'all'")
    s.add_argument("--seed", type=int, default=law_suite.DEFAULT_SEED)
    s.add_argument("--max-types", type=int, default=law_suite.DEFAULT_MAX_TYPES)
    s.add_argument("--trials", type=int, default=law_suite.DEFAULT_TRIALS)

    s = sub.add_parser("dgm", parents=[common], help="graphs, diagrams and quotients")
    s.add_argument("action", choices=("paths", "satisfies", "quotient", "factor"))
    s.add_argument("--graph")
    s.add_argument("--diagram")
    s.add_argument("--equations")
    s.add_argument("--length-cap", type=int)

    s = sub.add_parser("fol", parents=[common], help="first-order structures and datasets")
    s.add_argument("action", choices=("validate", "from-frames", "to-dataset", "from-dataset",
                                      "check-morphism"))
    s.add_argument("--structure")
    s.add_argument("--frames")
    s.add_argument("--entity-type", default="Entity")
    s.add_argument("--dataset")
    s.add_argument("--functor")
    s.add_argument("--source")
    s.add_argument("--target")
    return p


_REQUIRED = {
    ("dgm", "paths"): ("graph",), ("dgm", "quotient"): ("graph",),
    ("dgm", "satisfies"): ("diagram",), ("dgm", "factor"): ("diagram",),
    ("fol", "validate"): ("structure",), ("fol", "from-frames"): ("frames",),
    ("fol", "to-dataset"): ("structure",), ("fol", "from-dataset"): ("dataset",),
    ("fol", "check-morphism"): ("functor", "source", "target"),
}


def run_command(args: argparse.Namespace) -> RunReport:
    start = time.perf_counter()
    try:
        for name in _REQUIRED.get((args.verb, getattr(args, "action", None)), ()):
            if not getattr(args, name):
                raise ValidationError(f"--{name} is required for {args.verb} {args.action}", name)
        result = _HANDLERS[args.verb](args)
        payload, status = result if isinstance(result, tuple) else (result, 0)
    except TruthkitError as e:
        payload = {"error": type(e).__name__, "message": str(e)}
        if getattr(e, "field", None):
            payload["field"] = e.field
        status = 2
    return RunReport(args.verb, status, payload, time.perf_counter() - start)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    report = run_command(args)
    text = dumps(report.payload, args.pretty)
    if args.output and report.status != 2:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.timing:
        print(dumps({"verb": report.verb, "wall_time": round(report.wall_time, 6)}), file=sys.stderr)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
