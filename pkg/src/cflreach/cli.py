"""``cflreach`` command line.

Exit codes: 0 success (negative answers included), 1 verification
disagreement, 2 usage error, 3 malformed input file.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .grammar import EPS_PRIME, GrammarError, dyck_grammar, lift_epsilon, parse_grammar, to_cnf
from .graph import EPS_LABEL, GraphFormatError, LabeledGraph, SubdivisionGraph, WeightedLabeledGraph, parse_graph
from .instances import InstanceFormatError, parse_aemono, parse_led, parse_ov, parse_triangle
from .oracles import OracleError, oracle_report
from .pds import PdsError, parse_pds, search
from .recognizer import cyk_recognize
from .reductions import (
    KINDS,
    aemono_to_pds,
    aemono_to_subdivision_cflr,
    led_to_weighted_cflr,
    ov_to_dyck2,
    subdiv_instance,
    triangle_to_dyck1,
    triangle_to_pds,
    write_instance,
)
from .solvers import NegativeWeightError, all_pairs_reach, bounded_path_reach, st_reach, weighted_st_reach

SEED_ENV = "CFLREACH_SEED"

INPUT_ERRORS = (GrammarError, GraphFormatError, PdsError, InstanceFormatError, OSError, UnicodeDecodeError)


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    seed: int = 0
    trials: int = 50
    max_n: int = 8
    output: str | None = None
    verbosity: int = 0


def default_seed() -> int:
    try:
        return int(os.environ.get(SEED_ENV, "0"))
    except ValueError:
        return 0


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(parser, path: str):
    try:
        return parser(_read(path))
    except INPUT_ERRORS as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(doc) -> None:
    print(json.dumps(doc, sort_keys=True))


def _word(text: str) -> tuple:
    """Whitespace-separated tokens if any space is present, else one symbol per character."""
    return tuple(text.split()) if any(ch.isspace() for ch in text.strip()) else tuple(text.strip())


def _prepare(g, d):
    """CNF grammar plus graph, lifting the grammar when the graph has eps edges."""
    if isinstance(d, SubdivisionGraph):
        d = d.base
    base = d.base if isinstance(d, WeightedLabeledGraph) else d
    g = to_cnf(g)
    if EPS_LABEL in base.labels or EPS_PRIME in base.labels:
        relabeled = base.relabel({EPS_LABEL: EPS_PRIME})
        d = WeightedLabeledGraph(relabeled, d.weights) if isinstance(d, WeightedLabeledGraph) else relabeled
        g = lift_epsilon(g)
    return g, d


# ---------------------------------------------------------------------------
# subcommands


def cmd_recognize(args) -> int:
    g = _load(parse_grammar, args.grammar)
    word = _word(args.word)
    try:
        member, _ = cyk_recognize(to_cnf(g), word)
    except GrammarError as exc:
        raise InputError(str(exc)) from None
    _emit({"member": member})
    return 0


def cmd_reach(args) -> int:
    g = _load(parse_grammar, args.grammar)
    d = _load(parse_graph, args.graph)
    g, d = _prepare(g, d)
    try:
        if args.weighted:
            if not isinstance(d, WeightedLabeledGraph):
                d = WeightedLabeledGraph(d, (1,) * len(d.edges))
            if args.st is None:
                raise InputError("--weighted needs --st S T")
            _emit({"weight": weighted_st_reach(g, d, *args.st)})
            return 0
        if isinstance(d, WeightedLabeledGraph):
            d = d.base
        if args.bounded is not None:
            pairs = bounded_path_reach(g, d, args.bounded)
            if args.st is not None:
                _emit({"reachable": tuple(args.st) in pairs})
            else:
                _emit({"pairs": sorted(map(list, pairs))})
            return 0
        if args.st is not None:
            _emit({"reachable": st_reach(g, d, *args.st)})
        else:
            _emit({"pairs": [list(p) for p in all_pairs_reach(g, d).pairs()]})
    except NegativeWeightError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return 0


def cmd_pds_reach(args) -> int:
    p = _load(parse_pds, args.pds)
    try:
        res = search(p, args.source, bound=args.bound)
        if not 0 <= args.target < p.n_states:
            raise PdsError(f"state {args.target} out of range")
    except PdsError as exc:
        raise InputError(str(exc)) from None
    _emit({"reachable": args.target in res.reached, "visited": res.visited})
    return 0


def _build(kind: str, args):
    src = args.input
    if kind == "triangle-dyck1":
        return triangle_to_dyck1(_load(parse_triangle, src))
    if kind == "triangle-pds":
        return triangle_to_pds(_load(parse_triangle, src))
    if kind == "ov-dyck2":
        return ov_to_dyck2(_load(parse_ov, src))
    if kind == "aemono-pds":
        return aemono_to_pds(_load(parse_aemono, src))
    if kind == "aemono-sub":
        return aemono_to_subdivision_cflr(_load(parse_aemono, src))
    if kind == "led-wcflr":
        return led_to_weighted_cflr(_load(parse_led, src))
    if kind == "subdiv":
        if not args.grammar:
            raise InputError("subdiv needs --grammar")
        sd = _load(parse_graph, src)
        if not isinstance(sd, SubdivisionGraph):
            raise InputError(f"{src}: graph has no 'ordinary:' section")
        return subdiv_instance(sd, _load(parse_grammar, args.grammar), max_k=args.max_k)
    raise AssertionError(kind)


def cmd_reduce(args) -> int:
    try:
        ri = _build(args.kind, args)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    files = write_instance(ri, args.out)
    _emit({"kind": ri.kind, "files": sorted(p.name for p in files), "query": ri.query})
    return 0


def cmd_verify(args) -> int:
    from .harness import VerifyConfig, verify

    report = verify(VerifyConfig(args.kind, args.trials, args.seed, args.max_n))
    _emit(report)
    return 1 if report["failures"] else 0


ORACLE_PARSERS = {"triangle": parse_triangle, "ov": parse_ov, "aemono": parse_aemono, "led": parse_led}


def cmd_oracle(args) -> int:
    text = _read(args.input)
    try:
        inst = ORACLE_PARSERS[args.name](text)
        rep = oracle_report(args.name, inst, text, radius=args.radius)
    except (InstanceFormatError, OracleError, GrammarError) as exc:
        raise InputError(str(exc)) from None
    _emit(rep.to_json())
    return 0


def bench_grammar():
    return to_cnf(dyck_grammar(2))


def run_bench(sizes, seeds: int, density: float, seed: int, timing: bool = True) -> dict:
    g = bench_grammar()
    labels = sorted(g.terminals)
    bound_factor = len(g.terminals) + len(g.nonterminals)
    runs = []
    for n in sizes:
        for s in range(seeds):
            rng = random.Random(f"{seed}:bench:{n}:{s}")
            m = int(density * n)
            edges = tuple((rng.randrange(n), rng.choice(labels), rng.randrange(n)) for _ in range(m))
            d = LabeledGraph(n, edges)
            t0 = time.perf_counter()
            rel = all_pairs_reach(g, d)
            run = {"n": n, "seed": s, "edges": m, "pops": rel.pops, "pop_bound": bound_factor * n * n,
                   "facts": len(rel.facts)}
            if timing:
                run["seconds"] = round(time.perf_counter() - t0, 4)
            runs.append(run)
    mean = {n: sum(r["pops"] for r in runs if r["n"] == n) / seeds for n in sizes}
    ratios = {f"{a}->{b}": round(mean[b] / mean[a], 3) for a, b in zip(sizes, sizes[1:]) if mean[a]}
    return {
        "grammar": "Dyck-2 (CNF)",
        "density": density,
        "runs": runs,
        "mean_pops": {str(k): v for k, v in mean.items()},
        "growth": ratios,
        "within_pop_bound": all(r["pops"] <= r["pop_bound"] for r in runs),
    }


def cmd_bench(args) -> int:
    _emit(run_bench(args.sizes, args.seeds, args.density, args.seed, timing=not args.no_timing))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cflreach", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="count", default=0)
    ap.add_argument("--json", action="store_true", help="JSON output (the only mode; accepted for clarity)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("recognize", help="CYK membership test")
    p.add_argument("--grammar", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(fn=cmd_recognize)

    p = sub.add_parser("reach", help="CFL reachability on a labeled graph")
    p.add_argument("--grammar", required=True)
    p.add_argument("--graph", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--all-pairs", action="store_true")
    mode.add_argument("--st", nargs=2, type=int, metavar=("S", "T"))
    p.add_argument("--bounded", type=int, metavar="K")
    p.add_argument("--weighted", action="store_true")
    p.set_defaults(fn=cmd_reach)

    p = sub.add_parser("pds-reach", help="bounded-depth pushdown reachability")
    p.add_argument("--pds", required=True)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--bound", type=int, default=None, help="override the file's depth bound")
    p.set_defaults(fn=cmd_pds_reach)

    p = sub.add_parser("reduce", help="write a generated gadget instance")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--grammar", help="grammar file (subdiv only)")
    p.add_argument("--max-k", type=int, default=4)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("verify", help="check a reduction against its oracle on random instances")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=default_seed())
    p.add_argument("--max-n", type=int, default=8)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("oracle", help="run a brute-force oracle on a source instance")
    p.add_argument("name", choices=sorted(ORACLE_PARSERS))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--radius", type=int, default=8)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("bench", help="worklist pop counts and timings on random graphs")
    p.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200])
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--density", type=float, default=2.0, help="edges per vertex")
    p.add_argument("--seed", type=int, default=default_seed())
    p.add_argument("--no-timing", action="store_true", help="omit wall times for byte-stable output")
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(
        subcommand=args.cmd,
        inputs={k: v for k, v in vars(args).items() if k in ("grammar", "graph", "pds", "input", "word")},
        seed=getattr(args, "seed", default_seed()),
        trials=getattr(args, "trials", 0),
        max_n=getattr(args, "max_n", 0),
        output=getattr(args, "out", None),
        verbosity=args.verbose,
    )
    logging.basicConfig(level=max(logging.DEBUG, logging.WARNING - 10 * cfg.verbosity), stream=sys.stderr)
    logging.getLogger(__name__).debug("run config: %s", cfg)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"cflreach: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
