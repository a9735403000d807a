"""Generate -> solve -> oracle -> compare loops behind ``cflreach verify``."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .grammar import dyck_grammar, to_cnf
from .graph import SubdivisionGraph
from .instances import (
    LedInstance,
    random_aemono_instance,
    random_cnf_grammar,
    random_general_grammar,
    random_led_word,
    random_ov_instance,
    random_subdivision_graph,
    random_triangle_instance,
)
from .oracles import aemono_oracle, led_oracle, ov_oracle, triangle_oracle
from .pds import search
from .reductions import (
    KINDS,
    ReductionInstance,
    aemono_to_pds,
    aemono_to_subdivision_cflr,
    bits_for,
    led_to_weighted_cflr,
    ov_to_dyck2,
    subdivision_preprocess,
    triangle_to_dyck1,
    triangle_to_pds,
)
from .solvers import all_pairs_reach, st_reach, weighted_st_reach


@dataclass(frozen=True)
class VerifyConfig:
    kind: str
    trials: int = 50
    seed: int = 0
    max_n: int = 8


def trial_rng(seed: int, kind: str, trial: int) -> random.Random:
    """Independent stream per trial, fixed by (seed, kind, trial)."""
    return random.Random(f"{seed}:{kind}:{trial}")


def solve(ri: ReductionInstance):
    """Answer the designated query of a generated instance with the solvers."""
    q = ri.query
    if ri.pds is not None:
        if "st" in q:
            s, t = q["st"]
            return t in search(ri.pds, s).reached
        cache: dict = {}
        out = {}
        for s, t in q["pairs"]:
            if s not in cache:
                cache[s] = search(ri.pds, s).reached
            out[s, t] = t in cache[s]
        return out
    g = ri.grammar
    d = ri.graph
    if isinstance(d, SubdivisionGraph):
        d = d.base
    if ri.kind == "led-wcflr":
        return weighted_st_reach(g, d, *q["st"])
    g = to_cnf(g) if g.form == "general" else g
    if "st" in q:
        return st_reach(g, d, *q["st"])
    facts = set(all_pairs_reach(g, d).pairs())
    return {(s, t): (s, t) in facts for s, t in q["pairs"]}


def _edge_answers(n: int, answers: dict) -> dict:
    """Map (x_i, y'_j) query answers back to source arcs (i, j)."""
    return {(s, t - 4 * n): v for (s, t), v in answers.items()}


def _check_triangle_dyck1(rng, max_n):
    u = random_triangle_instance(rng, rng.randint(1, max_n), rng.random())
    ri = triangle_to_dyck1(u)
    problems = []
    n, m = u.n, len(u.edges)
    if ri.graph.n != 3 + 4 * n or len(ri.graph.edges) != 3 + 2 * (n - 1) + 6 * m:
        problems.append("size formula")
    got, want = solve(ri), triangle_oracle(u)
    if got != want:
        problems.append(f"solver {got} oracle {want}")
    return {"n": n, "edges": m}, problems


def _check_ov_dyck2(rng, max_n):
    inst = random_ov_instance(rng, rng.randint(1, max_n), rng.randint(2, 6), rng.uniform(0.2, 0.8))
    ri = ov_to_dyck2(inst)
    problems = []
    if ri.graph.n != 3 + 2 * (inst.d - 1) * len(inst.X):
        problems.append("size formula")
    got, want = solve(ri), ov_oracle(inst)
    if got != want:
        problems.append(f"solver {got} oracle {want}")
    return {"n": len(inst.X), "d": inst.d}, problems


def _depth_problems(ri, bound):
    """Search with a generous bound and confirm no reachable stack exceeds ``bound``."""
    p = ri.pds
    problems = []
    if not p.is_sparse():
        problems.append("sparsity")
    if not p.is_normalized():
        problems.append("not normalized")
    if "st" in ri.query:
        sources = {ri.query["st"][0]}
    else:
        sources = {s for s, _ in ri.query["pairs"]}
    for s in sorted(sources):
        res = search(p, s, bound=4 * bound + 4)
        if res.max_depth > bound:
            problems.append(f"depth {res.max_depth} > {bound} from state {s}")
    return problems


def _check_triangle_pds(rng, max_n):
    u = random_triangle_instance(rng, rng.randint(2, max(2, max_n)), rng.random())
    ri = triangle_to_pds(u)
    problems = _depth_problems(ri, bits_for(u.n))
    got, want = solve(ri), triangle_oracle(u)
    if got != want:
        problems.append(f"solver {got} oracle {want}")
    return {"n": u.n, "edges": len(u.edges)}, problems


def _aemono_source(rng, max_n):
    n = rng.randint(2, max(2, max_n))
    return random_aemono_instance(rng, n, rng.uniform(0.3, 1.0), rng.randint(1, 3))


def _compare_edges(inst, answers):
    want = aemono_oracle(inst)
    problems = []
    for (i, j), v in sorted(answers.items()):
        if v != want[min(i, j), max(i, j)]:
            problems.append(f"edge {(i, j)}: solver {v} oracle {want[min(i, j), max(i, j)]}")
    return problems


def _check_aemono_pds(rng, max_n):
    inst = _aemono_source(rng, max_n)
    ri = aemono_to_pds(inst)
    problems = _depth_problems(ri, 4 * bits_for(inst.n))
    problems += _compare_edges(inst, _edge_answers(inst.n, solve(ri)))
    return {"n": inst.n, "edges": len(inst.colors)}, problems


def _check_aemono_sub(rng, max_n):
    inst = _aemono_source(rng, max_n)
    ri = aemono_to_subdivision_cflr(inst)
    problems = []
    longest = max((len(e) for e in ri.graph.line_edges), default=0)
    if longest > 4 * bits_for(inst.n):
        problems.append(f"line-edge length {longest}")
    if len(ri.graph.ordinary) != 5 * inst.n:
        problems.append("ordinary vertex count")
    problems += _compare_edges(inst, _edge_answers(inst.n, solve(ri)))
    return {"n": inst.n, "edges": len(inst.colors), "k": longest}, problems


def random_led_instance(rng, max_len: int = 5) -> LedInstance:
    if rng.random() < 0.5:
        g = dyck_grammar(1)
    else:
        g = random_general_grammar(rng, ("a", "b"), rng.randint(1, 3), rng.randint(2, 6), 3)
    ops = [rng.random() < 0.7 for _ in range(3)]
    costs = [rng.randint(1, 2) for _ in range(3)]
    return LedInstance(random_led_word(rng, g.terminals, max_len), g, *costs, *ops)


def led_agreement(inst: LedInstance, slack: int = 3):
    """(solver weight, oracle answer, agree?). With no S-path the oracle must find nothing nearby."""
    ri = led_to_weighted_cflr(inst)
    got = solve(ri)
    if got is None:
        want = led_oracle(inst, len(inst.word) + slack)
    else:
        want = led_oracle(inst, got)
    return got, want, got == want


def _check_led(rng, max_n):
    inst = random_led_instance(rng, min(max_n, 6))
    got, want, ok = led_agreement(inst)
    problems = [] if ok else [f"solver {got} oracle {want}"]
    return {"word": " ".join(inst.word), "ops": [inst.allow_ins, inst.allow_del, inst.allow_repl]}, problems


def subdiv_agreement(sd: SubdivisionGraph, g) -> tuple[set, set, object]:
    before = all_pairs_reach(to_cnf(g), sd.base)
    bp = {(u, v) for u, v in before.pairs() if u in sd.ordinary and v in sd.ordinary}
    res = subdivision_preprocess(sd, g)
    gc = to_cnf(res.grammar)
    after = all_pairs_reach(gc, res.graph).pairs()
    ap = {(res.ordinary[u], res.ordinary[v]) for u, v in after}
    return bp, ap, res


def _check_subdiv(rng, max_n):
    g = random_cnf_grammar(rng, ("a", "b"), rng.randint(2, 3), rng.randint(2, 4), 3)
    k = rng.randint(2, 4)
    sd = random_subdivision_graph(rng, rng.randint(2, max(2, min(max_n, 4))), rng.randint(1, 5), ("a", "b"), 1, k)
    bp, ap, res = subdiv_agreement(sd, g)
    problems = [] if bp == ap else [f"pairs differ: {sorted(bp ^ ap)}"]
    return {"k": res.k, "grammar_size": res.grammar.size, "budget_constant": round(res.budget_constant, 6)}, problems


CHECKS = {
    "triangle-dyck1": _check_triangle_dyck1,
    "ov-dyck2": _check_ov_dyck2,
    "triangle-pds": _check_triangle_pds,
    "aemono-pds": _check_aemono_pds,
    "aemono-sub": _check_aemono_sub,
    "led-wcflr": _check_led,
    "subdiv": _check_subdiv,
}
assert set(CHECKS) == set(KINDS)


def run_trial(kind: str, seed: int, trial: int, max_n: int) -> dict:
    info, problems = CHECKS[kind](trial_rng(seed, kind, trial), max_n)
    return {"trial": trial, "info": info, "problems": problems}


def verify(cfg: VerifyConfig) -> dict:
    if cfg.kind not in CHECKS:
        raise ValueError(f"unknown reduction {cfg.kind!r}")
    results = [run_trial(cfg.kind, cfg.seed, t, cfg.max_n) for t in range(cfg.trials)]
    failures = sorted(
        ({"trial": r["trial"], "info": r["info"], "problems": r["problems"]} for r in results if r["problems"]),
        key=lambda r: r["trial"],
    )
    return {
        "reduction": cfg.kind,
        "seed": cfg.seed,
        "max_n": cfg.max_n,
        "trials": cfg.trials,
        "agreements": cfg.trials - len(failures),
        "failures": failures,
    }
