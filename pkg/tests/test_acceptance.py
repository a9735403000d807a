"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run under pytest (lines appear even with output capture on) or directly
with ``python3 tests/test_acceptance.py``. The seed comes from
CFLREACH_SEED (default 0).
"""
from __future__ import annotations

import itertools
import os
import sys
import time

import pytest

from cflreach.cli import run_bench
from cflreach.grammar import dyck_grammar
from cflreach.graph import layered_dag, path_graph
from cflreach.harness import VerifyConfig, led_agreement, random_led_instance, run_trial, trial_rng, verify
from cflreach.instances import LedInstance, random_cnf_grammar, random_dag, random_labeled_graph
from cflreach.oracles import derives, matrix_fixpoint_reach, walk_enum_reach_oracle
from cflreach.recognizer import cyk_recognize
from cflreach.solvers import all_pairs_reach, bounded_path_reach, dag_all_pairs_reach, st_reach

SEED = int(os.environ.get("CFLREACH_SEED", "0"))
POP_RUNS: list = []  # (pops, bound) from every worklist run made here
RESULTS: list = []   # printed by the terminal-summary hook in conftest


def report(n: int, ok: bool, detail: str) -> None:
    RESULTS.append(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")


def timed_verify(kind, trials, max_n):
    t0 = time.perf_counter()
    rep = verify(VerifyConfig(kind, trials, SEED, max_n))
    return rep, time.perf_counter() - t0


def tracked_all_pairs(g, d):
    rel = all_pairs_reach(g, d, check_single_pop=True)
    POP_RUNS.append((rel.pops, (len(g.terminals) + len(g.nonterminals)) * d.n**2))
    return rel


def test_criterion_1_triangle_dyck1():
    rep, secs = timed_verify("triangle-dyck1", 200, 10)
    ok = rep["agreements"] == 200 and secs < 10
    report(1, ok, f"triangle->Dyck-1 {rep['agreements']}/200 agree, sizes exact, {secs:.2f}s")
    assert ok, rep["failures"][:3]


def test_criterion_2_ov_dyck2():
    rep, secs = timed_verify("ov-dyck2", 200, 8)
    ok = rep["agreements"] == 200 and secs < 10
    report(2, ok, f"OV->Dyck-2 {rep['agreements']}/200 agree, |V| exact, {secs:.2f}s")
    assert ok, rep["failures"][:3]


def test_criterion_3_pds_gadgets():
    t0 = time.perf_counter()
    tri = verify(VerifyConfig("triangle-pds", 100, SEED, 8))
    mono = verify(VerifyConfig("aemono-pds", 100, SEED, 8))
    secs = time.perf_counter() - t0
    ok = tri["agreements"] == 100 and mono["agreements"] == 100 and secs < 30
    report(3, ok, f"triangle->PDS {tri['agreements']}/100, AE-Mono->PDS {mono['agreements']}/100 "
                  f"(sparse, depth-bounded), {secs:.2f}s")
    assert ok, (tri["failures"] + mono["failures"])[:3]


def test_criterion_4_aemono_subdivision():
    rep, secs = timed_verify("aemono-sub", 50, 6)
    ok = rep["agreements"] == 50 and secs < 60
    report(4, ok, f"AE-Mono->subdivision CFLR {rep['agreements']}/50 agree, line-edges <= 4ceil(log n), {secs:.2f}s")
    assert ok, rep["failures"][:3]


def test_criterion_5_led():
    t0 = time.perf_counter()
    dyck = dyck_grammar(1)
    op_sets = {"all": (True, True, True), "ins": (True, False, False), "del+ins": (True, True, False)}
    bad = []
    checked = 0
    for name, ops in op_sets.items():
        for n in range(6):
            for w in itertools.product("()", repeat=n):
                got, want, agree = led_agreement(LedInstance(w, dyck, 1, 1, 1, *ops))
                checked += 1
                if not agree:
                    bad.append((name, "".join(w), got, want))
    rng_trials = 60
    for t in range(rng_trials):
        got, want, agree = led_agreement(random_led_instance(trial_rng(SEED, "led-accept", t)))
        if not agree:
            bad.append(("random", t, got, want))
    secs = time.perf_counter() - t0
    ok = not bad and secs < 60
    report(5, ok, f"LED->weighted CFLR exact on {checked} Dyck-1 words x op sets and {rng_trials} random, "
                  f"{len(bad)} mismatches, {secs:.2f}s")
    assert ok, bad[:5]


def _small_cnf(rng):
    while True:
        g = random_cnf_grammar(rng, ("a", "b"), rng.randint(1, 4), rng.randint(1, 6), rng.randint(2, 4))
        if g.size <= 15:
            return g


def test_criterion_6_solver_cross_validation():
    bad = 0
    dags = 0
    for t in range(300):
        rng = trial_rng(SEED, "solvers", t)
        g = _small_cnf(rng)
        n = rng.randint(1, 8)
        if t % 2:
            d = random_dag(rng, n, rng.randint(0, 2 * n), "ab")
        else:
            d = random_labeled_graph(rng, n, rng.randint(0, 2 * n), "ab")
        facts = tracked_all_pairs(g, d).facts
        ok = facts == matrix_fixpoint_reach(g, d)
        if t % 2:
            dags += 1
            ok = ok and facts == dag_all_pairs_reach(g, d).facts
        bad += not ok
    report(6, bad == 0, f"worklist == matrix fixpoint on 300 instances, == DAG solver on {dags} DAGs, {bad} mismatches")
    assert bad == 0


def test_criterion_7_bounded_paths():
    bad = 0
    for t in range(120):
        rng = trial_rng(SEED, "bounded", t)
        g = _small_cnf(rng)
        n = rng.randint(1, 6)
        d = random_labeled_graph(rng, n, rng.randint(0, 2 * n), "ab")
        k = rng.randint(1, 6)
        h, layers = layered_dag(d, k)
        ok = h.n == k * n and len(layers) == k * n
        ok = ok and bounded_path_reach(g, d, k) == walk_enum_reach_oracle(g, d, k)
        bad += not ok
    report(7, bad == 0, f"bounded-path solver == walk enumeration on 120 instances (k <= 6), layered size k*n, {bad} mismatches")
    assert bad == 0


def test_criterion_8_cyk():
    bad = 0
    words = [w for n in range(8) for w in itertools.product("ab", repeat=n)]
    for t in range(50):
        rng = trial_rng(SEED, "cyk", t)
        g = random_cnf_grammar(rng, ("a", "b"), rng.randint(2, 4), rng.randint(2, 6), 3)
        for w in words:
            member, _ = cyk_recognize(g, w)
            d = path_graph(w)
            if member != derives(g, w) or member != st_reach(g, d, 0, len(w)):
                bad += 1
    report(8, bad == 0, f"CYK == derivation search == path-graph st_reach on 50 grammars x {len(words)} words, {bad} mismatches")
    assert bad == 0


def test_criterion_9_subdivision_preprocessing():
    rows = [run_trial("subdiv", SEED, t, 8) for t in range(50)]
    bad = [r for r in rows if r["problems"]]
    consts = [r["info"]["budget_constant"] for r in rows]
    ks = sorted({r["info"]["k"] for r in rows})
    ok = not bad and max(consts) <= 1.0 and set(ks) <= {2, 3, 4}
    report(9, ok, f"subdivision preprocessing keeps reachability on 50 instances (k in {ks}); "
                  f"|G'| / (|G''|^2 |Sigma'|^k k) max {max(consts):.4f}")
    assert ok, bad[:3]


def test_criterion_10_pop_bound():
    for t in range(100):
        rng = trial_rng(SEED, "pops", t)
        g = _small_cnf(rng)
        n = rng.randint(1, 12)
        tracked_all_pairs(g, random_labeled_graph(rng, n, rng.randint(0, 3 * n), "ab"))
    bench = run_bench([50, 100, 200], 5, 2.0, SEED, timing=False)
    runs = POP_RUNS + [(r["pops"], r["pop_bound"]) for r in bench["runs"]]
    worst = max(p / b for p, b in runs if b)
    growth_ok = all(r <= 8 * 1.2 for r in bench["growth"].values())
    ok = all(p <= b for p, b in runs) and bench["within_pop_bound"] and growth_ok
    report(10, ok, f"pops <= (|Sigma|+|N|) n^2 on {len(runs)} runs, worst ratio {worst:.3f}, "
                   f"doubling-n growth {bench['growth']} (limit 9.6)")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
