"""CFL-reachability engines.

All solvers take a grammar in binary normal form (CNF, or CNF lifted with
:func:`cflreach.grammar.lift_epsilon`) and a labeled graph whose labels are
terminals of the grammar. A fact ``(u, A, v)`` means some path u -> v spells a
word derivable from ``A``; ``A -> eps`` yields ``(v, A, v)`` for every v.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field

from .grammar import Grammar, GrammarError, is_binary_form
from .graph import LabeledGraph, WeightedLabeledGraph, check_acyclic, has_negative_cycle, layered_dag
from .recognizer import CnfIndex


class ReachabilityError(ValueError):
    pass


class NegativeWeightError(ReachabilityError):
    pass


@dataclass(frozen=True)
class ReachabilityRelation:
    n: int
    start: object
    facts: frozenset
    weights: dict | None = field(default=None, compare=False)
    pops: int = field(default=0, compare=False)

    def __contains__(self, fact) -> bool:
        return fact in self.facts

    def pairs(self, nonterminal=None) -> list[tuple[int, int]]:
        a = self.start if nonterminal is None else nonterminal
        return sorted((u, v) for u, b, v in self.facts if b == a)


def _check(g: Grammar, d: LabeledGraph):
    if not is_binary_form(g):
        raise GrammarError("solver needs a CNF (or epsilon-lifted CNF) grammar; call to_cnf first")
    bad = d.labels - g.terminals
    if bad:
        raise ReachabilityError(f"edge labels outside grammar terminals: {sorted(map(str, bad))}")


class _Worklist:
    """Algorithm of the transitive-closure kind: each new fact is queued once
    and, when popped, combined with the facts at its two endpoints."""

    def __init__(self, g: Grammar, d: LabeledGraph):
        _check(g, d)
        self.idx = idx = CnfIndex(g)
        self.n = d.n
        self.as_left: dict = {}   # B -> [(A, C)] for A -> B C
        self.as_right: dict = {}  # C -> [(A, B)] for A -> B C
        for a, b, c in idx.binary:
            self.as_left.setdefault(b, []).append((a, c))
            self.as_right.setdefault(c, []).append((a, b))
        self.out = [dict() for _ in range(d.n)]
        self.inn = [dict() for _ in range(d.n)]
        self.facts: set = set()
        self.work = deque()
        self.pops = 0
        self.popped: set = set()
        nts = range(len(idx.nts))
        for u, label, v in d.edges:
            mask = idx.by_terminal.get(label, 0)
            for a in nts:
                if mask >> a & 1:
                    self.add(u, a, v)
        for a in nts:
            if idx.epsilon >> a & 1:
                for v in range(d.n):
                    self.add(v, a, v)

    def add(self, u, a, v):
        f = (u, a, v)
        if f in self.facts:
            return
        self.facts.add(f)
        self.out[u].setdefault(a, set()).add(v)
        self.inn[v].setdefault(a, set()).add(u)
        self.work.append(f)

    def run(self, stop=None, check_single_pop=False) -> bool:
        if stop is not None and stop in self.facts:
            return True
        while self.work:
            u, a, v = f = self.work.popleft()
            self.pops += 1
            if check_single_pop:
                assert f not in self.popped, f"fact {f} popped twice"
                self.popped.add(f)
            for c, b in self.as_left.get(a, ()):
                for x in tuple(self.out[v].get(b, ())):
                    self.add(u, c, x)
            for c, b in self.as_right.get(a, ()):
                for w in tuple(self.inn[u].get(b, ())):
                    self.add(w, c, v)
            if stop is not None and stop in self.facts:
                return True
        return False

    def relation(self) -> ReachabilityRelation:
        nts = self.idx.nts
        facts = frozenset((u, nts[a], v) for u, a, v in self.facts)
        return ReachabilityRelation(self.n, self.idx.grammar.start, facts, pops=self.pops)


def all_pairs_reach(g: Grammar, d: LabeledGraph, check_single_pop: bool = False) -> ReachabilityRelation:
    w = _Worklist(g, d)
    w.run(check_single_pop=check_single_pop)
    return w.relation()


def st_reach(g: Grammar, d: LabeledGraph, s: int, t: int) -> bool:
    if not (0 <= s < d.n and 0 <= t < d.n):
        raise ReachabilityError(f"query vertices {(s, t)} out of range")
    w = _Worklist(g, d)
    return w.run(stop=(s, w.idx.id[g.start], t))


# ---------------------------------------------------------------------------
# DAG matrix solver


def _product(rules, x: int, y: int) -> int:
    out = 0
    if x and y:
        for a, b, c in rules:
            if x >> b & 1 and y >> c & 1:
                out |= 1 << a
    return out


def dag_all_pairs_reach(g: Grammar, d: LabeledGraph) -> ReachabilityRelation:
    """Fill the upper-triangular matrix of nonterminal sets in topological order."""
    _check(g, d)
    ok, order = check_acyclic(d)
    if not ok:
        raise ReachabilityError("dag_all_pairs_reach needs an acyclic graph")
    idx = CnfIndex(g)
    rules = idx.binary
    n = d.n
    pos = {v: i for i, v in enumerate(order)}

    diag = idx.epsilon
    while True:
        nxt = diag | _product(rules, diag, diag)
        if nxt == diag:
            break
        diag = nxt

    M = [[0] * n for _ in range(n)]
    for u, label, v in d.edges:
        M[pos[u]][pos[v]] |= idx.by_terminal.get(label, 0)
    for length in range(1, n):
        for i in range(0, n - length):
            j = i + length
            cell = M[i][j]
            row = M[i]
            for m in range(i + 1, j):
                if row[m] and M[m][j]:
                    cell |= _product(rules, row[m], M[m][j])
            if diag and cell:
                while True:
                    nxt = cell | _product(rules, diag, cell) | _product(rules, cell, diag)
                    if nxt == cell:
                        break
                    cell = nxt
            M[i][j] = cell

    nts = idx.nts
    facts = set()
    for i in range(n):
        for a in range(len(nts)):
            if diag >> a & 1:
                facts.add((order[i], nts[a], order[i]))
        for j in range(i + 1, n):
            cell = M[i][j]
            a = 0
            while cell:
                if cell & 1:
                    facts.add((order[i], nts[a], order[j]))
                cell >>= 1
                a += 1
    return ReachabilityRelation(n, g.start, frozenset(facts))


def bounded_path_reach(g: Grammar, d: LabeledGraph, k: int) -> set[tuple[int, int]]:
    """Pairs joined by an S-path with at most k edges."""
    if k < 1:
        raise ReachabilityError("path length bound k must be >= 1")
    h, _ = layered_dag(d, k + 1)
    rel = dag_all_pairs_reach(g, h)
    n = d.n
    out = set()
    for p in range(n):
        for l in range(n):
            if any((p, g.start, i * n + l) in rel.facts for i in range(k + 1)):
                out.add((p, l))
    return out


# ---------------------------------------------------------------------------
# weighted


def _weighted(g: Grammar, d: WeightedLabeledGraph, stop=None):
    _check(g, d.base)
    if any(w < 0 for w in d.weights):
        if has_negative_cycle(d):
            raise NegativeWeightError("graph has a cycle of negative total weight")
        raise NegativeWeightError("negative edge weights are not supported by the weighted solver")
    idx = CnfIndex(g)
    as_left: dict = {}
    as_right: dict = {}
    for a, b, c in idx.binary:
        as_left.setdefault(b, []).append((a, c))
        as_right.setdefault(c, []).append((a, b))
    n = d.n
    dist: dict = {}
    best: dict = {}
    out = [dict() for _ in range(n)]
    inn = [dict() for _ in range(n)]
    heap: list = []

    def push(w, u, a, v):
        f = (u, a, v)
        if f in dist or best.get(f, w + 1) <= w:
            return
        best[f] = w
        heapq.heappush(heap, (w, u, a, v))

    nts = range(len(idx.nts))
    for u, label, v, w in d.weighted_edges():
        mask = idx.by_terminal.get(label, 0)
        for a in nts:
            if mask >> a & 1:
                push(w, u, a, v)
    for a in nts:
        if idx.epsilon >> a & 1:
            for v in range(n):
                push(0, v, a, v)

    while heap:
        w, u, a, v = heapq.heappop(heap)
        f = (u, a, v)
        if f in dist:
            continue
        dist[f] = w
        out[u].setdefault(a, {})[v] = w
        inn[v].setdefault(a, {})[u] = w
        if f == stop:
            break
        for c, b in as_left.get(a, ()):
            for x, w2 in tuple(out[v].get(b, {}).items()):
                push(w + w2, u, c, x)
        for c, b in as_right.get(a, ()):
            for y, w2 in tuple(inn[u].get(b, {}).items()):
                push(w2 + w, y, c, v)
    return idx, dist


def weighted_all_pairs_reach(g: Grammar, d: WeightedLabeledGraph) -> ReachabilityRelation:
    """Minimal derivation weight for every fact (nonnegative weights only)."""
    idx, dist = _weighted(g, d)
    nts = idx.nts
    weights = {(u, nts[a], v): w for (u, a, v), w in dist.items()}
    return ReachabilityRelation(d.n, g.start, frozenset(weights), weights=weights)


def weighted_st_reach(g: Grammar, d: WeightedLabeledGraph, s: int, t: int) -> int | None:
    if not (0 <= s < d.n and 0 <= t < d.n):
        raise ReachabilityError(f"query vertices {(s, t)} out of range")
    idx = CnfIndex(g)
    stop = (s, idx.id[g.start], t)
    _, dist = _weighted(g, d, stop=stop)
    return dist.get(stop)
