"""Deliberately naive reference implementations.

Nothing here calls into the solvers, the CYK recognizer or the reduction
generators, so agreement between an oracle and the code it checks is
evidence rather than tautology.
"""
from __future__ import annotations

import hashlib
import heapq
import itertools
from collections import deque
from dataclasses import dataclass

from .grammar import Grammar, is_binary_form, is_cnf
from .instances import AeMonoInstance, LedInstance, OvInstance, TriangleInstance


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class OracleReport:
    problem: str
    digest: str
    answer: object
    ops: int

    def to_json(self) -> dict:
        ans = self.answer
        if isinstance(ans, dict):
            ans = [[list(k), v] for k, v in sorted(ans.items())]
        return {"problem": self.problem, "digest": self.digest, "answer": ans, "ops": self.ops}


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# source problems


def triangle_oracle(u: TriangleInstance, count: list | None = None) -> bool:
    ops = 0
    adj = u.adjacent
    for i, j, k in itertools.combinations(range(u.n), 3):
        ops += 1
        if adj(i, j) and adj(j, k) and adj(i, k):
            if count is not None:
                count.append(ops)
            return True
    if count is not None:
        count.append(ops)
    return False


def ov_oracle(inst: OvInstance) -> bool:
    if len({len(v) for v in inst.X + inst.Y}) > 1:
        raise OracleError("dimension mismatch")
    return any(all(a * b == 0 for a, b in zip(x, y)) for x in inst.X for y in inst.Y)


def aemono_oracle(inst: AeMonoInstance) -> dict:
    """Edge (i, j), i < j -> is there a k with a monochromatic triangle i, j, k."""
    col = inst.color_map
    out = {}
    for (i, j), c in inst.colors:
        out[i, j] = False
        for k in range(inst.n):
            if k in (i, j):
                continue
            if col.get((min(i, k), max(i, k))) == c and col.get((min(j, k), max(j, k))) == c:
                out[i, j] = True
                break
    return out


def aemono_oracle_buckets(inst: AeMonoInstance) -> dict:
    """Second coding: split edges by color and intersect neighbourhoods."""
    by_color: dict = {}
    for (i, j), c in inst.colors:
        nb = by_color.setdefault(c, {})
        nb.setdefault(i, set()).add(j)
        nb.setdefault(j, set()).add(i)
    return {
        (i, j): bool(by_color[c][i] & by_color[c][j])
        for (i, j), c in inst.colors
    }


# ---------------------------------------------------------------------------
# grammar membership


def member(g: Grammar, word) -> bool:
    """Span-by-span fixed point for binary-form grammars (epsilon rules allowed)."""
    if not is_binary_form(g):
        raise OracleError("member() expects a binary-form grammar")
    word = tuple(word)
    n = len(word)
    unary = [(a, rhs[0]) for a, rhs in g.productions if len(rhs) == 1]
    binary = [(a, rhs[0], rhs[1]) for a, rhs in g.productions if len(rhs) == 2]
    nullable = {a for a, rhs in g.productions if not rhs}
    changed = True
    while changed:
        changed = False
        for a, b, c in binary:
            if a not in nullable and b in nullable and c in nullable:
                nullable.add(a)
                changed = True
    if n == 0:
        return g.start in nullable
    T: dict = {}
    for length in range(1, n + 1):
        for i in range(n - length + 1):
            j = i + length
            cell = {a for a, x in unary if length == 1 and x == word[i]}
            for m in range(i + 1, j):
                left, right = T[i, m], T[m, j]
                cell |= {a for a, b, c in binary if b in left and c in right}
            # rules with one nullable side keep the span
            changed = True
            while changed:
                changed = False
                for a, b, c in binary:
                    if a not in cell and ((b in nullable and c in cell) or (b in cell and c in nullable)):
                        cell.add(a)
                        changed = True
            T[i, j] = cell
    return g.start in T[0, n]


def derives(g: Grammar, word) -> bool:
    """Exhaustive leftmost-derivation search for CNF grammars.

    A CNF derivation of a length-n word takes 2n - 1 steps, so the search
    is capped at 2n + 2 steps. Sentential forms are a matched terminal
    prefix followed by nonterminals only.
    """
    if not is_cnf(g):
        raise OracleError("derives() expects a CNF grammar")
    word = tuple(word)
    n = len(word)
    if n == 0:
        return (g.start, ()) in set(g.productions)
    by_lhs: dict = {}
    for lhs, rhs in g.productions:
        if rhs:
            by_lhs.setdefault(lhs, []).append(rhs)
    cap = 2 * n + 2
    seen = set()
    stack = [(0, (g.start,), 0)]
    while stack:
        p, alpha, steps = stack.pop()
        if not alpha:
            if p == n:
                return True
            continue
        if steps >= cap or p + len(alpha) > n or (p, alpha) in seen:
            continue
        seen.add((p, alpha))
        head, rest = alpha[0], alpha[1:]
        for rhs in by_lhs.get(head, ()):
            if len(rhs) == 1:
                if p < n and rhs[0] == word[p]:
                    stack.append((p + 1, rest, steps + 1))
            else:
                stack.append((p, rhs + rest, steps + 1))
    return False


def language_upto(g: Grammar, max_len: int) -> frozenset:
    """All words of L(g) with length <= max_len, by fixed-point iteration.

    Works for arbitrary grammars (epsilon rules, unit rules, long bodies).
    """
    lang = {a: set() for a in g.nonterminals}

    def concat(sets):
        cur = {()}
        for s in sets:
            cur = {u + v for u in cur for v in s if len(u) + len(v) <= max_len}
            if not cur:
                break
        return cur

    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            parts = [lang[x] if x in g.nonterminals else {(x,)} for x in rhs]
            new = concat(parts) - lang[lhs]
            if new:
                lang[lhs] |= new
                changed = True
    return frozenset(lang[g.start])


def pda_accepts(a, word, max_stack: int | None = None) -> bool:
    """Search over (state, position, stack) with a stack-height cap."""
    word = tuple(word)
    if max_stack is None:
        max_stack = 2 * len(word) + 6
    start = (a.start_state, 0, ())
    seen = {start}
    queue = deque([start])
    by_state: dict = {}
    for t in a.transitions:
        by_state.setdefault(t[0], []).append(t)
    while queue:
        q, i, st = queue.popleft()
        if i == len(word) and q in a.final_states:
            return True
        for _, x, pop, q2, push in by_state.get(q, ()):
            if x is not None and (i >= len(word) or word[i] != x):
                continue
            if pop is not None and (not st or st[0] != pop):
                continue
            rest = st[1:] if pop is not None else st
            new_st = tuple(push) + rest
            if len(new_st) > max_stack:
                continue
            nxt = (q2, i + (x is not None), new_st)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


# ---------------------------------------------------------------------------
# reachability


def walk_enum_reach_oracle(g: Grammar, d, max_len: int, nonterminal=None) -> set:
    """Pairs (u, v) joined by a walk of at most max_len edges whose word is in L(g)."""
    if max_len < 0:
        raise OracleError("max_len must be nonnegative")
    if nonterminal is not None and nonterminal != g.start:
        g = Grammar(g.nonterminals, g.terminals, g.productions, nonterminal, "general")
    cache: dict = {}

    def ok(w):
        if w not in cache:
            cache[w] = member(g, w)
        return cache[w]

    out = set()
    adj = [[] for _ in range(d.n)]
    for u, label, v in d.edges:
        adj[u].append((label, v))
    for s in range(d.n):
        frontier = {(s, ())}
        for length in range(max_len + 1):
            for v, w in frontier:
                if (s, v) not in out and ok(w):
                    out.add((s, v))
            if length == max_len:
                break
            frontier = {(x, w + (label,)) for v, w in frontier for label, x in adj[v]}
    return out


def matrix_fixpoint_reach(g: Grammar, d) -> frozenset:
    """Semi-naive fixed point over per-nonterminal relations (sets of pairs)."""
    if not is_binary_form(g):
        raise OracleError("matrix_fixpoint_reach expects a binary-form grammar")
    rel = {a: set() for a in g.nonterminals}
    for lhs, rhs in g.productions:
        if len(rhs) == 1:
            rel[lhs] |= {(u, v) for u, label, v in d.edges if label == rhs[0]}
        elif not rhs:
            rel[lhs] |= {(v, v) for v in range(d.n)}
    delta = {a: set(r) for a, r in rel.items()}
    binary = [(lhs, rhs[0], rhs[1]) for lhs, rhs in g.productions if len(rhs) == 2]

    def compose(x, y):
        by_src: dict = {}
        for u, v in y:
            by_src.setdefault(u, []).append(v)
        return {(u, w) for u, v in x for w in by_src.get(v, ())}

    while any(delta.values()):
        new = {a: set() for a in g.nonterminals}
        for a, b, c in binary:
            if delta[b]:
                new[a] |= compose(delta[b], rel[c])
            if delta[c]:
                new[a] |= compose(rel[b], delta[c])
        for a in new:
            new[a] -= rel[a]
            rel[a] |= new[a]
        delta = new
    return frozenset((u, a, v) for a, pairs in rel.items() for u, v in pairs)


# ---------------------------------------------------------------------------
# language edit distance


def led_oracle(inst: LedInstance, radius: int):
    """Cheapest edit sequence (cost <= radius) turning the word into a member.

    Returns the cost, or None when no member is reachable within the radius.
    Candidate words longer than |w| + radius are pruned.
    """
    if radius < 0:
        raise OracleError("radius must be nonnegative")
    from .grammar import to_cnf

    g = to_cnf(inst.grammar)
    sigma = sorted(inst.grammar.terminals)
    cap = len(inst.word) + radius
    start = tuple(inst.word)
    best = {start: 0}
    heap = [(0, start)]
    cache: dict = {}
    while heap:
        cost, w = heapq.heappop(heap)
        if cost > best.get(w, cost):
            continue
        if w not in cache:
            cache[w] = derives(g, w) if w else g.has_epsilon_start()
        if cache[w]:
            return cost
        moves = []
        if inst.allow_ins and len(w) < cap:
            moves += [(inst.w_ins, w[:i] + (s,) + w[i:]) for i in range(len(w) + 1) for s in sigma]
        if inst.allow_del:
            moves += [(inst.w_del, w[:i] + w[i + 1 :]) for i in range(len(w))]
        if inst.allow_repl:
            moves += [
                (inst.w_repl, w[:i] + (s,) + w[i + 1 :]) for i in range(len(w)) for s in sigma if s != w[i]
            ]
        for c, nxt in moves:
            nc = cost + c
            if nc <= radius and nc < best.get(nxt, radius + 1):
                best[nxt] = nc
                heapq.heappush(heap, (nc, nxt))
    return None


def oracle_report(problem: str, inst, text: str, **kw) -> OracleReport:
    counter: list = []
    if problem == "triangle":
        ans = triangle_oracle(inst, counter)
        ops = counter[0]
    elif problem == "ov":
        ans = ov_oracle(inst)
        ops = len(inst.X) * len(inst.Y) * inst.d
    elif problem == "aemono":
        ans = aemono_oracle(inst)
        ops = len(inst.colors) * inst.n
    elif problem == "led":
        ans = led_oracle(inst, kw.get("radius", len(inst.word) + 2))
        ops = 0
    else:
        raise OracleError(f"unknown oracle {problem!r}")
    return OracleReport(problem, digest(text), ans, ops)
