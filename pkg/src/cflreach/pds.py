"""Pushdown systems with bounded stack depth.

States are integers ``0..n_states-1``; ``ordinary`` marks the states that
matter for queries, the rest are auxiliary states introduced by splitting.
Stack words are strings of one-character symbols with the top at index 0.

A transition ``(q, pop, push, q2)`` with words ``pop`` and ``push`` acts as
the sequence of single steps it splits into: the symbols of ``pop`` are
popped in order (``pop[0]`` must be on top), then the symbols of ``push`` are
pushed in order (``push[-1]`` ends on top). For single-symbol words this is
exactly the two-case edge relation of the configuration graph.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable


class PdsError(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    state: int
    stack: str = ""


@dataclass(frozen=True)
class Pds:
    n_states: int
    ordinary: frozenset
    stack_alphabet: frozenset
    transitions: tuple  # (q, pop, push, q2)
    depth_bound: int | None = None
    names: dict = field(default_factory=dict, compare=False, repr=False)
    _index: dict | None = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ordinary", frozenset(self.ordinary))
        object.__setattr__(self, "stack_alphabet", frozenset(self.stack_alphabet))
        object.__setattr__(self, "transitions", tuple(tuple(t) for t in self.transitions))
        if not all(0 <= q < self.n_states for q in self.ordinary):
            raise PdsError("ordinary state out of range")
        for q, pop, push, q2 in self.transitions:
            if not (0 <= q < self.n_states and 0 <= q2 < self.n_states):
                raise PdsError(f"transition {(q, pop, push, q2)} references an unknown state")
            if any(s not in self.stack_alphabet for s in pop + push):
                raise PdsError(f"transition {(q, pop, push, q2)} uses an undeclared stack symbol")
        if self.depth_bound is not None and self.depth_bound < 0:
            raise PdsError("depth bound must be nonnegative")

    @property
    def auxiliary(self) -> frozenset:
        return frozenset(range(self.n_states)) - self.ordinary

    def is_normalized(self) -> bool:
        return all(len(pop) <= 1 and len(push) <= 1 and not (pop and push) for _, pop, push, _ in self.transitions)

    def is_sparse(self, c: float = 4) -> bool:
        return len(self.transitions) <= c * self.n_states

    def name(self, q: int) -> str:
        return self.names.get(q, str(q))


def apply(t, stack: str) -> str | None:
    """Stack after firing transition ``t`` on ``stack``, or None if it cannot fire."""
    _, pop, push, _ = t
    if not stack.startswith(pop):
        return None
    return push[::-1] + stack[len(pop):]


def successors(p: Pds, c: Configuration, bound: int | None = None):
    bound = p.depth_bound if bound is None else bound
    for t in _by_state(p).get(c.state, ()):
        new = apply(t, c.stack)
        if new is None or (bound is not None and len(new) > bound):
            continue
        yield Configuration(t[3], new)


def _by_state(p: Pds) -> dict:
    if p._index is None:
        idx: dict = {}
        for t in p.transitions:
            idx.setdefault(t[0], []).append(t)
        object.__setattr__(p, "_index", idx)
    return p._index


def split_transitions(p: Pds, split_silent: bool = True) -> Pds:
    """Normalize to single-symbol steps through auxiliary states.

    A transition popping k1 and pushing k2 symbols (k1 + k2 >= 2) becomes
    k1 + k2 transitions through k1 + k2 - 1 new auxiliary states. With
    ``split_silent``, a transition between two ordinary states that neither
    pops nor pushes is split in two through one auxiliary state.
    """
    n = p.n_states
    names = dict(p.names)
    out = []
    for q, pop, push, q2 in p.transitions:
        steps = [(s, "") for s in pop] + [("", s) for s in push]
        if len(steps) <= 1:
            if not steps and split_silent and q in p.ordinary and q2 in p.ordinary:
                names[n] = f"aux{n}"
                out += [(q, "", "", n), (n, "", "", q2)]
                n += 1
            else:
                out.append((q, pop, push, q2))
            continue
        chain = [q] + list(range(n, n + len(steps) - 1)) + [q2]
        for s in chain[1:-1]:
            names[s] = f"aux{s}"
        n += len(steps) - 1
        out += [(chain[i], steps[i][0], steps[i][1], chain[i + 1]) for i in range(len(steps))]
    return Pds(n, p.ordinary, p.stack_alphabet, tuple(out), p.depth_bound, names)


@dataclass
class SearchResult:
    reached: set
    visited: int
    max_depth: int
    parents: dict = field(repr=False, default_factory=dict)

    def witness(self, target: Configuration) -> list[Configuration]:
        if target not in self.parents:
            return []
        path = [target]
        while self.parents[path[-1]] is not None:
            path.append(self.parents[path[-1]])
        return path[::-1]


def search(p: Pds, source: int, bound: int | None = None) -> SearchResult:
    """Breadth-first search of the configuration graph from (source, eps).

    Configurations deeper than the bound are never generated.
    """
    bound = p.depth_bound if bound is None else bound
    if bound is None:
        raise PdsError("bounded search needs a depth bound")
    if not 0 <= source < p.n_states:
        raise PdsError(f"state {source} out of range")
    start = Configuration(source, "")
    parents = {start: None}
    queue = deque([start])
    reached = set()
    max_depth = 0
    while queue:
        c = queue.popleft()
        if not c.stack:
            reached.add(c.state)
        max_depth = max(max_depth, len(c.stack))
        for nxt in successors(p, c, bound):
            if nxt not in parents:
                parents[nxt] = c
                queue.append(nxt)
    return SearchResult(reached, len(parents), max_depth, parents)


def pds_reach(p: Pds, source: int, target: int) -> bool:
    if not 0 <= target < p.n_states:
        raise PdsError(f"state {target} out of range")
    return target in search(p, source).reached


def pds_all_pairs(p: Pds, sources: Iterable[int], targets: Iterable[int]) -> dict:
    targets = list(targets)
    out = {}
    for s in sources:
        reached = search(p, s).reached
        for t in targets:
            out[s, t] = t in reached
    return out


def config_bound(p: Pds, bound: int | None = None) -> int:
    """|Q| * sum_{i<=b} |Gamma|^i, the size of the bounded configuration space."""
    b = p.depth_bound if bound is None else bound
    g = max(len(p.stack_alphabet), 1)
    return p.n_states * sum(g**i for i in range(b + 1))


# ---------------------------------------------------------------------------
# text format


def parse_pds(text: str) -> Pds:
    """``states n`` / ``ordinary: ...`` / ``bound b`` / ``q pop push q2`` lines, ``-`` for eps."""
    n = None
    ordinary = None
    bound = None
    trans = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            if toks[0] == "states":
                n = int(toks[1])
            elif toks[0] == "ordinary:":
                ordinary = [int(t) for t in toks[1:]]
            elif toks[0] == "bound":
                bound = int(toks[1])
            elif len(toks) == 4:
                q, pop, push, q2 = toks
                pop = "" if pop == "-" else pop
                push = "" if push == "-" else push
                trans.append((int(q), pop, push, int(q2)))
            else:
                raise PdsError(f"bad line {line!r}")
        except (IndexError, ValueError) as exc:
            raise PdsError(f"bad line {line!r}") from exc
    if n is None:
        raise PdsError("missing 'states n' line")
    if ordinary is None:
        ordinary = range(n)
    alphabet = {s for _, pop, push, _ in trans for s in pop + push} or {"0", "1"}
    return Pds(n, frozenset(ordinary), frozenset(alphabet), tuple(trans), bound)


def format_pds(p: Pds) -> str:
    lines = [f"states {p.n_states}", "ordinary: " + " ".join(map(str, sorted(p.ordinary)))]
    if p.depth_bound is not None:
        lines.append(f"bound {p.depth_bound}")
    for q, pop, push, q2 in p.transitions:
        lines.append(f"{q} {pop or '-'} {push or '-'} {q2}")
    return "\n".join(lines) + "\n"
