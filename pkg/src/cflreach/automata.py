"""Pushdown automata and the CFG <-> PDA conversions.

Stack words are tuples with the top at index 0. A transition
``(p, a, X, q, w)`` reads ``a`` (``None`` for no input), pops ``X`` (``None``
for no pop), moves to ``q`` and puts ``w`` on the stack so that ``w[0]`` is
the new top. Acceptance is by final state after the whole input is read.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .grammar import Grammar, _Fresh, symbol_name

Transition = tuple  # (state, input | None, pop | None, next_state, push tuple)


@dataclass(frozen=True)
class Pda:
    states: frozenset
    input_alphabet: frozenset
    stack_alphabet: frozenset
    transitions: tuple
    start_state: object
    final_states: frozenset

    def __post_init__(self):
        for name in ("states", "input_alphabet", "stack_alphabet", "final_states"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        object.__setattr__(
            self, "transitions", tuple((p, a, x, q, tuple(w)) for p, a, x, q, w in self.transitions)
        )
        if self.start_state not in self.states:
            raise ValueError("start state not declared")
        if not self.final_states <= self.states:
            raise ValueError("final states must be states")
        for p, a, x, q, w in self.transitions:
            if p not in self.states or q not in self.states:
                raise ValueError(f"transition references undeclared state: {(p, q)}")
            if a is not None and a not in self.input_alphabet:
                raise ValueError(f"undeclared input symbol {a!r}")
            if x is not None and x not in self.stack_alphabet:
                raise ValueError(f"undeclared stack symbol {x!r}")
            if any(y not in self.stack_alphabet for y in w):
                raise ValueError(f"undeclared stack symbol in push word {w!r}")


def cfg_to_pda(g: Grammar) -> Pda:
    """Three-state expand/match automaton accepting L(g)."""
    fresh = _Fresh(set())
    start, loop, accept = fresh("q_start"), fresh("q_loop"), fresh("q_accept")
    bottom = _Fresh(g.nonterminals | g.terminals)("$")
    trans = [(start, None, None, loop, (g.start, bottom))]
    for lhs, rhs in g.productions:
        trans.append((loop, None, lhs, loop, rhs))
    for a in sorted(g.terminals, key=symbol_name):
        trans.append((loop, a, a, loop, ()))
    trans.append((loop, None, bottom, accept, ()))
    return Pda(
        states={start, loop, accept},
        input_alphabet=g.terminals,
        stack_alphabet=g.nonterminals | g.terminals | {bottom},
        transitions=tuple(trans),
        start_state=start,
        final_states={accept},
    )


@dataclass(frozen=True)
class Triple:
    """Nonterminal [p X q]: from p with X on top, end in q having popped X."""

    p: object
    x: object
    q: object

    def __str__(self):
        return f"[{symbol_name(self.p)}|{symbol_name(self.x)}|{symbol_name(self.q)}]".replace(" ", "")


def _normalize_for_triples(a: Pda):
    """Every transition pops exactly one symbol and pushes at most two."""
    bottom = ("bottom",)
    while bottom in a.stack_alphabet:
        bottom = bottom + ("'",)
    drain = ("drain",)
    while drain in a.states:
        drain = drain + ("'",)
    gamma = sorted(a.stack_alphabet, key=symbol_name) + [bottom]
    trans = []
    for p, x, pop, q, push in a.transitions:
        if pop is None:
            trans += [(p, x, z, q, push + (z,)) for z in gamma]
        else:
            trans.append((p, x, pop, q, push))
    for f in sorted(a.final_states, key=symbol_name):
        trans += [(f, None, z, drain, ()) for z in gamma]
    trans += [(drain, None, z, drain, ()) for z in gamma]

    out = []
    for idx, (p, x, pop, q, push) in enumerate(trans):
        if len(push) <= 2:
            out.append((p, x, pop, q, push))
            continue
        m = len(push)
        mids = [("split", idx, i) for i in range(m - 2)]
        out.append((p, x, pop, mids[0], (push[m - 2], push[m - 1])))
        for i in range(1, m - 2):
            # stack now has push[m-1-i] on top
            out.append((mids[i - 1], None, push[m - 1 - i], mids[i], (push[m - 2 - i], push[m - 1 - i])))
        out.append((mids[-1], None, push[1], q, (push[0], push[1])))
    return out, bottom, drain


def pda_to_cfg(a: Pda) -> Grammar:
    """Triple construction [p X q]; only productive, reachable nonterminals are kept."""
    trans, bottom, drain = _normalize_for_triples(a)

    base = []
    first: dict = {}   # (r, Y) -> transitions with one pushed symbol Y
    pair1: dict = {}   # (r, Y1) -> transitions pushing (Y1, Y2)
    pair2: dict = {}   # (r, Y1, Y2) -> transitions
    for t in trans:
        p, x, pop, r, push = t
        if len(push) == 0:
            base.append((p, pop, r))
        elif len(push) == 1:
            first.setdefault((r, push[0]), []).append(t)
        else:
            pair1.setdefault((r, push[0]), []).append(t)
            pair2.setdefault((r, push[0], push[1]), []).append(t)

    prod: set = set()
    out_of: dict = {}  # (p, X) -> {q}
    into: dict = {}    # q -> {(p, X)}
    work = deque()

    def add(f):
        if f not in prod:
            prod.add(f)
            out_of.setdefault((f[0], f[1]), set()).add(f[2])
            into.setdefault(f[2], set()).add((f[0], f[1]))
            work.append(f)

    for f in base:
        add(f)
    while work:
        r, y, s = work.popleft()
        for p, _, pop, _, _ in first.get((r, y), ()):
            add((p, pop, s))
        for p, _, pop, _, push in pair1.get((r, y), ()):
            for q in list(out_of.get((s, push[1]), ())):
                add((p, pop, q))
        # (r, y, s) as the second element of a pair
        for r0, y1 in list(into.get(r, ())):
            for p, _, pop, _, _ in pair2.get((r0, y1, y), ()):
                add((p, pop, s))
    prod = {Triple(*f) for f in prod}

    rules = []
    for p, x, pop, r, push in trans:
        lead = () if x is None else (x,)
        if len(push) == 0:
            rules.append((Triple(p, pop, r), lead))
        elif len(push) == 1:
            for q in out_of.get((r, push[0]), ()):
                rules.append((Triple(p, pop, q), lead + (Triple(r, push[0], q),)))
        else:
            for s in out_of.get((r, push[0]), ()):
                for q in out_of.get((s, push[1]), ()):
                    rules.append((Triple(p, pop, q), lead + (Triple(r, push[0], s), Triple(s, push[1], q))))

    start = "S"
    rules.append((start, (Triple(a.start_state, bottom, drain),)))
    by_lhs: dict = {}
    for lhs, rhs in rules:
        by_lhs.setdefault(lhs, []).append(rhs)
    keep = {start}
    stack = [start]
    while stack:
        for rhs in by_lhs.get(stack.pop(), ()):
            for y in rhs:
                if isinstance(y, Triple) and y in prod and y not in keep:
                    keep.add(y)
                    stack.append(y)
    rules = [
        (lhs, rhs)
        for lhs, rhs in rules
        if lhs in keep and all(not isinstance(y, Triple) or y in prod for y in rhs)
    ]
    rules = list(dict.fromkeys(rules))
    return Grammar(frozenset(keep), a.input_alphabet, tuple(rules), start)


def tuple_pda(a: Pda, k: int, tuples) -> Pda:
    """Automaton over k-tuples accepting (w1..wk)(wk+1..w2k)... iff ``a`` accepts w1..w_{ik}.

    Mid-tuple states ``("in", q, i, t)`` remember the tuple ``t`` being read
    and how many of its symbols ``a`` has consumed; boundary states
    ``("bd", q)`` sit between tuples.
    """
    tuples = sorted(set(tuples), key=symbol_name)
    if any(len(t) != k for t in tuples):
        raise ValueError("all tuples must have length k")
    trans = []
    for p, x, pop, q, push in a.transitions:
        if x is None:
            trans.append((("bd", p), None, pop, ("bd", q), push))
            for t in tuples:
                for i in range(1, k + 1):
                    trans.append((("in", p, i, t), None, pop, ("in", q, i, t), push))
        else:
            for t in tuples:
                if t[0] == x:
                    trans.append((("bd", p), t, pop, ("in", q, 1, t), push))
                for i in range(1, k):
                    if t[i] == x:
                        trans.append((("in", p, i, t), None, pop, ("in", q, i + 1, t), push))
    for q in a.states:
        for t in tuples:
            trans.append((("in", q, k, t), None, None, ("bd", q), ()))

    init = ("bd", a.start_state)
    succ: dict = {}
    for t in trans:
        succ.setdefault(t[0], []).append(t[3])
    seen = {init}
    stack = [init]
    while stack:
        for q in succ.get(stack.pop(), ()):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    trans = [t for t in trans if t[0] in seen]
    return Pda(
        states=seen,
        input_alphabet=frozenset(tuples),
        stack_alphabet=a.stack_alphabet,
        transitions=tuple(trans),
        start_state=init,
        final_states={("bd", f) for f in a.final_states} & seen,
    )
