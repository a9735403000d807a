"""Context-free grammars: representation, text format, CNF conversion, Dyck
grammars and epsilon-edge lifting.

Symbols are arbitrary hashable values (strings when parsed from text, tuples
when produced by automaton constructions). A production is a pair
``(lhs, rhs)`` with ``rhs`` a tuple of symbols; the empty tuple is the empty
word.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Hashable, Iterable

Symbol = Hashable
Production = tuple[Symbol, tuple[Symbol, ...]]

#: Distinguished terminal standing for the empty word on graph edges.
EPS_PRIME = "eps'"

FORMS = ("general", "cnf", "lifted")


class GrammarError(ValueError):
    pass


@dataclass(frozen=True)
class Grammar:
    nonterminals: frozenset
    terminals: frozenset
    productions: tuple[Production, ...]
    start: Symbol
    form: str = "general"

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(
            self, "productions", tuple((lhs, tuple(rhs)) for lhs, rhs in self.productions)
        )
        if self.form not in FORMS:
            raise GrammarError(f"unknown grammar form {self.form!r}")
        if self.nonterminals & self.terminals:
            raise GrammarError(
                f"symbols both terminal and nonterminal: {sorted(map(str, self.nonterminals & self.terminals))}"
            )
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        symbols = self.nonterminals | self.terminals
        for lhs, rhs in self.productions:
            if lhs not in self.nonterminals:
                raise GrammarError(f"production lhs {lhs!r} is not a declared nonterminal")
            for x in rhs:
                if x not in symbols:
                    raise GrammarError(f"undeclared symbol {x!r} in production of {lhs!r}")
        if self.form == "cnf" and not is_cnf(self):
            raise GrammarError("grammar tagged cnf violates Chomsky normal form")
        if self.form == "lifted" and not is_binary_form(self):
            raise GrammarError("grammar tagged lifted is not in binary normal form")

    @property
    def size(self) -> int:
        return len(self.nonterminals) + len(self.terminals) + len(self.productions)

    def rules_for(self, lhs) -> list[tuple[Symbol, ...]]:
        return [rhs for a, rhs in self.productions if a == lhs]

    def has_epsilon_start(self) -> bool:
        return (self.start, ()) in set(self.productions)


def make_grammar(productions: Iterable[Production], start, terminals=None, form="general") -> Grammar:
    """Build a grammar whose nonterminals are the production heads (plus start).

    Symbols not appearing as a head are terminals, unless ``terminals`` is
    given explicitly.
    """
    productions = list(dict.fromkeys((lhs, tuple(rhs)) for lhs, rhs in productions))
    nts = {start} | {lhs for lhs, _ in productions}
    if terminals is None:
        terminals = {x for _, rhs in productions for x in rhs if x not in nts}
    return Grammar(frozenset(nts), frozenset(terminals), tuple(productions), start, form)


def is_cnf(g: Grammar) -> bool:
    on_rhs = {x for _, rhs in g.productions for x in rhs}
    for lhs, rhs in g.productions:
        if len(rhs) == 2:
            if not (rhs[0] in g.nonterminals and rhs[1] in g.nonterminals):
                return False
        elif len(rhs) == 1:
            if rhs[0] not in g.terminals:
                return False
        elif len(rhs) == 0:
            if lhs != g.start or g.start in on_rhs:
                return False
        else:
            return False
    return True


def is_binary_form(g: Grammar) -> bool:
    """CNF shapes with epsilon rules allowed for any nonterminal.

    This is what the reachability solvers consume; it covers both strict CNF
    and grammars produced by :func:`lift_epsilon`.
    """
    for _, rhs in g.productions:
        if len(rhs) == 2:
            if not (rhs[0] in g.nonterminals and rhs[1] in g.nonterminals):
                return False
        elif len(rhs) == 1:
            if rhs[0] not in g.terminals:
                return False
        elif len(rhs) > 2:
            return False
    return True


# ---------------------------------------------------------------------------
# text format


def parse_grammar(text: str) -> Grammar:
    """Parse ``A -> B C | a | eps`` lines; the first lhs is the start symbol."""
    rules: list[Production] = []
    start = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise GrammarError(f"line {lineno}: expected 'A -> ...'")
        head, body = line.split("->", 1)
        head = head.strip()
        if not head or len(head.split()) != 1:
            raise GrammarError(f"line {lineno}: bad left-hand side {head!r}")
        if start is None:
            start = head
        for alt in body.split("|"):
            toks = alt.split()
            if not toks:
                raise GrammarError(f"line {lineno}: empty alternative (write 'eps')")
            if toks == ["eps"]:
                rules.append((head, ()))
            elif "eps" in toks:
                raise GrammarError(f"line {lineno}: 'eps' must stand alone")
            else:
                rules.append((head, tuple(toks)))
    if start is None:
        raise GrammarError("grammar has no productions")
    return make_grammar(rules, start)


def symbol_name(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "<" + ",".join(symbol_name(y) for y in x) + ">"
    return str(x)


def format_grammar(g: Grammar, rename_nonterminals: bool = False) -> str:
    """Inverse of :func:`parse_grammar` (terminal names via :func:`symbol_name`)."""
    names: dict = {}
    if rename_nonterminals:
        order = [g.start] + sorted((a for a in g.nonterminals if a != g.start), key=symbol_name)
        names = {a: f"N{i}" for i, a in enumerate(order)}

    def name(x):
        return names.get(x) or symbol_name(x)

    by_lhs: dict = {}
    for lhs, rhs in g.productions:
        by_lhs.setdefault(lhs, []).append(" ".join(name(x) for x in rhs) if rhs else "eps")
    heads = [g.start] + [a for a in by_lhs if a != g.start]
    lines = [f"{name(a)} -> {' | '.join(by_lhs[a])}" for a in heads if a in by_lhs]
    if not lines:
        raise GrammarError("cannot write a grammar without productions")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# constructions


_BRACKETS = [("(", ")"), ("[", "]"), ("{", "}"), ("<", ">")]


def dyck_brackets(k: int) -> list[tuple[str, str]]:
    if k <= len(_BRACKETS):
        return _BRACKETS[:k]
    return [(f"({i}", f"){i}") for i in range(1, k + 1)]


def dyck_grammar(k: int) -> Grammar:
    """S -> eps | S S | o_1 S c_1 | ... | o_k S c_k."""
    if k < 1:
        raise GrammarError("Dyck grammar needs k >= 1")
    pairs = dyck_brackets(k)
    rules = [("S", ()), ("S", ("S", "S"))] + [("S", (o, "S", c)) for o, c in pairs]
    terms = [t for pair in pairs for t in pair]
    return Grammar(frozenset({"S"}), frozenset(terms), tuple(rules), "S")


class _Fresh:
    def __init__(self, taken):
        self.taken = set(taken)

    def __call__(self, base: str) -> str:
        name = base
        for i in itertools.count(1):
            if name not in self.taken:
                break
            name = f"{base}_{i}"
        self.taken.add(name)
        return name


def _dedupe(rules):
    return list(dict.fromkeys(rules))


def to_cnf(g: Grammar) -> Grammar:
    """Chomsky normal form via START, TERM, BIN, DEL, UNIT, then useless-symbol removal."""
    if g.form == "cnf" or is_cnf(g):
        return replace(g, form="cnf")
    fresh = _Fresh(g.nonterminals | g.terminals)
    N = set(g.nonterminals)

    # START
    s0 = fresh("S0")
    N.add(s0)
    rules = [(s0, (g.start,))] + list(g.productions)

    # TERM
    term_nt: dict = {}
    out = []
    for lhs, rhs in rules:
        if len(rhs) >= 2:
            new_rhs = []
            for x in rhs:
                if x in g.terminals:
                    if x not in term_nt:
                        term_nt[x] = fresh(f"T[{symbol_name(x)}]")
                        N.add(term_nt[x])
                    x = term_nt[x]
                new_rhs.append(x)
            rhs = tuple(new_rhs)
        out.append((lhs, rhs))
    out += [(t, (a,)) for a, t in term_nt.items()]
    rules = out

    # BIN
    out = []
    for lhs, rhs in rules:
        while len(rhs) > 2:
            b = fresh(f"B[{symbol_name(lhs)}]")
            N.add(b)
            out.append((lhs, (rhs[0], b)))
            lhs, rhs = b, rhs[1:]
        out.append((lhs, rhs))
    rules = _dedupe(out)

    # DEL
    nullable: set = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            if lhs not in nullable and all(x in nullable for x in rhs):
                nullable.add(lhs)
                changed = True
    out = []
    for lhs, rhs in rules:
        if not rhs:
            continue
        out.append((lhs, rhs))
        if len(rhs) == 2:
            x, y = rhs
            if x in nullable:
                out.append((lhs, (y,)))
            if y in nullable:
                out.append((lhs, (x,)))
    if s0 in nullable:
        out.append((s0, ()))
    rules = _dedupe(out)

    # UNIT
    unit_edges: dict = {}
    for lhs, rhs in rules:
        if len(rhs) == 1 and rhs[0] in N:
            unit_edges.setdefault(lhs, []).append(rhs[0])
    unit = {}
    for a in N:
        seen = {a}
        stack = [a]
        while stack:
            for b in unit_edges.get(stack.pop(), ()):
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        unit[a] = seen
    non_unit = [(lhs, rhs) for lhs, rhs in rules if not (len(rhs) == 1 and rhs[0] in N)]
    by_lhs: dict = {}
    for lhs, rhs in non_unit:
        by_lhs.setdefault(lhs, []).append(rhs)
    out = []
    for a in sorted(N, key=symbol_name):
        for b in sorted(unit[a], key=symbol_name):
            for rhs in by_lhs.get(b, []):
                if rhs == () and a != s0:
                    continue
                out.append((a, rhs))
    rules = _dedupe(out)

    rules = _remove_useless(rules, s0, g.terminals)
    nts = {s0} | {lhs for lhs, _ in rules}
    return Grammar(frozenset(nts), g.terminals, tuple(rules), s0, "cnf")


def _remove_useless(rules, start, terminals):
    generating: set = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            if lhs not in generating and all(x in terminals or x in generating for x in rhs):
                generating.add(lhs)
                changed = True
    rules = [(l, r) for l, r in rules if l in generating and all(x in terminals or x in generating for x in r)]
    reach = {start}
    stack = [start]
    by_lhs: dict = {}
    for lhs, rhs in rules:
        by_lhs.setdefault(lhs, []).append(rhs)
    while stack:
        a = stack.pop()
        for rhs in by_lhs.get(a, []):
            for x in rhs:
                if x not in terminals and x not in reach:
                    reach.add(x)
                    stack.append(x)
    return [(l, r) for l, r in rules if l in reach]


def lift_epsilon(g: Grammar) -> Grammar:
    """Add E -> eps' and A -> E A | A E for every nonterminal A.

    The lifted grammar accepts a word over terminals + {eps'} iff the word
    with every eps' removed is accepted by ``g``.
    """
    if not is_cnf(g):
        raise GrammarError("lift_epsilon expects a CNF grammar")
    if EPS_PRIME in g.terminals or EPS_PRIME in g.nonterminals:
        raise GrammarError(f"symbol {EPS_PRIME!r} is reserved")
    e = _Fresh(g.nonterminals | g.terminals)("E")
    rules = list(g.productions) + [(e, (EPS_PRIME,))]
    for a in sorted(g.nonterminals, key=symbol_name):
        rules += [(a, (e, a)), (a, (a, e))]
    return Grammar(g.nonterminals | {e}, g.terminals | {EPS_PRIME}, tuple(rules), g.start, "lifted")


def strip_eps_prime(word):
    return tuple(x for x in word if x != EPS_PRIME)
