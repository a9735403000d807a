"""Source-problem instances (Triangle, OV, AE-MonoTriangle, LED), their text
formats, and seeded random generators for every instance family."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .grammar import Grammar, format_grammar, parse_grammar
from .graph import LabeledGraph, SubdivisionGraph, subdivide


class InstanceFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TriangleInstance:
    """Simple undirected graph on vertices 0..n-1; edges stored as (i, j), i < j."""

    n: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError("self-loops are not allowed")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge {(i, j)} out of range")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacent(self, i, j) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def arcs(self):
        """Both orientations of every edge, sorted."""
        return sorted([(i, j) for i, j in self.edges] + [(j, i) for i, j in self.edges])


@dataclass(frozen=True)
class OvInstance:
    X: tuple
    Y: tuple

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(tuple(int(b) for b in x) for x in self.X))
        object.__setattr__(self, "Y", tuple(tuple(int(b) for b in y) for y in self.Y))
        dims = {len(v) for v in self.X + self.Y}
        if len(dims) > 1:
            raise ValueError(f"inconsistent vector dimensions {sorted(dims)}")
        if any(b not in (0, 1) for v in self.X + self.Y for b in v):
            raise ValueError("vectors must be boolean")

    @property
    def d(self) -> int:
        return len((self.X + self.Y)[0]) if self.X + self.Y else 0


@dataclass(frozen=True)
class AeMonoInstance:
    n: int
    colors: tuple  # sorted ((i, j), color) with i < j

    def __post_init__(self):
        items = dict(self.colors) if not isinstance(self.colors, dict) else self.colors
        norm = {}
        for (i, j), c in dict(items).items():
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"bad edge {(i, j)}")
            if not 0 <= c < max(self.n * self.n, 1):
                raise ValueError(f"color {c} outside 0..n^2-1")
            norm[min(i, j), max(i, j)] = c
        object.__setattr__(self, "colors", tuple(sorted(norm.items())))

    @property
    def color_map(self) -> dict:
        return dict(self.colors)

    def color(self, i, j):
        return self.color_map.get((min(i, j), max(i, j)))

    @property
    def edges(self):
        return [e for e, _ in self.colors]

    def arcs(self):
        return sorted([(i, j) for (i, j), _ in self.colors] + [(j, i) for (i, j), _ in self.colors])


@dataclass(frozen=True)
class LedInstance:
    word: tuple
    grammar: Grammar
    w_ins: int = 1
    w_del: int = 1
    w_repl: int = 1
    allow_ins: bool = True
    allow_del: bool = True
    allow_repl: bool = True

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if min(self.w_ins, self.w_del, self.w_repl) < 0:
            raise ValueError("edit costs must be nonnegative")
        bad = set(self.word) - self.grammar.terminals
        if bad:
            raise ValueError(f"word uses symbols outside the grammar alphabet: {sorted(bad)}")


# ---------------------------------------------------------------------------
# text formats


def _rows(text):
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    return [r for r in rows if r]


def parse_triangle(text: str) -> TriangleInstance:
    rows = _rows(text)
    try:
        n, m = map(int, rows[0].split())
        edges = [tuple(map(int, r.split())) for r in rows[1 : 1 + m]]
        if len(edges) != m or any(len(e) != 2 for e in edges):
            raise ValueError("edge count mismatch")
        return TriangleInstance(n, frozenset(edges))
    except (ValueError, IndexError) as exc:
        raise InstanceFormatError(f"bad triangle instance: {exc}") from None


def format_triangle(u: TriangleInstance) -> str:
    return "\n".join([f"{u.n} {len(u.edges)}"] + [f"{i} {j}" for i, j in sorted(u.edges)]) + "\n"


def parse_aemono(text: str) -> AeMonoInstance:
    rows = _rows(text)
    try:
        n, m = map(int, rows[0].split())
        colors = {}
        for r in rows[1 : 1 + m]:
            i, j, c = map(int, r.split())
            colors[i, j] = c
        if len(colors) != m:
            raise ValueError("edge count mismatch")
        return AeMonoInstance(n, colors)
    except (ValueError, IndexError) as exc:
        raise InstanceFormatError(f"bad AE-Mono instance: {exc}") from None


def format_aemono(u: AeMonoInstance) -> str:
    return "\n".join([f"{u.n} {len(u.colors)}"] + [f"{i} {j} {c}" for (i, j), c in u.colors]) + "\n"


def parse_ov(text: str) -> OvInstance:
    """``n d`` then n bit strings for X, then n bit strings for Y."""
    rows = _rows(text)
    try:
        n, d = map(int, rows[0].split())
        vecs = [tuple(int(b) for b in r) for r in rows[1 : 1 + 2 * n]]
        if len(vecs) != 2 * n or any(len(v) != d for v in vecs):
            raise ValueError("vector count or dimension mismatch")
        return OvInstance(tuple(vecs[:n]), tuple(vecs[n:]))
    except (ValueError, IndexError) as exc:
        raise InstanceFormatError(f"bad OV instance: {exc}") from None


def format_ov(i: OvInstance) -> str:
    rows = [f"{len(i.X)} {i.d}"] + ["".join(map(str, v)) for v in i.X + i.Y]
    return "\n".join(rows) + "\n"


def parse_led(text: str) -> LedInstance:
    """Header lines ``word: a b c``, ``costs: ins del repl``, ``ops: ins,del,repl``,
    then ``grammar:`` followed by a grammar in the usual text format."""
    head, sep, body = text.partition("grammar:")
    if not sep:
        raise InstanceFormatError("LED instance needs a 'grammar:' section")
    fields = {}
    for row in _rows(head):
        key, _, val = row.partition(":")
        fields[key.strip()] = val.strip()
    try:
        g = parse_grammar(body)
        word = tuple(fields.get("word", "").split())
        costs = [int(x) for x in fields.get("costs", "1 1 1").split()]
        ops = {o.strip() for o in fields.get("ops", "ins,del,repl").split(",") if o.strip()}
        if len(costs) != 3 or not ops <= {"ins", "del", "repl"}:
            raise ValueError("bad costs or ops")
        return LedInstance(word, g, *costs, "ins" in ops, "del" in ops, "repl" in ops)
    except ValueError as exc:
        raise InstanceFormatError(f"bad LED instance: {exc}") from None


def format_led(i: LedInstance) -> str:
    ops = [o for o, on in (("ins", i.allow_ins), ("del", i.allow_del), ("repl", i.allow_repl)) if on]
    return (
        f"word: {' '.join(i.word)}\n"
        f"costs: {i.w_ins} {i.w_del} {i.w_repl}\n"
        f"ops: {','.join(ops)}\n"
        f"grammar:\n{format_grammar(i.grammar)}"
    )


# ---------------------------------------------------------------------------
# random generators


def random_triangle_instance(rng: random.Random, n: int, p: float) -> TriangleInstance:
    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    return TriangleInstance(n, frozenset(edges))


def random_ov_instance(rng: random.Random, n: int, d: int, p_one: float = 0.5) -> OvInstance:
    def vec():
        return tuple(int(rng.random() < p_one) for _ in range(d))

    return OvInstance(tuple(vec() for _ in range(n)), tuple(vec() for _ in range(n)))


def random_aemono_instance(rng: random.Random, n: int, p: float, n_colors: int) -> AeMonoInstance:
    n_colors = max(1, min(n_colors, n * n))
    colors = {
        (i, j): rng.randrange(n_colors)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    }
    return AeMonoInstance(n, colors)


def random_cnf_grammar(
    rng: random.Random,
    terminals=("a", "b"),
    n_nonterminals: int = 3,
    n_binary: int = 4,
    n_terminal_rules: int = 3,
    epsilon: bool | None = None,
) -> Grammar:
    """Random CNF grammar; every terminal gets at least one A -> a rule."""
    nts = ["S"] + [f"A{i}" for i in range(1, n_nonterminals)]
    rules = []
    for a in terminals:
        rules.append((rng.choice(nts), (a,)))
    for _ in range(max(0, n_terminal_rules - len(terminals))):
        rules.append((rng.choice(nts), (rng.choice(terminals),)))
    # S stays off right-hand sides so that S -> eps keeps the grammar in CNF
    rhs_pool = nts[1:] if len(nts) > 1 else nts
    for _ in range(n_binary):
        rules.append((rng.choice(nts), (rng.choice(rhs_pool), rng.choice(rhs_pool))))
    if epsilon is None:
        epsilon = rng.random() < 0.3
    if epsilon and len(nts) > 1:
        rules.append(("S", ()))
    return Grammar(frozenset(nts), frozenset(terminals), tuple(dict.fromkeys(rules)), "S", "cnf")


def random_general_grammar(
    rng: random.Random,
    terminals=("a", "b"),
    n_nonterminals: int = 3,
    n_rules: int = 7,
    max_rhs: int = 3,
) -> Grammar:
    """Arbitrary grammar: epsilon rules, unit rules, mixed long right-hand sides."""
    nts = ["S"] + [f"A{i}" for i in range(1, n_nonterminals)]
    symbols = nts + list(terminals)
    rules = []
    for _ in range(n_rules):
        length = rng.randint(0, max_rhs)
        rules.append((rng.choice(nts), tuple(rng.choice(symbols) for _ in range(length))))
    rules = list(dict.fromkeys(rules))
    return Grammar(frozenset(nts), frozenset(terminals), tuple(rules), "S")


def random_labeled_graph(rng: random.Random, n: int, m: int, labels) -> LabeledGraph:
    labels = list(labels)
    edges = [(rng.randrange(n), rng.choice(labels), rng.randrange(n)) for _ in range(m)] if n else []
    return LabeledGraph(n, tuple(edges))


def random_dag(rng: random.Random, n: int, m: int, labels) -> LabeledGraph:
    """Random DAG; vertex ids are shuffled so the identity is not a topological order."""
    labels = list(labels)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = []
    if n >= 2:
        for _ in range(m):
            i, j = sorted(rng.sample(range(n), 2))
            edges.append((perm[i], rng.choice(labels), perm[j]))
    return LabeledGraph(n, tuple(edges))


def random_subdivision_graph(
    rng: random.Random, n_ordinary: int, n_lines: int, labels, min_len: int = 1, max_len: int = 3
) -> SubdivisionGraph:
    labels = list(labels)
    lines = []
    for _ in range(n_lines):
        length = rng.randint(min_len, max_len)
        word = tuple(rng.choice(labels) for _ in range(length))
        lines.append((rng.randrange(n_ordinary), word, rng.randrange(n_ordinary)))
    sd = subdivide(n_ordinary, lines)
    return SubdivisionGraph.from_graph(sd.base, sd.ordinary, k=max(max_len, 1))


def random_led_word(rng: random.Random, terminals, max_len: int) -> tuple:
    terminals = sorted(terminals)
    return tuple(rng.choice(terminals) for _ in range(rng.randint(0, max_len)))
