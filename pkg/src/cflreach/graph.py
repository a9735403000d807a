"""Edge-labeled directed multigraphs, weights, subdivision bookkeeping and
the layered DAG used for bounded-length path queries."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .grammar import symbol_name

Edge = tuple[int, object, int]

#: Label used in graph files for empty-word edges.
EPS_LABEL = "eps"


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    edges: tuple[Edge, ...]
    out_edges: tuple = field(init=False, repr=False, compare=False)
    in_edges: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.n < 0:
            raise ValueError("negative vertex count")
        outs = [[] for _ in range(self.n)]
        ins = [[] for _ in range(self.n)]
        for src, label, dst in self.edges:
            if not (0 <= src < self.n and 0 <= dst < self.n):
                raise ValueError(f"edge {(src, label, dst)} out of range for n={self.n}")
            outs[src].append((label, dst))
            ins[dst].append((label, src))
        object.__setattr__(self, "out_edges", tuple(map(tuple, outs)))
        object.__setattr__(self, "in_edges", tuple(map(tuple, ins)))

    @property
    def labels(self) -> set:
        return {label for _, label, _ in self.edges}

    def relabel(self, mapping) -> "LabeledGraph":
        return LabeledGraph(self.n, tuple((u, mapping.get(a, a), v) for u, a, v in self.edges))


@dataclass(frozen=True)
class WeightedLabeledGraph:
    base: LabeledGraph
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.weights) != len(self.base.edges):
            raise ValueError("one weight per edge required")

    @property
    def n(self) -> int:
        return self.base.n

    def weighted_edges(self):
        return [(u, a, v, w) for (u, a, v), w in zip(self.base.edges, self.weights)]


def path_graph(word) -> LabeledGraph:
    """Vertices 0..n, edge i -> i+1 labeled word[i]."""
    return LabeledGraph(len(word) + 1, tuple((i, a, i + 1) for i, a in enumerate(word)))


def check_acyclic(d: LabeledGraph) -> tuple[bool, list[int] | None]:
    """Kahn's algorithm; returns (True, topological order) or (False, None)."""
    indeg = [0] * d.n
    for _, _, v in d.edges:
        indeg[v] += 1
    queue = deque(v for v in range(d.n) if indeg[v] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for _, v in d.out_edges[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if len(order) != d.n:
        return False, None
    return True, order


def layered_dag(d: LabeledGraph, k: int) -> tuple[LabeledGraph, list[tuple[int, int]]]:
    """k copies of the vertex set; every edge of ``d`` joins layer i to layer i+1.

    Vertex ``layer * n + v`` is the copy of ``v`` in ``layer`` (0-based).
    The returned layer map lists ``(layer, v)`` for every new vertex.
    """
    if k < 1:
        raise ValueError("layer count k must be >= 1")
    n = d.n
    edges = [
        (i * n + u, a, (i + 1) * n + v)
        for i in range(k - 1)
        for u, a, v in d.edges
    ]
    layer_map = [(i, v) for i in range(k) for v in range(n)]
    return LabeledGraph(k * n, tuple(edges)), layer_map


def has_negative_cycle(d: WeightedLabeledGraph) -> bool:
    """Bellman-Ford on the label-erased graph, from a virtual source."""
    dist = [0] * d.n
    edges = [(u, v, w) for u, _, v, w in d.weighted_edges()]
    for _ in range(d.n):
        changed = False
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            return False
    return any(dist[u] + w < dist[v] for u, v, w in edges)


# ---------------------------------------------------------------------------
# subdivision graphs


@dataclass(frozen=True)
class LineEdge:
    src: int
    dst: int
    vertices: tuple[int, ...]  # full vertex path, src ... dst
    labels: tuple

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class SubdivisionGraph:
    base: LabeledGraph
    ordinary: frozenset
    k: int
    line_edges: tuple[LineEdge, ...] = field(compare=False, default=())

    @classmethod
    def from_graph(cls, base: LabeledGraph, ordinary: Iterable[int], k: int | None = None) -> "SubdivisionGraph":
        ordinary = frozenset(ordinary)
        if any(not 0 <= v < base.n for v in ordinary):
            raise ValueError("ordinary vertex out of range")
        for v in range(base.n):
            if v in ordinary:
                continue
            if len(base.in_edges[v]) != 1 or len(base.out_edges[v]) != 1:
                raise ValueError(f"additional vertex {v} must have in- and out-degree 1")
        lines = []
        covered = set()
        for u in sorted(ordinary):
            for label, v in base.out_edges[u]:
                path, labels = [u], [label]
                while v not in ordinary:
                    if v in path:
                        raise ValueError("cycle of additional vertices")
                    path.append(v)
                    covered.add(v)
                    label, v = base.out_edges[v][0]
                    labels.append(label)
                path.append(v)
                lines.append(LineEdge(u, v, tuple(path), tuple(labels)))
        if len(covered) != base.n - len(ordinary):
            raise ValueError("additional vertices not on any line-edge")
        longest = max((len(e) for e in lines), default=1)
        if k is None:
            k = longest
        if longest > k:
            raise ValueError(f"line-edge of length {longest} exceeds k={k}")
        return cls(base, ordinary, k, tuple(lines))


def subdivide(n_ordinary: int, words: Iterable[tuple[int, tuple, int]]) -> SubdivisionGraph:
    """Build a subdivision graph from line-edges ``(u, word, v)`` over ordinary vertices 0..n-1."""
    edges = []
    nxt = n_ordinary
    for u, word, v in words:
        if not word:
            raise ValueError("line-edges need at least one symbol")
        chain = [u] + list(range(nxt, nxt + len(word) - 1)) + [v]
        nxt += len(word) - 1
        edges += [(chain[i], word[i], chain[i + 1]) for i in range(len(word))]
    base = LabeledGraph(nxt, tuple(edges))
    return SubdivisionGraph.from_graph(base, range(n_ordinary))


# ---------------------------------------------------------------------------
# text format


def parse_graph(text: str):
    """Parse ``n m [weighted]`` + m edge lines (+ optional ``ordinary:`` line).

    Returns a LabeledGraph, a WeightedLabeledGraph when the header says
    ``weighted``, or a SubdivisionGraph when an ``ordinary:`` section exists.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty graph file")
    head = lines[0].split()
    try:
        if len(head) not in (2, 3) or (len(head) == 3 and head[2] != "weighted"):
            raise ValueError
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError(f"bad header {lines[0]!r}") from None
    weighted = len(head) == 3
    if n < 0 or m < 0 or len(lines) < 1 + m:
        raise GraphFormatError("header counts do not match the file")
    edges, weights = [], []
    for ln in lines[1 : 1 + m]:
        toks = ln.split()
        if len(toks) != (4 if weighted else 3):
            raise GraphFormatError(f"bad edge line {ln!r}")
        try:
            u, v = int(toks[0]), int(toks[2])
            w = int(toks[3]) if weighted else None
        except ValueError:
            raise GraphFormatError(f"bad edge line {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range in {ln!r}")
        edges.append((u, toks[1], v))
        weights.append(w)
    rest = lines[1 + m :]
    ordinary = None
    for ln in rest:
        if ln.startswith("ordinary:"):
            try:
                ordinary = [int(t) for t in ln[len("ordinary:") :].split()]
            except ValueError:
                raise GraphFormatError(f"bad ordinary line {ln!r}") from None
        else:
            raise GraphFormatError(f"unexpected trailing line {ln!r}")
    g = LabeledGraph(n, tuple(edges))
    if ordinary is not None:
        try:
            return SubdivisionGraph.from_graph(g, ordinary)
        except ValueError as exc:
            raise GraphFormatError(str(exc)) from None
    if weighted:
        return WeightedLabeledGraph(g, tuple(weights))
    return g


def format_graph(d, ordinary: Iterable[int] | None = None) -> str:
    if isinstance(d, SubdivisionGraph):
        ordinary = d.ordinary
        d = d.base
    weights = None
    if isinstance(d, WeightedLabeledGraph):
        weights = d.weights
        d = d.base
    head = f"{d.n} {len(d.edges)}" + (" weighted" if weights is not None else "")
    lines = [head]
    for i, (u, a, v) in enumerate(d.edges):
        line = f"{u} {symbol_name(a)} {v}"
        if weights is not None:
            line += f" {weights[i]}"
        lines.append(line)
    if ordinary is not None:
        lines.append("ordinary: " + " ".join(str(v) for v in sorted(ordinary)))
    return "\n".join(lines) + "\n"
