"""Gadget constructions mapping source problems to reachability instances.

Every generator returns a :class:`ReductionInstance` whose ``provenance``
records how flat vertex or state ids map back to source entities. Source
vertices are 0-based; the 1-based families in the literature (a_1..a_n,
u^i_j, ...) appear here shifted down by one.

Binary encodings write ``i`` on ``ceil(log2 n)`` bits, most significant bit
first. Pushing an encoding symbol by symbol leaves its last bit on top, so
popping the reversed encoding removes it again.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .automata import cfg_to_pda, pda_to_cfg, tuple_pda
from .grammar import EPS_PRIME, Grammar, dyck_grammar, format_grammar, lift_epsilon, to_cnf
from .graph import LabeledGraph, SubdivisionGraph, WeightedLabeledGraph, format_graph, subdivide
from .instances import AeMonoInstance, LedInstance, OvInstance, TriangleInstance
from .pds import Pds, format_pds, split_transitions

log = logging.getLogger(__name__)

KINDS = ("triangle-dyck1", "ov-dyck2", "triangle-pds", "aemono-pds", "aemono-sub", "led-wcflr", "subdiv")


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionInstance:
    kind: str
    payload: dict  # keys among grammar, graph, pds
    query: dict    # {"st": [s, t]} or {"pairs": [[s, t], ...]}
    provenance: dict = field(default_factory=dict)

    @property
    def grammar(self) -> Grammar | None:
        return self.payload.get("grammar")

    @property
    def graph(self):
        return self.payload.get("graph")

    @property
    def pds(self) -> Pds | None:
        return self.payload.get("pds")


def bits_for(n: int) -> int:
    """ceil(log2 n) for n >= 2."""
    if n < 2:
        raise ReductionError("binary encodings need n >= 2")
    return (n - 1).bit_length()


def encode(x: int, width: int) -> str:
    return format(x, f"0{width}b") if width else ""


# ---------------------------------------------------------------------------
# Triangle -> Dyck-1


def triangle_to_dyck1(u: TriangleInstance) -> ReductionInstance:
    n = u.n
    if n < 1:
        raise ReductionError("need at least one vertex")
    vs, vz, vt = 0, 1 + 4 * n, 2 + 4 * n
    a = lambda i: 1 + i
    b = lambda i: 1 + n + i
    c = lambda i: 1 + 2 * n + i
    d = lambda i: 1 + 3 * n + i
    edges = [(vs, "(", a(0))]
    edges += [(a(i), "(", a(i + 1)) for i in range(n - 1)]
    for i, j in u.arcs():
        edges += [(a(i), "(", b(j)), (b(i), ")", c(j)), (c(i), "(", d(j))]
    edges += [(d(i), ")", d(i - 1)) for i in range(1, n)]
    edges += [(d(0), ")", vz), (vz, ")", vt)]
    graph = LabeledGraph(3 + 4 * n, tuple(edges))
    prov = {
        "source_n": n,
        "layout": {"v_s": vs, "a": 1, "b": 1 + n, "c": 1 + 2 * n, "d": 1 + 3 * n, "v_z": vz, "v_t": vt},
        "family_stride": n,
    }
    return ReductionInstance("triangle-dyck1", {"grammar": dyck_grammar(1), "graph": graph}, {"st": [vs, vt]}, prov)


# ---------------------------------------------------------------------------
# OV -> Dyck-2


def ov_to_dyck2(inst: OvInstance) -> ReductionInstance:
    d = inst.d
    if d < 2:
        raise ReductionError("OV gadget needs dimension d >= 2")
    nx, ny = len(inst.X), len(inst.Y)
    vs, vl, vt = 0, 1, 2
    u = lambda i, j: 3 + i * (d - 1) + (j - 1)
    w = lambda i, j: 3 + nx * (d - 1) + i * (d - 1) + (j - 1)
    hx = {0: "(", 1: "["}
    edges = []
    for i, x in enumerate(inst.X):
        edges.append((vs, hx[x[0]], u(i, 1)))
        edges += [(u(i, j), hx[x[j]], u(i, j + 1)) for j in range(1, d - 1)]
        edges.append((u(i, d - 1), hx[x[d - 1]], vl))
    for i, y in enumerate(inst.Y):
        yb = lambda m: y[m - 1]  # 1-based bit
        edges.append((vl, ")", w(i, 1)))
        if yb(d) == 0:
            edges.append((vl, "]", w(i, 1)))
        for j in range(1, d - 1):
            edges.append((w(i, j), ")", w(i, j + 1)))
            if yb(d - j) == 0:
                edges.append((w(i, j), "]", w(i, j + 1)))
        edges.append((w(i, d - 1), ")", vt))
        if yb(1) == 0:
            edges.append((w(i, d - 1), "]", vt))
    n_vertices = 3 + (d - 1) * (nx + ny)
    graph = LabeledGraph(n_vertices, tuple(edges))
    prov = {
        "d": d,
        "layout": {"v_s": vs, "v_l": vl, "v_t": vt, "u": 3, "w": 3 + nx * (d - 1)},
        "family_stride": d - 1,
        "u_index": "u + i*(d-1) + (j-1) for vector i, position j in 1..d-1",
    }
    return ReductionInstance("ov-dyck2", {"grammar": dyck_grammar(2), "graph": graph}, {"st": [vs, vt]}, prov)


# ---------------------------------------------------------------------------
# Triangle -> PDS


def triangle_pds_raw(u: TriangleInstance) -> Pds:
    """The gadget before splitting multi-symbol and silent transitions."""
    n = u.n
    L = bits_for(n)
    qs, qt = 0, 1 + 4 * n
    a = lambda i: 1 + i
    b = lambda i: 1 + n + i
    c = lambda i: 1 + 2 * n + i
    d = lambda i: 1 + 3 * n + i
    trans = [(qs, "", encode(i, L), a(i)) for i in range(n)]
    for i, j in u.arcs():
        trans += [(a(i), "", "", b(j)), (b(i), "", "", c(j)), (c(i), "", "", d(j))]
    trans += [(d(i), encode(i, L)[::-1], "", qt) for i in range(n)]
    names = {qs: "q_s", qt: "q_t"}
    for fam, off in (("a", 1), ("b", 1 + n), ("c", 1 + 2 * n), ("d", 1 + 3 * n)):
        names.update({off + i: f"{fam}{i}" for i in range(n)})
    return Pds(4 * n + 2, frozenset(range(4 * n + 2)), frozenset("01"), tuple(trans), L, names)


def triangle_to_pds(u: TriangleInstance) -> ReductionInstance:
    raw = triangle_pds_raw(u)
    p = split_transitions(raw)
    n = u.n
    prov = {
        "layout": {"q_s": 0, "a": 1, "b": 1 + n, "c": 1 + 2 * n, "d": 1 + 3 * n, "q_t": 4 * n + 1},
        "ordinary_states": 4 * n + 2,
        "auxiliary_states": p.n_states - raw.n_states,
        "bits": raw.depth_bound,
    }
    return ReductionInstance("triangle-pds", {"pds": p}, {"st": [0, 4 * n + 1]}, prov)


# ---------------------------------------------------------------------------
# AE-MonoTriangle -> PDS / subdivision graph


def aemono_pds_raw(inst: AeMonoInstance) -> Pds:
    n = inst.n
    L = bits_for(n)
    x, y, z, xp, yp = (lambda i, o=o: o * n + i for o in range(5))
    trans = []
    for i, j in inst.arcs():
        col = encode(inst.color(i, j), 2 * L)
        ei, ej = encode(i, L), encode(j, L)
        trans += [
            (x(i), "", ei + ej + col, y(j)),
            (y(i), col[::-1], col, z(j)),
            (z(i), col[::-1], "", xp(j)),
            (xp(i), ej[::-1] + ei[::-1], "", yp(j)),
        ]
    names = {o * n + i: f"{fam}{i}" for o, fam in enumerate(("x", "y", "z", "x'", "y'")) for i in range(n)}
    return Pds(5 * n, frozenset(range(5 * n)), frozenset("01"), tuple(trans), 4 * L, names)


def _aemono_query(inst: AeMonoInstance) -> dict:
    n = inst.n
    return {"pairs": [[i, 4 * n + j] for i, j in inst.arcs()]}


def aemono_to_pds(inst: AeMonoInstance) -> ReductionInstance:
    raw = aemono_pds_raw(inst)
    p = split_transitions(raw)
    n = inst.n
    prov = {
        "layout": {"x": 0, "y": n, "z": 2 * n, "x'": 3 * n, "y'": 4 * n},
        "ordinary_states": 5 * n,
        "auxiliary_states": p.n_states - raw.n_states,
        "bits": bits_for(n),
    }
    return ReductionInstance("aemono-pds", {"pds": p}, _aemono_query(inst), prov)


#: Stack symbol -> (push label, pop label) in Dyck-2.
STACK_BRACKETS = {"0": ("(", ")"), "1": ("[", "]")}


def pds_transition_word(pop: str, push: str) -> tuple:
    return tuple(STACK_BRACKETS[s][1] for s in pop) + tuple(STACK_BRACKETS[s][0] for s in push)


def aemono_to_subdivision_cflr(inst: AeMonoInstance) -> ReductionInstance:
    raw = aemono_pds_raw(inst)
    lines = [(q, pds_transition_word(pop, push), q2) for q, pop, push, q2 in raw.transitions]
    sd = subdivide(raw.n_states, lines)
    sd = SubdivisionGraph.from_graph(sd.base, sd.ordinary, k=4 * bits_for(inst.n))
    n = inst.n
    prov = {
        "layout": {"x": 0, "y": n, "z": 2 * n, "x'": 3 * n, "y'": 4 * n},
        "ordinary_vertices": 5 * n,
        "stack_brackets": STACK_BRACKETS,
        "k": sd.k,
    }
    return ReductionInstance("aemono-sub", {"grammar": dyck_grammar(2), "graph": sd}, _aemono_query(inst), prov)


# ---------------------------------------------------------------------------
# LED -> weighted CFL reachability


def led_to_weighted_cflr(inst: LedInstance) -> ReductionInstance:
    g = inst.grammar
    if EPS_PRIME in g.terminals:
        raise ReductionError(f"terminal {EPS_PRIME!r} is reserved for deletion edges")
    sigma = sorted(g.terminals)
    w = inst.word
    n = len(w)
    edges, weights = [], []

    def add(u, label, v, cost):
        edges.append((u, label, v))
        weights.append(cost)

    for i in range(n):
        add(i, w[i], i + 1, 0)
    if inst.allow_ins:
        for i in range(n + 1):
            for s in sigma:
                add(i, s, i, inst.w_ins)
    if inst.allow_del:
        for i in range(n):
            add(i, EPS_PRIME, i + 1, inst.w_del)
    if inst.allow_repl:
        for i in range(n):
            for s in sigma:
                if s != w[i]:
                    add(i, s, i + 1, inst.w_repl)
    graph = WeightedLabeledGraph(LabeledGraph(n + 1, tuple(edges)), tuple(weights))
    grammar = lift_epsilon(to_cnf(g))
    prov = {"word_length": n, "vertex_i": "sits before word position i (0-based)"}
    return ReductionInstance("led-wcflr", {"grammar": grammar, "graph": graph}, {"st": [0, n]}, prov)


# ---------------------------------------------------------------------------
# subdivision preprocessing


@dataclass(frozen=True)
class SubdivisionResult:
    graph: LabeledGraph          # over ordinary vertices, renumbered 0..m-1
    grammar: Grammar             # over k-tuples
    ordinary: tuple              # ordinary[i] = original id of new vertex i
    k: int
    lifted: Grammar              # the epsilon-lifted CNF grammar the tuples are read against
    tuples: frozenset
    budget_constant: float       # |G'| / (|G''|^2 * |Sigma'|^k * k)


def subdivision_preprocess(sd: SubdivisionGraph, g: Grammar, max_k: int = 4, full_alphabet: bool = False):
    """Collapse every line-edge into one edge labeled by its eps'-padded k-tuple.

    The returned grammar accepts a tuple word iff the concatenated symbols,
    with eps' removed, are in L(g). Only tuples occurring in the graph enter
    the alphabet unless ``full_alphabet`` is set.
    """
    k = max(sd.k, 1)
    lifted = lift_epsilon(to_cnf(g))
    sigma_p = len(g.terminals) + 1
    if k > max_k:
        raise ReductionError(
            f"k={k} exceeds the cap {max_k}: the tuple alphabet would have up to {sigma_p}^{k} = {sigma_p ** k} symbols"
        )
    order = tuple(sorted(sd.ordinary))
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    for e in sd.line_edges:
        label = tuple(e.labels) + (EPS_PRIME,) * (k - len(e.labels))
        edges.append((pos[e.src], label, pos[e.dst]))
    graph = LabeledGraph(len(order), tuple(edges))
    if full_alphabet:
        import itertools

        tuples = set(itertools.product(sorted(lifted.terminals), repeat=k))
    else:
        tuples = {label for _, label, _ in edges}
    if tuples:
        g_prime = pda_to_cfg(tuple_pda(cfg_to_pda(lifted), k, tuples))
    else:
        g_prime = Grammar(frozenset({"S"}), frozenset(), (), "S")
    budget = lifted.size**2 * sigma_p**k * k
    const = g_prime.size / budget
    log.info("subdivision preprocess: k=%d |G''|=%d |G'|=%d tuples=%d constant=%.4f",
             k, lifted.size, g_prime.size, len(tuples), const)
    return SubdivisionResult(graph, g_prime, order, k, lifted, frozenset(tuples), const)


def subdiv_instance(sd: SubdivisionGraph, g: Grammar, **kw) -> ReductionInstance:
    res = subdivision_preprocess(sd, g, **kw)
    m = len(res.ordinary)
    prov = {
        "ordinary": list(res.ordinary),
        "k": res.k,
        "tuples": len(res.tuples),
        "grammar_size": res.grammar.size,
        "budget_constant": res.budget_constant,
    }
    query = {"pairs": [[u, v] for u in range(m) for v in range(m)]}
    return ReductionInstance("subdiv", {"grammar": res.grammar, "graph": res.graph}, query, prov)


# ---------------------------------------------------------------------------
# files


def write_instance(ri: ReductionInstance, outdir) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if ri.grammar is not None:
        path = out / "grammar.cfg"
        path.write_text(format_grammar(ri.grammar, rename_nonterminals=True))
        written.append(path)
    if ri.graph is not None:
        path = out / "graph.g"
        path.write_text(format_graph(ri.graph))
        written.append(path)
    if ri.pds is not None:
        path = out / "system.pds"
        path.write_text(format_pds(ri.pds))
        written.append(path)
    path = out / "provenance.json"
    doc = {"kind": ri.kind, "query": ri.query, "provenance": ri.provenance}
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    written.append(path)
    return written

