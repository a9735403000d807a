import json
import random

import pytest
from hypothesis import given, strategies as st

from cflreach.grammar import dyck_grammar, make_grammar, to_cnf
from cflreach.graph import LabeledGraph, SubdivisionGraph, subdivide
from cflreach.harness import led_agreement, random_led_instance, solve, subdiv_agreement
from cflreach.instances import AeMonoInstance, LedInstance, OvInstance, TriangleInstance
from cflreach.pds import search
from cflreach.reductions import (
    ReductionError,
    aemono_to_pds,
    aemono_to_subdivision_cflr,
    bits_for,
    encode,
    led_to_weighted_cflr,
    ov_to_dyck2,
    subdivision_preprocess,
    triangle_to_dyck1,
    triangle_to_pds,
    write_instance,
)

from conftest import mono_k3


def test_encoding_width_and_order():
    assert bits_for(2) == 1 and bits_for(4) == 2 and bits_for(5) == 3
    assert encode(1, 3) == "001"
    with pytest.raises(ReductionError):
        bits_for(1)


def test_k3_dyck1_gadget(k3):
    ri = triangle_to_dyck1(k3)
    assert ri.graph.n == 15 and len(ri.graph.edges) == 25
    assert solve(ri)


def test_edgeless_dyck1_gadget():
    assert not solve(triangle_to_dyck1(TriangleInstance(3, frozenset())))


@pytest.mark.parametrize(
    "X, Y, want", [(((1, 0),), ((0, 1),), True), (((1, 1),), ((1, 1),), False)]
)
def test_ov_examples(X, Y, want):
    assert solve(ov_to_dyck2(OvInstance(X, Y))) is want


def test_ov_vertex_count():
    ri = ov_to_dyck2(OvInstance(((1, 0), (0, 0)), ((1, 1), (0, 1))))
    assert ri.graph.n == 7


def test_ov_rejects_dimension_one():
    with pytest.raises(ReductionError):
        ov_to_dyck2(OvInstance(((1,),), ((0,),)))


def test_triangle_pds_examples(k3, c4):
    assert solve(triangle_to_pds(k3)) is True
    assert solve(triangle_to_pds(c4)) is False


def test_triangle_pds_depth_for_n4():
    u = TriangleInstance(4, frozenset({(0, 1), (1, 2), (0, 2), (2, 3)}))
    ri = triangle_to_pds(u)
    assert ri.pds.depth_bound == 2
    assert search(ri.pds, 0, bound=10).max_depth <= 2


@pytest.mark.parametrize("colors, want", [((0, 0, 0), True), ((0, 1, 2), False)])
def test_aemono_examples(colors, want):
    inst = mono_k3(*colors)
    for build in (aemono_to_pds, aemono_to_subdivision_cflr):
        answers = solve(build(inst))
        assert set(answers.values()) == {want}


def test_aemono_subdivision_shape():
    ri = aemono_to_subdivision_cflr(mono_k3(0, 0, 0))
    assert len(ri.graph.ordinary) == 15
    assert max(len(e) for e in ri.graph.line_edges) <= 4 * bits_for(3)


def test_aemono_rejects_large_color():
    with pytest.raises(ValueError):
        AeMonoInstance(2, {(0, 1): 4})


@given(st.integers(0, 10**6))
def test_aemono_pds_and_subdivision_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    inst = AeMonoInstance(n, {(i, j): rng.randrange(2) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.7})
    assert solve(aemono_to_pds(inst)) == solve(aemono_to_subdivision_cflr(inst))


@pytest.mark.parametrize(
    "word, ops, want",
    [("()", (True, True, True), 0), ("(", (True, True, True), 1), ("(", (True, False, False), 1),
     ("(", (False, True, False), 1), (")(", (True, True, True), 2), ("(", (False, False, False), None)],
)
def test_led_examples(word, ops, want):
    inst = LedInstance(tuple(word), dyck_grammar(1), 1, 1, 1, *ops)
    assert solve(led_to_weighted_cflr(inst)) == want


def test_led_vertex_count():
    ri = led_to_weighted_cflr(LedInstance(tuple("(()"), dyck_grammar(1)))
    assert ri.graph.n == 4


@given(st.integers(0, 10**6))
def test_led_random_agreement(seed):
    got, want, ok = led_agreement(random_led_instance(random.Random(seed), 4))
    assert ok, (got, want)


@given(st.integers(0, 10**6))
def test_led_disabling_ops_never_helps(seed):
    rng = random.Random(seed)
    inst = random_led_instance(rng, 4)
    full = LedInstance(inst.word, inst.grammar, inst.w_ins, inst.w_del, inst.w_repl, True, True, True)
    a, b = solve(led_to_weighted_cflr(full)), solve(led_to_weighted_cflr(inst))
    if b is not None:
        assert a is not None and a <= b


def test_subdiv_single_line_edge():
    g = make_grammar([("S", ("a", "b"))], "S")
    sd = subdivide(2, [(0, ("a", "b"), 1)])
    before, after, res = subdiv_agreement(sd, g)
    assert before == after == {(0, 1)} and res.k == 2


def test_subdiv_k1_is_isomorphic():
    g = to_cnf(dyck_grammar(1))
    base = LabeledGraph(3, ((0, "(", 1), (1, ")", 2), (2, ")", 0)))
    sd = SubdivisionGraph.from_graph(base, range(3))
    before, after, res = subdiv_agreement(sd, g)
    assert before == after
    assert sorted((u, v) for u, _, v in res.graph.edges) == sorted((u, v) for u, _, v in base.edges)


def test_subdiv_rejects_large_k():
    sd = subdivide(2, [(0, tuple("abaab"), 1)])
    with pytest.raises(ReductionError, match="exceeds the cap"):
        subdivision_preprocess(sd, make_grammar([("S", ("a",))], "S", terminals={"a", "b"}))


def test_write_instance(tmp_path, k3):
    files = write_instance(triangle_to_dyck1(k3), tmp_path)
    assert sorted(f.name for f in files) == ["grammar.cfg", "graph.g", "provenance.json"]
    doc = json.loads((tmp_path / "provenance.json").read_text())
    assert doc["query"] == {"st": [0, 14]} and doc["kind"] == "triangle-dyck1"
