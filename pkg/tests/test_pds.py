import random

import pytest
from hypothesis import given, strategies as st

from cflreach.pds import (
    Configuration,
    Pds,
    PdsError,
    config_bound,
    format_pds,
    parse_pds,
    pds_all_pairs,
    pds_reach,
    search,
    split_transitions,
    successors,
)
from cflreach.reductions import triangle_to_pds


def test_split_pop_two():
    p = Pds(2, {0, 1}, set("01"), ((0, "10", "", 1),), 2)
    q = split_transitions(p)
    assert len(q.transitions) == 2 and q.n_states - p.n_states == 1 and q.is_normalized()


def test_split_is_idempotent_on_normalized():
    p = Pds(3, {0, 2}, set("01"), ((0, "", "1", 1), (1, "1", "", 2)), 1)
    assert split_transitions(p).transitions == p.transitions


def test_split_silent_between_ordinary():
    p = Pds(2, {0, 1}, set("01"), ((0, "", "", 1),), 0)
    q = split_transitions(p)
    assert q.n_states == 3 and len(q.transitions) == 2


def test_auxiliary_states_have_one_outgoing_transition():
    p = Pds(2, {0, 1}, set("01"), ((0, "01", "110", 1), (1, "", "", 0)), 4)
    q = split_transitions(p)
    outs = {}
    for t in q.transitions:
        outs[t[0]] = outs.get(t[0], 0) + 1
    assert all(outs.get(s) == 1 for s in q.auxiliary)


def test_trivial_reach():
    p = split_transitions(Pds(2, {0, 1}, set("01"), ((0, "", "", 1),), 0))
    assert pds_reach(p, 0, 1)


def test_push_without_pop_is_unreachable():
    p = Pds(2, {0, 1}, set("01"), ((0, "", "1", 1),), 1)
    assert not pds_reach(p, 0, 1)


def test_k3_gadget_reachable(k3):
    ri = triangle_to_pds(k3)
    assert pds_reach(ri.pds, *ri.query["st"])


def test_edge_relation_cases():
    p = Pds(2, {0, 1}, set("01"), ((0, "", "1", 1), (1, "1", "", 0)), 3)
    # push: (q, w) -> (q', a w)
    assert list(successors(p, Configuration(0, "0"))) == [Configuration(1, "10")]
    # pop: (q, a w) -> (q', w), only with a on top
    assert list(successors(p, Configuration(1, "10"))) == [Configuration(0, "0")]
    assert list(successors(p, Configuration(1, "01"))) == []


def test_errors():
    p = Pds(2, {0, 1}, set("01"), ((0, "", "1", 1),))
    with pytest.raises(PdsError):
        search(p, 0)
    with pytest.raises(PdsError):
        pds_reach(Pds(1, {0}, set("01"), (), 1), 0, 4)
    with pytest.raises(PdsError):
        Pds(1, {0}, set("01"), ((0, "2", "", 0),))


def test_parse_round_trip():
    text = "states 3\nordinary: 0 2\nbound 2\n0 - 01 1\n1 10 - 2\n"
    p = parse_pds(text)
    assert format_pds(p) == text
    with pytest.raises(PdsError):
        parse_pds("0 - 1 1\n")


def random_pds(rng):
    n = rng.randint(2, 5)
    word = lambda: "".join(rng.choice("01") for _ in range(rng.randint(0, 2)))
    trans = [(rng.randrange(n), word(), word(), rng.randrange(n)) for _ in range(rng.randint(1, 8))]
    return Pds(n, range(n), set("01"), tuple(trans), rng.randint(1, 4))


@given(st.integers(0, 10**6))
def test_splitting_preserves_reachability(seed):
    p = random_pds(random.Random(seed))
    q = split_transitions(p)
    states = sorted(p.ordinary)
    assert pds_all_pairs(p, states, states) == pds_all_pairs(q, states, states)


@given(st.integers(0, 10**6))
def test_visited_within_configuration_bound(seed):
    p = random_pds(random.Random(seed))
    for s in range(p.n_states):
        res = search(p, s)
        assert res.visited <= config_bound(p)
        assert res.max_depth <= p.depth_bound
