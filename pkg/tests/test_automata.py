import itertools
import random

from hypothesis import given, strategies as st

from cflreach.automata import Pda, cfg_to_pda, pda_to_cfg, tuple_pda
from cflreach.grammar import Grammar, make_grammar, to_cnf
from cflreach.instances import random_general_grammar
from cflreach.oracles import language_upto, pda_accepts


def all_words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(sorted(alphabet), repeat=n)


def test_dyck1_pda_matches_grammar(dyck1):
    a = cfg_to_pda(dyck1)
    assert pda_accepts(a, "()") and pda_accepts(a, "(())") and not pda_accepts(a, ")(")
    lang = language_upto(dyck1, 6)
    for w in all_words("()", 6):
        assert pda_accepts(a, w) == (w in lang)


def test_singleton_language():
    a = cfg_to_pda(make_grammar([("S", ("a",))], "S"))
    assert [w for w in all_words("a", 3) if pda_accepts(a, w)] == [("a",)]


def test_empty_language_pda_accepts_nothing():
    g = Grammar(frozenset({"S"}), frozenset({"a"}), (), "S")
    a = cfg_to_pda(g)
    assert not any(pda_accepts(a, w) for w in all_words("a", 6))


def test_round_trip_dyck1(dyck1):
    back = pda_to_cfg(cfg_to_pda(dyck1))
    assert language_upto(back, 6) == language_upto(dyck1, 6)


def test_no_final_states_gives_empty_grammar():
    a = Pda({0, 1}, {"a"}, {"X"}, ((0, "a", None, 1, ()),), 0, frozenset())
    assert language_upto(pda_to_cfg(a), 6) == frozenset()


def test_single_transition_pda():
    a = Pda({0, 1}, {"a"}, {"X"}, ((0, "a", None, 1, ()),), 0, {1})
    assert language_upto(pda_to_cfg(a), 3) == {("a",)}


@given(st.integers(0, 10**6))
def test_round_trip_random(seed):
    rng = random.Random(seed)
    terminals = ("a", "b", "c")[: rng.randint(1, 3)]
    g = random_general_grammar(rng, terminals, rng.randint(1, 3), rng.randint(2, 5), 2)
    back = pda_to_cfg(cfg_to_pda(g))
    assert language_upto(back, 5) == language_upto(g, 5)


def test_tuple_pda_reads_pairs(dyck1):
    a = cfg_to_pda(to_cnf(dyck1))
    tuples = {("(", ")"), ("(", "("), (")", ")")}
    t = tuple_pda(a, 2, tuples)
    assert pda_accepts(t, [("(", ")")])
    assert pda_accepts(t, [("(", "("), (")", ")")])
    assert not pda_accepts(t, [("(", "(")])
