import itertools
import random

import pytest
from hypothesis import given, strategies as st

from cflreach.grammar import (
    EPS_PRIME,
    Grammar,
    GrammarError,
    dyck_grammar,
    format_grammar,
    is_cnf,
    lift_epsilon,
    make_grammar,
    parse_grammar,
    strip_eps_prime,
    to_cnf,
)
from cflreach.instances import random_cnf_grammar, random_general_grammar
from cflreach.oracles import derives, language_upto, member


def words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(sorted(alphabet), repeat=n)


def test_dyck1_cnf_matches_original_up_to_length_8(dyck1):
    cnf = to_cnf(dyck1)
    assert cnf.form == "cnf" and is_cnf(cnf)
    lang = language_upto(dyck1, 8)
    for w in words("()", 8):
        assert derives(cnf, w) == (w in lang), w


def test_cnf_input_is_returned_unchanged():
    g = random_cnf_grammar(random.Random(5))
    out = to_cnf(g)
    assert set(out.productions) == set(g.productions) and out.start == g.start


def test_single_terminal_rule_is_already_cnf():
    g = make_grammar([("S", ("a",))], "S")
    out = to_cnf(g)
    assert out.form == "cnf" and out.productions == g.productions


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_dyck_counts(k):
    g = dyck_grammar(k)
    assert len(g.nonterminals) == 1 and len(g.terminals) == 2 * k and len(g.productions) == k + 2


def test_dyck1_productions_exact(dyck1):
    assert set(dyck1.productions) == {("S", ()), ("S", ("S", "S")), ("S", ("(", "S", ")"))}
    assert dyck1.terminals == {"(", ")"}


def test_dyck_rejects_zero():
    with pytest.raises(GrammarError):
        dyck_grammar(0)


def test_dyck1_membership_of_pair(dyck1_cnf):
    assert derives(dyck1_cnf, "()")


def test_lift_examples(dyck1_cnf):
    lifted = lift_epsilon(dyck1_cnf)
    assert member(lifted, ("(", EPS_PRIME, ")"))
    assert not member(lifted, ("(", EPS_PRIME))
    assert len(lifted.productions) == len(dyck1_cnf.productions) + 2 * len(dyck1_cnf.nonterminals) + 1


def test_lift_rejects_non_cnf(dyck1):
    with pytest.raises(GrammarError):
        lift_epsilon(dyck1)


def test_lift_rejects_reserved_symbol():
    g = make_grammar([("S", (EPS_PRIME,))], "S", form="cnf")
    with pytest.raises(GrammarError):
        lift_epsilon(g)


def test_undeclared_symbol_rejected():
    with pytest.raises(GrammarError):
        Grammar(frozenset({"S"}), frozenset({"a"}), (("S", ("b",)),), "S")


def test_cnf_tag_is_checked():
    with pytest.raises(GrammarError):
        Grammar(frozenset({"S"}), frozenset({"a"}), (("S", ("a", "a")),), "S", "cnf")


def test_parse_and_format_round_trip():
    text = "S -> A B | eps  # comment\nA -> a\nB -> b | A B\n"
    g = parse_grammar(text)
    assert g.start == "S" and g.terminals == {"a", "b"}
    assert parse_grammar(format_grammar(g)) == g


@given(st.integers(0, 10**6))
def test_cnf_equivalence_random_general(seed):
    rng = random.Random(seed)
    g = random_general_grammar(rng, ("a", "b"), rng.randint(1, 4), rng.randint(2, 8), 3)
    assert g.size <= 20
    cnf = to_cnf(g)
    lang = language_upto(g, 6)
    for w in words("ab", 6):
        assert derives(cnf, w) == (w in lang), (format_grammar(g), w)


@given(st.integers(0, 10**6))
def test_lift_soundness(seed):
    rng = random.Random(seed)
    g = random_cnf_grammar(rng, ("a", "b"), rng.randint(2, 3), rng.randint(2, 4), 3)
    lifted = lift_epsilon(g)
    for w in words(("a", "b", EPS_PRIME), 5):
        assert member(lifted, w) == derives(g, strip_eps_prime(w)), w
