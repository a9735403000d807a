import itertools
import random

import pytest
from hypothesis import given, strategies as st

from cflreach.grammar import Grammar, GrammarError, dyck_grammar
from cflreach.instances import random_cnf_grammar
from cflreach.oracles import derives
from cflreach.recognizer import cyk_recognize


def test_dyck_examples(dyck1_cnf):
    assert cyk_recognize(dyck1_cnf, "()")[0]
    assert not cyk_recognize(dyck1_cnf, "(()")[0]
    assert cyk_recognize(dyck1_cnf, "")[0]


def test_rejects_non_cnf_and_unknown_terminal(dyck1_cnf):
    with pytest.raises(GrammarError):
        cyk_recognize(dyck_grammar(1), "()")
    with pytest.raises(GrammarError):
        cyk_recognize(dyck1_cnf, "(x")


@given(st.integers(0, 10**6))
def test_agrees_with_derivation_search(seed):
    rng = random.Random(seed)
    g = random_cnf_grammar(rng, ("a", "b"), rng.randint(2, 4), rng.randint(2, 6), 3)
    for w in itertools.product("ab", repeat=rng.randint(0, 5)):
        ok, table = cyk_recognize(g, w)
        assert ok == derives(g, w)
        assert table.ops <= len(w) ** 3 * len(g.productions)


@given(st.integers(0, 10**6))
def test_every_cell_is_exact(seed):
    rng = random.Random(seed)
    g = random_cnf_grammar(rng, ("a", "b"), 3, 5, 3, epsilon=False)
    w = tuple(rng.choice("ab") for _ in range(5))
    _, table = cyk_recognize(g, w)
    for (i, j), cell in table.cells.items():
        for a in g.nonterminals:
            sub = Grammar(g.nonterminals, g.terminals, g.productions, a, "cnf")
            assert (a in cell) == derives(sub, w[i:j]), (a, i, j)
