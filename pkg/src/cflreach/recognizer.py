"""CYK recognition for CNF grammars."""
from __future__ import annotations

from dataclasses import dataclass

from .grammar import Grammar, GrammarError, is_cnf


@dataclass(frozen=True)
class CykTable:
    n: int
    cells: dict  # (i, j) -> frozenset of nonterminals deriving word[i:j]
    ops: int = 0  # binary-rule applications tried


class CnfIndex:
    """Dense nonterminal ids and rule tables shared by the bitset algorithms."""

    def __init__(self, g: Grammar):
        self.grammar = g
        self.nts = sorted(g.nonterminals, key=repr)
        self.id = {a: i for i, a in enumerate(self.nts)}
        self.binary = []          # (A, B, C) ids
        self.by_terminal: dict = {}  # terminal -> bitmask of A with A -> a
        self.epsilon = 0          # bitmask of A with A -> eps
        for lhs, rhs in g.productions:
            a = self.id[lhs]
            if len(rhs) == 2:
                self.binary.append((a, self.id[rhs[0]], self.id[rhs[1]]))
            elif len(rhs) == 1:
                self.by_terminal[rhs[0]] = self.by_terminal.get(rhs[0], 0) | (1 << a)
            else:
                self.epsilon |= 1 << a
        self.binary = sorted(set(self.binary))

    def names(self, mask: int) -> frozenset:
        return frozenset(self.nts[i] for i in range(len(self.nts)) if mask >> i & 1)


def cyk_recognize(g: Grammar, word) -> tuple[bool, CykTable]:
    """Return (S =>* word, table of T[i,j] sets)."""
    if not is_cnf(g):
        raise GrammarError("CYK needs a CNF grammar")
    word = tuple(word)
    for a in word:
        if a not in g.terminals:
            raise GrammarError(f"unknown terminal {a!r}")
    n = len(word)
    if n == 0:
        return g.has_epsilon_start(), CykTable(0, {}, 0)
    idx = CnfIndex(g)
    T: dict = {}
    for i, a in enumerate(word):
        T[i, i + 1] = idx.by_terminal.get(a, 0)
    ops = 0
    rules = idx.binary
    for length in range(2, n + 1):
        for i in range(0, n - length + 1):
            j = i + length
            cell = 0
            for m in range(i + 1, j):
                left, right = T[i, m], T[m, j]
                if not left or not right:
                    ops += len(rules)
                    continue
                for a, b, c in rules:
                    ops += 1
                    if left >> b & 1 and right >> c & 1:
                        cell |= 1 << a
            T[i, j] = cell
    start = idx.id[g.start]
    cells = {key: idx.names(mask) for key, mask in T.items()}
    return bool(T[0, n] >> start & 1), CykTable(n, cells, ops)
