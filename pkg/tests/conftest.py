import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from swlearn.core import RestrictionAutomaton, SwitchedSystemSpec, parse_word
from swlearn.oracle import GrayBoxOracle
from swlearn.specfile import example_spec, random_automaton


@pytest.fixture
def example():
    return example_spec()


@pytest.fixture
def oracle(example):
    return GrayBoxOracle(example)


def automaton_only(g: RestrictionAutomaton, n_symbols: int, max_length: int = 12) -> SwitchedSystemSpec:
    """Spec with a trivial dynamics part, for automaton-only experiments."""
    return SwitchedSystemSpec(n_symbols, 1, 0, max_length, [], g)


def words(*texts):
    return [parse_word(t) for t in texts]


# -- independent oracles ---------------------------------------------------


def exact_solve(matrix, rhs):
    """Gauss-Jordan over the rationals; floats convert exactly."""
    n = len(rhs)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def path_accepts(g: RestrictionAutomaton, w) -> bool:
    """Depth-first search over individual edges, no subset bookkeeping."""

    def walk(node, i):
        if i == len(w):
            return True
        return any(walk(dst, i + 1) for src, dst, label in g.edges if src == node and label == w[i])

    return walk(g.initial, 0)


# -- random automata -------------------------------------------------------


@st.composite
def restriction_automata(draw, max_nodes=5, max_symbols=3):
    n_symbols = draw(st.integers(1, max_symbols))
    n_nodes = draw(st.integers(1, max_nodes))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_automaton(random.Random(seed), n_nodes, n_symbols), n_symbols


def random_instances(count, seed, max_nodes=5, max_symbols=3):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n_symbols = rng.randint(1, max_symbols)
        n_nodes = rng.randint(1, max_nodes)
        out.append((random_automaton(rng, n_nodes, n_symbols), n_symbols))
    return out
