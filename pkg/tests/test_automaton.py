import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swlearn.automaton import (
    TableNotReadyError,
    check_strong_connectivity,
    dfa_construct,
    hypothesis_from_dot,
    hypothesis_membership,
    is_isomorphic,
    parse_dot,
    restriction_from_dot,
    to_dot,
)
from swlearn.core import HypothesisAutomaton, parse_word
from swlearn.lstar import learn_automaton
from swlearn.oracle import GrayBoxOracle
from swlearn.table import ObservationTable

from .conftest import automaton_only, restriction_automata
from .golden import EXAMPLE_EDGES
from .test_table import example_table


def numbered(h):
    idx = {v: i for i, v in enumerate(h.nodes)}
    return sorted((idx[s], idx[t], p) for s, t, p in h.edges)


@pytest.fixture
def final(oracle):
    return dfa_construct(example_table(oracle, 4))


def test_construct_single_node(oracle):
    h = dfa_construct(example_table(oracle, 2))
    assert len(h.nodes) == 1
    assert numbered(h) == [(0, 0, 1)]


def test_construct_example(final):
    assert len(final.nodes) == 2
    assert final.initial == final.nodes[0] == (1, 0)
    assert numbered(final) == sorted(EXAMPLE_EDGES)


def test_construct_without_edges():
    table = ObservationTable(2, lambda w: w == ())
    table.fix_closedness()
    assert table.is_closed() and table.is_consistent()
    h = dfa_construct(table)
    assert len(h.nodes) == 1 and h.edges == ()


def test_construct_rejects_unready_tables(oracle):
    with pytest.raises(TableNotReadyError, match="closed"):
        dfa_construct(example_table(oracle, 1))
    with pytest.raises(TableNotReadyError, match="consistent"):
        dfa_construct(example_table(oracle, 3))


def test_hypothesis_membership(final):
    assert hypothesis_membership(final, parse_word("121"))
    assert not hypothesis_membership(final, parse_word("23"))
    assert hypothesis_membership(final, ())
    assert hypothesis_membership(HypothesisAutomaton(("a",), "a", ()), ())
    assert not hypothesis_membership(final, (1,) * 5, max_length=4)


def test_strong_connectivity(final):
    assert check_strong_connectivity(final)
    assert check_strong_connectivity(HypothesisAutomaton(("a",), "a", (("a", "a", 1),)))
    assert not check_strong_connectivity(HypothesisAutomaton(("a", "b"), "a", (("a", "b", 1),)))


@settings(max_examples=60, deadline=None)
@given(restriction_automata())
def test_every_hypothesis_deterministic_and_well_defined(case):
    g, n = case
    oracle = GrayBoxOracle(automaton_only(g, n))
    h, trace = learn_automaton(oracle, n, 10)
    for hyp in trace.hypotheses:
        assert hyp.is_deterministic()
    # rebuild the final edges from every representative, not just the first
    table = ObservationTable(n, oracle.membership)
    for cex in trace.counterexamples:
        table.add_counterexample(cex)
    while not (table.is_closed() and table.is_consistent()):
        table.fix_closedness()
        table.fix_consistency()
    edges = set()
    for q in table.Q:
        if any(table.row(q)):
            for p in table.alphabet:
                if any(table.row(q + (p,))):
                    edges.add((table.row(q), table.row(q + (p,)), p))
    assert edges == set(dfa_construct(table).edges)


@settings(max_examples=60, deadline=None)
@given(restriction_automata())
def test_final_hypothesis_agrees_with_table(case):
    g, n = case
    oracle = GrayBoxOracle(automaton_only(g, n))
    h, trace = learn_automaton(oracle, n, 10)
    snap = trace.tables[-1]
    for u in snap.rows:
        for r in snap.R:
            if len(u + r) <= 10:
                assert hypothesis_membership(h, u + r) == oracle.membership(u + r)


def test_dot_format(final):
    text = to_dot(final)
    assert '__start [shape=point];' in text
    assert '__start -> "v\'0";' in text
    assert text.count("[label=") == 4
    assert '"v\'1" -> "v\'0" [label="3"];' in text


def test_dot_round_trip(final, example):
    back = hypothesis_from_dot(to_dot(final))
    assert is_isomorphic(final, back)
    g = restriction_from_dot(to_dot(example.automaton))
    assert g.initial == "v0" and sorted(g.edges) == sorted(example.automaton.edges)
    with pytest.raises(ValueError):
        parse_dot("digraph x {}")


@settings(max_examples=40, deadline=None)
@given(restriction_automata())
def test_dot_round_trip_random(case):
    g, n = case
    h, _ = learn_automaton(GrayBoxOracle(automaton_only(g, n)), n, 10)
    assert is_isomorphic(h, hypothesis_from_dot(to_dot(h)))


def test_isomorphism_negative():
    a = HypothesisAutomaton((0, 1), 0, ((0, 1, 1), (1, 0, 2)))
    b = HypothesisAutomaton(("x", "y"), "x", (("x", "y", 2), ("y", "x", 1)))
    c = HypothesisAutomaton(("x", "y"), "y", (("y", "x", 1), ("x", "y", 2)))
    assert not is_isomorphic(a, b)
    assert is_isomorphic(a, c)
