import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swlearn.core import parse_word, prefixes, suffixes
from swlearn.oracle import GrayBoxOracle
from swlearn.table import ConsistencyWitness, MembershipCache, ObservationTable

from .conftest import automaton_only, restriction_automata, words
from .golden import EXAMPLE_TABLES, matches


def example_table(oracle, stage):
    """The example's table after ``stage`` of the three repairs."""
    table = ObservationTable(3, oracle.membership)
    steps = [
        table.fix_closedness,
        lambda: table.add_counterexample(parse_word("12")),
        table.fix_consistency,
    ]
    for step in steps[: stage - 1]:
        step()
    return table


@pytest.fixture
def t1(oracle):
    return example_table(oracle, 1)


@pytest.fixture
def t2(oracle):
    return example_table(oracle, 2)


@pytest.fixture
def t3(oracle):
    return example_table(oracle, 3)


@pytest.fixture
def t4(oracle):
    return example_table(oracle, 4)


def test_example_tables(oracle):
    table = ObservationTable(3, oracle.membership)
    assert matches(table.snapshot(), EXAMPLE_TABLES[0])
    table.fix_closedness()
    assert matches(table.snapshot(), EXAMPLE_TABLES[1])
    table.add_counterexample(parse_word("12"))
    assert matches(table.snapshot(), EXAMPLE_TABLES[2])
    table.fix_consistency()
    assert matches(table.snapshot(), EXAMPLE_TABLES[3])


def test_rows(t2, t4):
    assert t2.row(()) == (1,)
    assert t4.row((1,)) == (1, 1)
    assert t4.row((2,)) == (0, 0)
    with pytest.raises(KeyError):
        t4.row((3, 3))


def test_closedness(t1, t2, t3):
    assert not t1.is_closed()
    w = t1.closedness_witness()
    assert (w.prefix, w.symbol) == ((), 2)
    assert t1.row(w.word) == (0,)
    assert t2.is_closed()
    assert t3.is_closed()


def test_consistency(t1, t3, t4):
    assert t1.is_consistent()
    assert not t3.is_consistent()
    violations = list(t3.consistency_violations())
    # the hand-worked repair picks (1, 12, 2, λ); scan order reaches (λ, 1, 2, λ) first
    assert ConsistencyWitness((1,), (1, 2), 2, ()) in violations
    assert t3.consistency_witness() == ConsistencyWitness((), (1,), 2, ())
    assert t3.consistency_witness().new_suffix == (2,)
    assert t4.is_consistent() and t4.is_closed()


def test_fix_on_ready_table_is_noop(t4):
    before = t4.snapshot()
    assert t4.fix_closedness() is None
    assert t4.fix_consistency() is None
    assert t4.snapshot() == before


def test_counterexample_adds_all_prefixes(t2):
    t2.add_counterexample(parse_word("121"))
    assert set(words("1", "12", "121")) <= set(t2.Q)


def test_counterexample_idempotent(t3):
    before = t3.snapshot()
    t3.add_counterexample(parse_word("12"))
    assert t3.snapshot() == before
    with pytest.raises(ValueError):
        t3.add_counterexample(())


def test_cache_asks_each_word_once(oracle):
    table = example_table(oracle, 4)
    asked = oracle.stats.membership_queries
    assert asked == len(table.query) == len(table.T)
    table.fill()
    assert oracle.stats.membership_queries == asked


def test_render_layout(t4):
    lines = t4.render().splitlines()
    assert lines[0].split("|")[1].strip() == "λ" and lines[0].split("|")[2].strip() == "2"
    labels = [line.split("|")[0].strip() for line in lines if not set(line) <= set("-+ ")]
    assert labels[1:5] == ["λ", "1", "2", "12"]
    assert labels[5:] == ["3", "11", "13", "21", "22", "23", "121", "122", "123"]
    assert sum(1 for line in lines if set(line) <= set("-+")) == 2


def _check_invariants(table, oracle):
    Q, R = set(table.Q), set(table.R)
    assert () in Q and () in R
    assert all(u in Q for w in Q for u in prefixes(w))
    assert all(u in R for w in R for u in suffixes(w))
    for u in table.row_words():
        for r in table.R:
            assert table.T[u + r] == oracle.membership(u + r)
    assert any(table.row(()))


@settings(max_examples=40, deadline=None)
@given(restriction_automata(), st.lists(st.lists(st.integers(1, 3), min_size=1, max_size=6), max_size=3))
def test_invariants_under_operations(case, cexes):
    g, n = case
    oracle = GrayBoxOracle(automaton_only(g, n))
    table = ObservationTable(n, MembershipCache(oracle.membership))
    _check_invariants(table, oracle)
    distinct_rows = len({table.row(q) for q in table.Q})
    for cex in cexes:
        table.add_counterexample(tuple(min(s, n) for s in cex))
        _check_invariants(table, oracle)
        for _ in range(100):
            if table.fix_closedness() is None and table.fix_consistency() is None:
                break
            old_rows = distinct_rows
            distinct_rows = len({table.row(q) for q in table.Q})
            assert distinct_rows > old_rows or len(table.R) > 1
            _check_invariants(table, oracle)
        assert table.is_closed() and table.is_consistent()
        distinct_rows = len({table.row(q) for q in table.Q})


@settings(max_examples=40, deadline=None)
@given(restriction_automata())
def test_suffixes_never_merge_rows(case):
    g, n = case
    oracle = GrayBoxOracle(automaton_only(g, n))
    table = ObservationTable(n, oracle.membership)
    table.add_counterexample((1,) * 4)
    distinct = lambda: {(q1, q2) for q1 in table.Q for q2 in table.Q if table.row(q1) != table.row(q2)}
    before = distinct()
    table.add_suffix((1, 1))
    assert before <= distinct()
