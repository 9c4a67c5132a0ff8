"""Modified L* loop and the combined switched-system learner."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

from .automaton import dfa_construct
from .core import DEFAULT_BUDGET, HypothesisAutomaton, RestrictionAutomaton, Word, format_word
from .equivalence import language_match, product_diff_search
from .polylearn import learn_all_subsystems
from .table import MembershipCache, ObservationTable, TableSnapshot

log = logging.getLogger(__name__)

MAX_ITER = 10_000


class LearningError(RuntimeError):
    pass


@dataclass(frozen=True)
class TraceEvent:
    kind: str
    data: dict


@dataclass
class LearnerTrace:
    events: list = field(default_factory=list)

    def add(self, kind: str, **data) -> None:
        self.events.append(TraceEvent(kind, data))

    def of_kind(self, kind: str) -> list:
        return [e for e in self.events if e.kind == kind]

    @property
    def tables(self) -> list:
        return [e.data["table"] for e in self.of_kind("table")]

    @property
    def hypotheses(self) -> list:
        return [e.data["automaton"] for e in self.of_kind("hypothesis")]

    @property
    def counterexamples(self) -> list:
        return [e.data["word"] for e in self.of_kind("counterexample")]

    def lines(self) -> list:
        return [_format_event(e) for e in self.events]

    def dump(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _bits(row) -> str:
    return "".join(str(b) for b in row)


def _format_event(e: TraceEvent) -> str:
    d = e.data
    if e.kind == "table":
        snap: TableSnapshot = d["table"]
        fields = [
            "Q=" + ",".join(format_word(w) for w in snap.Q),
            "R=" + ",".join(format_word(w) for w in snap.R),
            "rows=" + ",".join(
                f"{format_word(w)}:{_bits(snap.rows[w])}" for w in snap.upper + snap.lower
            ),
        ]
    elif e.kind == "hypothesis":
        h: HypothesisAutomaton = d["automaton"]
        idx = {v: i for i, v in enumerate(h.nodes)}
        fields = [
            f"nodes={len(h.nodes)}",
            f"initial=v'{idx[h.initial]}",
            "edges=" + ",".join(f"v'{idx[s]}-{p}->v'{idx[t]}" for s, t, p in h.edges),
        ]
    elif e.kind in ("counterexample", "seed"):
        fields = [format_word(d["word"])] + ([f"member={int(d['member'])}"] if "member" in d else [])
    elif e.kind == "not_closed":
        fields = [f"prefix={format_word(d['prefix'])}", f"symbol={d['symbol']}"]
    elif e.kind == "not_consistent":
        fields = [
            f"first={format_word(d['first'])}",
            f"second={format_word(d['second'])}",
            f"symbol={d['symbol']}",
            f"suffix={format_word(d['suffix'])}",
        ]
    else:
        fields = [f"{k}={v}" for k, v in d.items()]
    return "\t".join([e.kind] + fields)


def learn_automaton(
    oracle,
    n_symbols: int,
    max_length: int,
    *,
    mode: str = "strict",
    truth: RestrictionAutomaton | None = None,
    budget: int | None = DEFAULT_BUDGET,
    max_iter: int = MAX_ITER,
):
    """Learn the minimal automaton of the restriction language.

    ``mode="strict"`` searches counterexamples with membership queries only.
    ``mode="whitebox"`` compares against ``truth`` directly instead, which
    is the only option when the word count up to ``max_length`` is too big.

    Returns ``(hypothesis, trace)``.
    """
    if n_symbols < 1 or max_length < 1:
        raise ValueError("need N >= 1 and M >= 1")
    if mode not in ("strict", "whitebox"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "whitebox" and truth is None:
        raise ValueError("white-box mode needs the ground-truth automaton")

    membership = _membership_of(oracle)
    query = MembershipCache(membership)
    trace = LearnerTrace()

    if mode == "strict":
        def find_counterexample(h):
            return language_match(h, query, n_symbols, max_length, budget=budget)
    else:
        def find_counterexample(h):
            return product_diff_search(h, truth, max_length)

    for w in [()] + [(p,) for p in range(1, n_symbols + 1)]:
        trace.add("seed", word=w, member=query(w))
    table = ObservationTable(n_symbols, query)
    trace.add("table", table=table.snapshot())

    steps = 0
    while True:
        while not (table.is_closed() and table.is_consistent()):
            steps += 1
            if steps > max_iter:
                raise LearningError(f"no closed and consistent table after {max_iter} steps")
            if not table.is_closed():
                w = table.fix_closedness()
                trace.add("not_closed", prefix=w.prefix, symbol=w.symbol)
                trace.add("table", table=table.snapshot())
            if not table.is_consistent():
                w = table.fix_consistency()
                trace.add("not_consistent", first=w.first, second=w.second, symbol=w.symbol, suffix=w.suffix)
                trace.add("table", table=table.snapshot())

        h = dfa_construct(table)
        trace.add("hypothesis", automaton=h)
        cex = find_counterexample(h)
        if cex is None:
            trace.add("done", iterations=len(trace.hypotheses), unique_queries=len(query))
            return h, trace
        steps += 1
        if steps > max_iter:
            raise LearningError(f"learner did not converge within {max_iter} steps")
        log.debug("counterexample %s", format_word(cex))
        trace.add("counterexample", word=cex)
        table.add_counterexample(cex)
        trace.add("table", table=table.snapshot())


def _membership_of(oracle) -> Callable[[Word], bool]:
    return oracle.membership if hasattr(oracle, "membership") else oracle


def learn_switched_system(oracle, n_subsystems: int, dim: int, order: int, max_length: int, **kwargs):
    """Subsystem dynamics first, then the switching restriction.

    Returns ``(fields, hypothesis)``; call the two halves separately when
    the learner trace is needed.
    """
    fields = learn_all_subsystems(oracle, n_subsystems, dim, order)
    h, _ = learn_automaton(oracle, n_subsystems, max_length, **kwargs)
    return fields, h
