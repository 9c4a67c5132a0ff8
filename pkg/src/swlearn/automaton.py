"""Build hypothesis automata from observation tables; DOT in and out."""

from __future__ import annotations

import re
from collections import deque
from typing import Sequence

from .core import HypothesisAutomaton, RestrictionAutomaton, strongly_connected
from .table import ObservationTable


class TableNotReadyError(ValueError):
    pass


def dfa_construct(table: ObservationTable) -> HypothesisAutomaton:
    """Conjecture an automaton from a closed, consistent table.

    Nodes are the distinct non-zero rows of ``Q``, numbered in ``Q`` order of
    their first representative. Zero rows get no node, so a transition into
    one is simply missing.
    """
    if not table.is_closed():
        raise TableNotReadyError("observation table is not closed")
    if not table.is_consistent():
        raise TableNotReadyError("observation table is not consistent")
    initial = table.row(())
    if not any(initial):
        raise TableNotReadyError("row of the empty word is all zero")

    nodes: list = []
    reps: dict = {}
    for q in table.Q:
        r = table.row(q)
        if any(r) and r not in reps:
            reps[r] = q
            nodes.append(r)

    edges = []
    for r in nodes:
        q = reps[r]
        for p in table.alphabet:
            target = table.row(q + (p,))
            if any(target):
                edges.append((r, target, p))
    return HypothesisAutomaton(tuple(nodes), initial, tuple(edges))


def hypothesis_membership(h: HypothesisAutomaton, w: Sequence[int], max_length: int | None = None) -> bool:
    if max_length is not None and len(w) > max_length:
        return False
    return h.run(w) is not None


def check_strong_connectivity(h) -> bool:
    return strongly_connected(h.nodes, h.edges)


def is_isomorphic(a: HypothesisAutomaton, b: HypothesisAutomaton) -> bool:
    """Label-preserving bijection between the nodes of two deterministic automata."""
    if len(a.nodes) != len(b.nodes) or len(a.edges) != len(b.edges):
        return False
    if not (a.is_deterministic() and b.is_deterministic()):
        raise ValueError("isomorphism check needs deterministic automata")
    labels = sorted(a.labels() | b.labels())
    mapping = {a.initial: b.initial}
    todo = deque([a.initial])
    while todo:
        u = todo.popleft()
        for p in labels:
            ua, ub = a.step(u, p), b.step(mapping[u], p)
            if (ua is None) != (ub is None):
                return False
            if ua is None:
                continue
            if ua in mapping:
                if mapping[ua] != ub:
                    return False
            else:
                mapping[ua] = ub
                todo.append(ua)
    return len(mapping) == len(a.nodes) and len(set(mapping.values())) == len(mapping)


# -- DOT -------------------------------------------------------------------


def _quote(name) -> str:
    return '"{}"'.format(str(name).replace('"', r"\""))


def to_dot(automaton, name: str = "automaton") -> str:
    """Directed graph, one edge statement per labelled edge.

    Hypothesis nodes are rendered ``v'0, v'1, ...`` in node order; restriction
    automata keep their own node names. The initial node gets an arrow from
    a point-shaped pseudo-node.
    """
    if isinstance(automaton, HypothesisAutomaton):
        names = {v: f"v'{i}" for i, v in enumerate(automaton.nodes)}
    else:
        names = {v: str(v) for v in automaton.nodes}
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  __start [shape=point];"]
    for v in automaton.nodes:
        lines.append(f"  {_quote(names[v])} [shape=circle];")
    lines.append(f"  __start -> {_quote(names[automaton.initial])};")
    for src, dst, label in automaton.edges:
        lines.append(f'  {_quote(names[src])} -> {_quote(names[dst])} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)"\s*\[shape=circle\];\s*$')
_START = re.compile(r'^\s*__start\s*->\s*"((?:[^"\\]|\\.)*)"\s*;\s*$')
_EDGE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)"\s*->\s*"((?:[^"\\]|\\.)*)"\s*\[label="(\d+)"\];\s*$')


def parse_dot(text: str) -> tuple:
    """Read back what :func:`to_dot` writes: ``(nodes, initial, edges)``."""
    nodes, edges, initial = [], [], None
    for line in text.splitlines():
        if m := _NODE.match(line):
            nodes.append(m.group(1).replace(r"\"", '"'))
        elif m := _START.match(line):
            initial = m.group(1).replace(r"\"", '"')
        elif m := _EDGE.match(line):
            edges.append((m.group(1).replace(r"\"", '"'), m.group(2).replace(r"\"", '"'), int(m.group(3))))
    if initial is None:
        raise ValueError("DOT text has no initial-node arrow")
    return tuple(nodes), initial, tuple(edges)


def hypothesis_from_dot(text: str) -> HypothesisAutomaton:
    nodes, initial, edges = parse_dot(text)
    return HypothesisAutomaton(nodes, initial, edges)


def restriction_from_dot(text: str) -> RestrictionAutomaton:
    nodes, initial, edges = parse_dot(text)
    return RestrictionAutomaton(nodes, initial, edges)
