"""Counterexample search and the white-box oracles used to check the learner.

:func:`language_match` only talks to the membership oracle. The other two
functions look inside the ground-truth automaton and exist for testing and
for the explicit white-box learning mode.
"""

from __future__ import annotations

from collections import deque
from typing import Callable

from .automaton import hypothesis_membership
from .core import (
    DEFAULT_BUDGET,
    EnumerationBudgetError,
    HypothesisAutomaton,
    RestrictionAutomaton,
    Word,
    all_words_up_to,
    count_words,
)


def language_match(
    h: HypothesisAutomaton,
    query: Callable[[Word], bool],
    n_symbols: int,
    max_length: int,
    budget: int | None = DEFAULT_BUDGET,
    exhaustive: bool = False,
) -> Word | None:
    """First word of length ``1..max_length`` on which ``h`` and the oracle disagree.

    Words are compared in length-lexicographic order. By default the search
    skips the extensions of words that both sides reject: both languages are
    prefix-closed, so such extensions are rejected by both as well and the
    result is the same as walking every word. ``exhaustive=True`` walks every
    word anyway. The budget applies to the full word count either way.
    """
    total = count_words(n_symbols, max_length, min_length=1)
    if budget is not None and total > budget:
        raise EnumerationBudgetError(
            f"{total} candidate words exceed the enumeration budget {budget}"
        )
    if exhaustive:
        for w in all_words_up_to(n_symbols, max_length, budget=None, min_length=1):
            if bool(query(w)) != hypothesis_membership(h, w):
                return w
        return None

    frontier = [((), h.initial)]
    for _ in range(max_length):
        nxt = []
        for w, node in frontier:
            for p in range(1, n_symbols + 1):
                u = w + (p,)
                target = h.step(node, p)
                accepted = bool(query(u))
                if accepted != (target is not None):
                    return u
                if accepted:
                    nxt.append((u, target))
        if not nxt:
            break
        frontier = nxt
    return None


def product_diff_search(h: HypothesisAutomaton, g: RestrictionAutomaton, max_length: int) -> Word | None:
    """Length-lex least word of length <= ``max_length`` in exactly one language.

    Breadth-first over pairs (hypothesis node or None, set of truth nodes).
    Expanding symbols in ascending order makes the first mismatch found the
    length-lexicographic minimum.
    """
    succ = g.successors()
    labels = sorted(h.labels() | g.labels())
    start = (h.initial, frozenset([g.initial]))
    seen = {start}
    todo = deque([(start, ())])
    while todo:
        (node, states), w = todo.popleft()
        if len(w) >= max_length:
            continue
        for p in labels:
            target = h.step(node, p)
            nxt = frozenset(d for v in states for d in succ[v].get(p, ()))
            u = w + (p,)
            if (target is not None) != bool(nxt):
                return u
            if target is None:
                continue
            pair = (target, nxt)
            if pair not in seen:
                seen.add(pair)
                todo.append((pair, u))
    return None


def minimal_dfa_of(g: RestrictionAutomaton) -> HypothesisAutomaton:
    """Minimal deterministic automaton for the path language of ``g``.

    Subset construction from the initial node with the empty set dropped,
    then Moore partition refinement. A missing transition plays the role
    of the rejecting sink. Nodes are numbered 0, 1, ... in breadth-first
    order from the initial node.
    """
    succ = g.successors()
    labels = sorted(g.labels())
    start = frozenset([g.initial])
    delta: dict = {}
    order = [start]
    seen = {start}
    todo = deque([start])
    while todo:
        s = todo.popleft()
        for p in labels:
            t = frozenset(d for v in s for d in succ[v].get(p, ()))
            if not t:
                continue
            delta[s, p] = t
            if t not in seen:
                seen.add(t)
                order.append(t)
                todo.append(t)

    block = {s: 0 for s in order}
    n_blocks = 1
    while True:
        signatures: dict = {}
        new_block = {}
        for s in order:
            sig = (block[s],) + tuple(
                block[delta[s, p]] if (s, p) in delta else None for p in labels
            )
            new_block[s] = signatures.setdefault(sig, len(signatures))
        block = new_block
        if len(signatures) == n_blocks:
            break
        n_blocks = len(signatures)

    # renumber blocks breadth-first from the initial block
    rename: dict = {}
    trans: dict = {}
    todo = deque([start])
    rename[block[start]] = 0
    while todo:
        s = todo.popleft()
        for p in labels:
            t = delta.get((s, p))
            if t is None:
                continue
            if block[t] not in rename:
                rename[block[t]] = len(rename)
                todo.append(t)
            trans[rename[block[s]], p] = rename[block[t]]
    edges = tuple((src, dst, p) for (src, p), dst in trans.items())
    return HypothesisAutomaton(tuple(range(len(rename))), 0, edges)
