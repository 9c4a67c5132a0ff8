"""Shared domain types: words, polynomial vector fields and automata.

Subsystem indices are 1-based everywhere (``P = {1, ..., N}``). A word is a
plain tuple of ints; the empty tuple is the empty word.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Iterator, Sequence

import numpy as np

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()
LAMBDA = "λ"

DEFAULT_BUDGET = 20_000_000


class EnumerationBudgetError(RuntimeError):
    """Raised when an exhaustive word enumeration would exceed its budget."""


class ValidationError(ValueError):
    pass


# -- words -----------------------------------------------------------------


def word_concat(w1: Sequence[int], w2: Sequence[int]) -> Word:
    return tuple(w1) + tuple(w2)


def prefixes(w: Word) -> list[Word]:
    """All prefixes of ``w`` from the empty word up to ``w`` itself."""
    return [w[:j] for j in range(len(w) + 1)]


def suffixes(w: Word) -> list[Word]:
    """All suffixes of ``w`` from ``w`` itself down to the empty word."""
    return [w[j:] for j in range(len(w) + 1)]


def check_word(w: Sequence[int], n_symbols: int) -> Word:
    w = tuple(w)
    for s in w:
        if not isinstance(s, (int, np.integer)) or not 1 <= s <= n_symbols:
            raise ValidationError(f"symbol {s!r} outside 1..{n_symbols}")
    return tuple(int(s) for s in w)


def format_word(w: Sequence[int]) -> str:
    if not w:
        return LAMBDA
    if all(s < 10 for s in w):
        return "".join(str(s) for s in w)
    return ".".join(str(s) for s in w)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", LAMBDA, "lambda"):
        return EMPTY
    if "." in text:
        return tuple(int(s) for s in text.split("."))
    return tuple(int(c) for c in text)


def length_lex_key(w: Word) -> tuple:
    return (len(w), w)


def count_words(n_symbols: int, max_length: int, min_length: int = 0) -> int:
    return sum(n_symbols**n for n in range(min_length, max_length + 1))


def all_words_up_to(
    n_symbols: int,
    max_length: int,
    budget: int | None = DEFAULT_BUDGET,
    min_length: int = 0,
) -> Iterator[Word]:
    """Yield every word of length ``min_length..max_length``.

    Order is by length, then lexicographic within a length, so the empty
    word comes first and every prefix is yielded before its extensions.
    The budget is checked eagerly, before anything is yielded.
    """
    if n_symbols < 1:
        raise ValueError("alphabet must be non-empty")
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    total = count_words(n_symbols, max_length, min_length)
    if budget is not None and total > budget:
        raise EnumerationBudgetError(
            f"{total} words of length <= {max_length} over {n_symbols} "
            f"symbols exceed the enumeration budget {budget}"
        )
    return _enumerate(n_symbols, max_length, min_length)


def _enumerate(n_symbols: int, max_length: int, min_length: int) -> Iterator[Word]:
    alphabet = range(1, n_symbols + 1)
    for n in range(min_length, max_length + 1):
        yield from product(alphabet, repeat=n)


# -- graphs ----------------------------------------------------------------


def _reachable(start: Hashable, succ: dict) -> set:
    seen = {start}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        for u in succ.get(v, ()):
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def strongly_connected(nodes: Iterable[Hashable], edges: Iterable[tuple]) -> bool:
    """True iff every node reaches every other node along ``(src, dst, ...)`` edges."""
    nodes = list(nodes)
    if not nodes:
        return False
    fwd: dict = {}
    bwd: dict = {}
    for e in edges:
        fwd.setdefault(e[0], []).append(e[1])
        bwd.setdefault(e[1], []).append(e[0])
    root = nodes[0]
    everything = set(nodes)
    return _reachable(root, fwd) >= everything and _reachable(root, bwd) >= everything


# -- system model ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PolynomialVectorField:
    """Subsystem ``p``: component ``i`` maps ``x_i`` to ``sum_k coeffs[i, k] * x_i**k``."""

    p: int
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=float)
        if arr.ndim != 2 or arr.shape[1] < 1:
            raise ValidationError(
                f"subsystem {self.p}: coeffs must be a d x (m+1) array, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValidationError(f"subsystem {self.p}: coeffs must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    @property
    def order(self) -> int:
        return self.coeffs.shape[1] - 1

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValidationError(f"expected a state of length {self.dim}, got shape {x.shape}")
        # Horner, one polynomial per component
        out = self.coeffs[:, -1].copy()
        for k in range(self.order - 1, -1, -1):
            out = out * x + self.coeffs[:, k]
        return out


@dataclass(frozen=True)
class RestrictionAutomaton:
    """Strongly connected labelled multigraph with a unique initial node.

    ``edges`` is a tuple of ``(src, dst, label)``; parallel edges, self-loops
    and repeated labels out of a node are all allowed.
    """

    nodes: tuple
    initial: Hashable
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))

    def validate(self, n_symbols: int | None = None) -> "RestrictionAutomaton":
        if len(set(self.nodes)) != len(self.nodes):
            raise ValidationError("automaton.nodes contains duplicates")
        if self.initial not in self.nodes:
            raise ValidationError(f"automaton.initial {self.initial!r} is not a node")
        node_set = set(self.nodes)
        for src, dst, label in self.edges:
            if src not in node_set or dst not in node_set:
                raise ValidationError(f"automaton.edges: edge {src!r}->{dst!r} uses an unknown node")
            if n_symbols is not None and not 1 <= label <= n_symbols:
                raise ValidationError(f"automaton.edges: label {label!r} outside 1..{n_symbols}")
        if not self.edges:
            raise ValidationError("automaton.edges is empty")
        if not strongly_connected(self.nodes, self.edges):
            raise ValidationError("automaton is not strongly connected")
        return self

    def successors(self) -> dict:
        """``{node: {label: frozenset(dst, ...)}}``."""
        succ: dict = {v: {} for v in self.nodes}
        for src, dst, label in self.edges:
            succ[src].setdefault(label, set()).add(dst)
        return {v: {a: frozenset(d) for a, d in m.items()} for v, m in succ.items()}

    def labels(self) -> set:
        return {label for _, _, label in self.edges}


@dataclass(frozen=True)
class HypothesisAutomaton:
    """Deterministic, possibly incomplete automaton conjectured by the learner.

    Node order is meaningful: position ``i`` is rendered as ``v'i`` and the
    initial node is not necessarily first.
    """

    nodes: tuple
    initial: Hashable
    edges: tuple
    _delta: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        order = {v: i for i, v in enumerate(self.nodes)}
        edges = tuple(
            sorted(
                (tuple(e) for e in self.edges),
                key=lambda e: (order.get(e[0], -1), e[2], order.get(e[1], -1)),
            )
        )
        object.__setattr__(self, "edges", edges)
        delta: dict = {}
        for src, dst, label in edges:
            delta.setdefault((src, label), []).append(dst)
        object.__setattr__(self, "_delta", delta)

    def index(self, node) -> int:
        return self.nodes.index(node)

    def step(self, node, label):
        """Next node, or None when no edge carries ``label``."""
        targets = self._delta.get((node, label))
        if not targets:
            return None
        return targets[0]

    def run(self, w: Sequence[int]):
        node = self.initial
        for s in w:
            node = self.step(node, s)
            if node is None:
                return None
        return node

    def is_deterministic(self) -> bool:
        return all(len(t) == 1 for t in self._delta.values())

    def labels(self) -> set:
        return {label for _, _, label in self.edges}


@dataclass(frozen=True)
class SwitchedSystemSpec:
    n_subsystems: int
    dim: int
    order: int
    max_length: int
    fields: tuple
    automaton: RestrictionAutomaton

    def __post_init__(self):
        object.__setattr__(self, "fields", tuple(self.fields))

    def validate(self) -> "SwitchedSystemSpec":
        if self.n_subsystems < 1:
            raise ValidationError("N must be at least 1")
        if self.dim < 1:
            raise ValidationError("d must be at least 1")
        if self.order < 0:
            raise ValidationError("m must be non-negative")
        if self.max_length < 1:
            raise ValidationError("M must be at least 1")
        if [f.p for f in self.fields] != list(range(1, self.n_subsystems + 1)):
            raise ValidationError("subsystems must be listed once each as p = 1..N")
        for f in self.fields:
            if f.coeffs.shape != (self.dim, self.order + 1):
                raise ValidationError(
                    f"subsystems[{f.p - 1}].coeffs: expected shape "
                    f"{(self.dim, self.order + 1)}, got {f.coeffs.shape}"
                )
        self.automaton.validate(self.n_subsystems)
        return self
