"""Observation table (Q, R, T) for the modified L* learner."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

from .core import EMPTY, Word, format_word, length_lex_key, prefixes, suffixes


class ClosednessWitness(NamedTuple):
    prefix: Word
    symbol: int

    @property
    def word(self) -> Word:
        return self.prefix + (self.symbol,)


class ConsistencyWitness(NamedTuple):
    first: Word
    second: Word
    symbol: int
    suffix: Word

    @property
    def new_suffix(self) -> Word:
        return (self.symbol,) + self.suffix


@dataclass(frozen=True)
class TableSnapshot:
    """Immutable copy of a table's contents, used in traces and golden tests."""

    Q: tuple
    R: tuple
    rows: dict  # word -> tuple of bits, over Q and Q.P

    @property
    def upper(self) -> list:
        return sorted(self.Q, key=length_lex_key)

    @property
    def lower(self) -> list:
        q = set(self.Q)
        return sorted((w for w in self.rows if w not in q), key=length_lex_key)


class MembershipCache:
    """Memoizes a membership function so each distinct word is asked once."""

    def __init__(self, query: Callable[[Word], bool]):
        self._query = query
        self._answers: dict = {}

    def __call__(self, w: Word) -> bool:
        try:
            return self._answers[w]
        except KeyError:
            return self._answers.setdefault(w, bool(self._query(w)))

    def __contains__(self, w: Word) -> bool:
        return w in self._answers

    def __len__(self) -> int:
        return len(self._answers)


class ObservationTable:
    """Prefix-closed access words ``Q``, suffix-closed experiments ``R``.

    ``T`` is kept total on ``(Q + Q.P) . R`` after every public mutation.
    Both ``Q`` and ``R`` keep insertion order, which fixes row layout and the
    scan order used to pick witnesses.
    """

    def __init__(self, n_symbols: int, query: Callable[[Word], bool]):
        if n_symbols < 1:
            raise ValueError("alphabet must be non-empty")
        self.alphabet = tuple(range(1, n_symbols + 1))
        self.query = query if isinstance(query, MembershipCache) else MembershipCache(query)
        self.Q: list = [EMPTY]
        self.R: list = [EMPTY]
        self._Q_set = {EMPTY}
        self._R_set = {EMPTY}
        self.T: dict = {}
        self.fill()

    # -- contents ----------------------------------------------------------

    def extensions(self) -> list:
        """``Q.P`` minus ``Q``, in scan order."""
        out = []
        seen = set(self._Q_set)
        for q in self.Q:
            for p in self.alphabet:
                w = q + (p,)
                if w not in seen:
                    seen.add(w)
                    out.append(w)
        return out

    def row_words(self) -> list:
        return self.Q + self.extensions()

    def fill(self) -> int:
        """Ask for every missing entry of ``T``; returns how many were added."""
        added = 0
        for u in self.row_words():
            for r in self.R:
                w = u + r
                if w not in self.T:
                    self.T[w] = self.query(w)
                    added += 1
        return added

    def row(self, w: Word) -> tuple:
        if w not in self._Q_set and not (w and w[:-1] in self._Q_set and w[-1] in self.alphabet):
            raise KeyError(f"{format_word(w)} is not a row of the table")
        return tuple(int(self.T[w + r]) for r in self.R)

    def snapshot(self) -> TableSnapshot:
        return TableSnapshot(
            tuple(self.Q), tuple(self.R), {w: self.row(w) for w in self.row_words()}
        )

    # -- checks ------------------------------------------------------------

    def closedness_violations(self) -> Iterable[ClosednessWitness]:
        upper = {self.row(q) for q in self.Q}
        for q in self.Q:
            for p in self.alphabet:
                if self.row(q + (p,)) not in upper:
                    yield ClosednessWitness(q, p)

    def consistency_violations(self) -> Iterable[ConsistencyWitness]:
        rows = [(q, self.row(q)) for q in self.Q]
        for i, (q1, row1) in enumerate(rows):
            for q2, row2 in rows[i + 1:]:
                if row1 != row2:
                    continue
                for p in self.alphabet:
                    for r in self.R:
                        if self.T[q1 + (p,) + r] != self.T[q2 + (p,) + r]:
                            yield ConsistencyWitness(q1, q2, p, r)

    def closedness_witness(self) -> ClosednessWitness | None:
        return next(iter(self.closedness_violations()), None)

    def consistency_witness(self) -> ConsistencyWitness | None:
        return next(iter(self.consistency_violations()), None)

    def is_closed(self) -> bool:
        return self.closedness_witness() is None

    def is_consistent(self) -> bool:
        return self.consistency_witness() is None

    # -- repairs -----------------------------------------------------------

    def add_prefix(self, w: Word) -> None:
        """Add ``w`` and all its prefixes to ``Q`` and refill."""
        for u in prefixes(tuple(w)):
            if u not in self._Q_set:
                self._Q_set.add(u)
                self.Q.append(u)
        self.fill()

    def add_suffix(self, w: Word) -> None:
        """Add ``w`` and all its suffixes to ``R`` and refill."""
        for u in reversed(suffixes(tuple(w))):
            if u not in self._R_set:
                self._R_set.add(u)
                self.R.append(u)
        self.fill()

    def fix_closedness(self) -> ClosednessWitness | None:
        witness = self.closedness_witness()
        if witness is not None:
            self.add_prefix(witness.word)
        return witness

    def fix_consistency(self) -> ConsistencyWitness | None:
        witness = self.consistency_witness()
        if witness is not None:
            self.add_suffix(witness.new_suffix)
        return witness

    def add_counterexample(self, w: Word) -> None:
        if not w:
            raise ValueError("the empty word cannot be a counterexample")
        self.add_prefix(w)

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        return render_snapshot(self.snapshot())

    def __str__(self) -> str:
        return self.render()


def render_snapshot(snap: TableSnapshot) -> str:
    """Aligned text grid: header of experiments, then Q rows, then Q.P rows."""
    head = [""] + [format_word(r) for r in snap.R]
    body_upper = [[format_word(w)] + [str(b) for b in snap.rows[w]] for w in snap.upper]
    body_lower = [[format_word(w)] + [str(b) for b in snap.rows[w]] for w in snap.lower]
    widths = [
        max(len(line[j]) for line in [head] + body_upper + body_lower)
        for j in range(len(head))
    ]

    def fmt(line):
        return " | ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip()

    rule = "-+-".join("-" * width for width in widths)
    out = [fmt(head), rule]
    out += [fmt(line) for line in body_upper]
    out.append(rule)
    out += [fmt(line) for line in body_lower]
    return "\n".join(out)
