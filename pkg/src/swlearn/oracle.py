"""Gray-box simulation model over a hidden switched system."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import SwitchedSystemSpec, ValidationError, Word, check_word


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleStats:
    eval_queries: int = 0
    membership_queries: int = 0


class GrayBoxOracle:
    """Answers one-step evaluation queries and word-membership queries.

    Membership follows the path semantics of the restriction automaton: a
    word is accepted iff some path from the initial node spells it. The
    answer is computed by advancing the set of reachable nodes, so the
    automaton may be nondeterministic.

    With ``enforce_bound=True`` words longer than ``max_length`` raise
    :class:`OracleError`; by default they are answered structurally, which
    is what observation-table fills need once ``|q.p.r|`` exceeds the bound.
    """

    def __init__(self, spec: SwitchedSystemSpec, enforce_bound: bool = False):
        self._spec = spec
        self._succ = spec.automaton.successors()
        self._lock = threading.Lock()
        self._evals = 0
        self._members = 0
        self.enforce_bound = enforce_bound

    @property
    def n_subsystems(self) -> int:
        return self._spec.n_subsystems

    @property
    def dim(self) -> int:
        return self._spec.dim

    @property
    def max_length(self) -> int:
        return self._spec.max_length

    @property
    def stats(self) -> OracleStats:
        with self._lock:
            return OracleStats(self._evals, self._members)

    def eval_subsystem(self, p: int, x: Sequence[float]) -> np.ndarray:
        if not 1 <= p <= self._spec.n_subsystems:
            raise OracleError(f"unknown subsystem index {p}")
        x = np.asarray(x, dtype=float)
        if x.shape != (self._spec.dim,):
            raise OracleError(f"state must have length {self._spec.dim}, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise OracleError("state must be finite")
        with self._lock:
            self._evals += 1
        return self._spec.fields[p - 1](x)

    def membership(self, w: Sequence[int]) -> bool:
        try:
            w = check_word(w, self._spec.n_subsystems)
        except ValidationError as exc:
            raise OracleError(str(exc)) from None
        if self.enforce_bound and len(w) > self._spec.max_length:
            raise OracleError(f"word of length {len(w)} exceeds M = {self._spec.max_length}")
        with self._lock:
            self._members += 1
        return self._accepts(w)

    def _accepts(self, w: Word) -> bool:
        states = frozenset([self._spec.automaton.initial])
        for s in w:
            nxt: set = set()
            for v in states:
                nxt.update(self._succ[v].get(s, ()))
            if not nxt:
                return False
            states = frozenset(nxt)
        return True
