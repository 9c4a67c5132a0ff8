"""Recover polynomial subsystem coefficients from one-step evaluations.

Each subsystem is probed at the constant states ``(k, ..., k)`` for
``k = 0..m``. The value at zero gives the constant terms directly; the
remaining coefficients of every component solve an ``m x m`` Vandermonde
system with nodes ``1..m``.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import PolynomialVectorField

log = logging.getLogger(__name__)

TOL_SOLVE = 1e-9
TOL_RECOVER = 1e-6
COND_WARN = 1e12


class IllConditionedWarning(RuntimeWarning):
    pass


class SolverError(RuntimeError):
    pass


def vandermonde_matrix(nodes) -> np.ndarray:
    """``A[r, j] = nodes[r] ** (j + 1)``: no constant column."""
    nodes = np.asarray(nodes, dtype=float)
    return nodes[:, None] ** np.arange(1, len(nodes) + 1)[None, :]


@dataclass(frozen=True, eq=False)
class VandermondeSystem:
    rhs: np.ndarray
    nodes: np.ndarray = field(default=None)

    def __post_init__(self):
        rhs = np.atleast_1d(np.asarray(self.rhs, dtype=float))
        if rhs.ndim != 1 or rhs.size < 1:
            raise ValueError("rhs must be a non-empty vector")
        nodes = self.nodes
        if nodes is None:
            nodes = np.arange(1, rhs.size + 1, dtype=float)
        nodes = np.asarray(nodes, dtype=float)
        if nodes.shape != rhs.shape:
            raise ValueError("need exactly one node per equation")
        if len(set(nodes.tolist())) != nodes.size:
            raise ValueError("nodes must be distinct")
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "nodes", nodes)

    @property
    def order(self) -> int:
        return self.rhs.size

    @property
    def matrix(self) -> np.ndarray:
        return vandermonde_matrix(self.nodes)


def solve_vandermonde(system: VandermondeSystem, cond_warn: float = COND_WARN) -> np.ndarray:
    if not np.all(np.isfinite(system.rhs)):
        raise SolverError("right-hand side must be finite")
    A = system.matrix
    cond = np.linalg.cond(A, 1)
    if not np.isfinite(cond) or cond > cond_warn:
        warnings.warn(
            f"Vandermonde system of order {system.order} has 1-norm condition number {cond:.3g}",
            IllConditionedWarning,
            stacklevel=2,
        )
    try:
        x = np.linalg.solve(A, system.rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverError(str(exc)) from exc
    resid = np.max(np.abs(A @ x - system.rhs))
    if resid > TOL_SOLVE * max(1.0, np.max(np.abs(system.rhs))):
        log.warning("Vandermonde residual %.3g above tolerance", resid)
    return x


def sample_nodes(order: int, symmetric: bool = False) -> np.ndarray:
    """Probe points ``0, 1, ..., m``; ``symmetric`` spreads them around zero instead."""
    if not symmetric:
        return np.arange(order + 1, dtype=float)
    half = np.arange(1, order + 1) // 2 + 1
    signs = np.where(np.arange(order) % 2 == 0, 1.0, -1.0)
    return np.concatenate([[0.0], signs * half])


def learn_subsystem(oracle, p: int, dim: int, order: int, symmetric: bool = False) -> PolynomialVectorField:
    """Issue ``order + 1`` evaluation queries and rebuild subsystem ``p``."""
    nodes = sample_nodes(order, symmetric)
    images = np.array([oracle.eval_subsystem(p, np.full(dim, k)) for k in nodes])
    coeffs = np.zeros((dim, order + 1))
    coeffs[:, 0] = images[0]
    for i in range(dim):
        if order == 0:
            break
        rhs = images[1:, i] - coeffs[i, 0]
        coeffs[i, 1:] = solve_vandermonde(VandermondeSystem(rhs, nodes[1:]))
    return PolynomialVectorField(p, coeffs)


def learn_all_subsystems(oracle, n_subsystems: int, dim: int, order: int, symmetric: bool = False):
    return [learn_subsystem(oracle, p, dim, order, symmetric) for p in range(1, n_subsystems + 1)]
