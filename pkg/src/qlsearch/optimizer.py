"""Derivative-free maximization of the ansatz energy (Nelder-Mead)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import ParameterError

SIMPLEX_STEP = 0.25


@dataclass(frozen=True)
class OptimizerConfig:
    """``max_evals=None`` means ``250 * (dim + 1)`` for the problem at hand."""

    max_evals: int | None = None
    f_tol: float = 1e-3
    x_tol: float = 1e-2

    def __post_init__(self):
        if self.max_evals is not None and self.max_evals < 1:
            raise ParameterError("max_evals must be >= 1")
        if self.f_tol <= 0 or self.x_tol <= 0:
            raise ParameterError("tolerances must be positive")

    def budget(self, dim: int) -> int:
        return self.max_evals if self.max_evals is not None else 250 * (dim + 1)


@dataclass(frozen=True)
class OptimizeResult:
    x: np.ndarray
    f: float
    evals: int
    incumbents: tuple[float, ...]


def maximize(
    objective: Callable[[np.ndarray], float],
    x0: Sequence[float],
    cfg: OptimizerConfig = OptimizerConfig(),
) -> OptimizeResult:
    """Maximize ``objective`` from ``x0``.

    The initial simplex is ``x0`` plus a 0.25 step along each coordinate. Stops
    once both the simplex value spread and vertex spread fall under the
    tolerances, or when the evaluation budget runs out. The returned point is
    the best point ever evaluated, so ``f >= objective(x0)`` always holds.
    """
    x0 = np.asarray(x0, dtype=float)
    dim = x0.size
    budget = cfg.budget(dim)
    best_x, best_f = x0.copy(), -np.inf
    incumbents: list[float] = []
    evals = 0

    def negated(x):
        nonlocal best_x, best_f, evals
        evals += 1
        f = float(objective(x))
        if f > best_f:
            best_x, best_f = np.array(x, dtype=float), f
        incumbents.append(best_f)
        return -f

    if budget == 1 or dim == 0:
        negated(x0)
    else:
        simplex = np.vstack([x0, x0 + SIMPLEX_STEP * np.eye(dim)])
        minimize(
            negated,
            x0,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "maxfev": budget,
                "fatol": cfg.f_tol,
                "xatol": cfg.x_tol,
                "adaptive": False,
            },
        )
    return OptimizeResult(best_x, best_f, evals, tuple(incumbents))
