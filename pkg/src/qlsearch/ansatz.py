"""Depth-one neighborhood ansatz: which nodes get partial mixers, and its energy."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Sequence

import numpy as np

from .errors import CapacityError, ParameterError
from .graph import Neighborhood
from .simulator import (
    MAX_QUBITS,
    expectation_hamming,
    hamming_weights,
    init_state,
    mixer_pairs,
    rotate_pairs,
)

DEFAULT_CONTROL_BUDGET = MAX_QUBITS - 1


@dataclass(frozen=True)
class MixerPlan:
    """Partial mixers to apply, in application order.

    ``active[i]`` is a local target index and ``controls[i]`` its in-ball
    neighbors; a target is only active if it is interior, so that set is the
    target's full graph neighborhood.
    """

    eligible: tuple[int, ...]
    active: tuple[int, ...]
    controls: tuple[tuple[int, ...], ...]

    @property
    def num_params(self) -> int:
        return 1 + len(self.active)


@dataclass(frozen=True)
class AnsatzParams:
    gamma: float
    betas: tuple[float, ...]

    @classmethod
    def from_vector(cls, x: Sequence[float]) -> "AnsatzParams":
        return cls(float(x[0]), tuple(float(b) for b in x[1:]))

    def to_vector(self) -> np.ndarray:
        return np.array([self.gamma, *self.betas], dtype=float)


def eligible_mixer_nodes(
    nb: Neighborhood,
    clamped_ones: Collection[int] = (),
    control_budget: int = DEFAULT_CONTROL_BUDGET,
) -> list[int]:
    """Local indices that may carry a partial mixer, in BFS order from the root.

    A node qualifies when all its graph neighbors are inside the ball, it has
    at most ``control_budget`` neighbors, and it is not already clamped to 1.
    """
    clamped = set(clamped_ones)
    return [
        i
        for i in range(nb.m)
        if nb.interior_mask[i] and nb.degrees[i] <= control_budget and i not in clamped
    ]


def build_plan(
    nb: Neighborhood, eligible: Sequence[int], k: int, perm_rng: np.random.Generator
) -> MixerPlan:
    """Keep the first ``k`` eligible nodes, then shuffle their application order."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    prefix = list(eligible[:k])
    active = tuple(prefix[i] for i in perm_rng.permutation(len(prefix)))
    return MixerPlan(
        eligible=tuple(eligible),
        active=active,
        controls=tuple(nb.local_neighbors[t] for t in active),
    )


class AnsatzCircuit:
    """Compiled ``U_M(betas) U_C(gamma) |s>`` for one neighborhood and plan.

    Gate index pairs are computed once, so repeated evaluation inside the
    optimizer costs a handful of vectorized sweeps.
    """

    def __init__(self, m: int, plan: MixerPlan, clamped_ones: Collection[int] = ()):
        if m > MAX_QUBITS:
            raise CapacityError(f"neighborhood of {m} qubits exceeds the cap of {MAX_QUBITS}")
        self.m = m
        self.plan = plan
        self.clamped_ones = tuple(sorted(clamped_ones))
        self._initial = init_state(m, self.clamped_ones)
        self._hw = hamming_weights(m)
        self._pairs = [mixer_pairs(m, t, frozenset(c)) for t, c in zip(plan.active, plan.controls)]

    def state(self, params: AnsatzParams) -> np.ndarray:
        if len(params.betas) != len(self._pairs):
            raise ParameterError(
                f"plan has {len(self._pairs)} mixers but {len(params.betas)} betas were given"
            )
        psi = self._initial * np.exp(1j * params.gamma * self._hw)
        for (low, high), beta in zip(self._pairs, params.betas):
            rotate_pairs(psi, low, high, beta)
        return psi

    def energy(self, x: Sequence[float]) -> float:
        return expectation_hamming(self.state(AnsatzParams.from_vector(x)))


def evaluate(
    nb: Neighborhood,
    plan: MixerPlan,
    params: AnsatzParams,
    clamped_ones: Collection[int] = (),
) -> tuple[float, np.ndarray]:
    psi = AnsatzCircuit(nb.m, plan, clamped_ones).state(params)
    return expectation_hamming(psi), psi
