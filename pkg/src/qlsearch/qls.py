"""Quantum Local Search outer loop.

Each iteration takes a BFS ball around a root, optimizes the depth-one ansatz
on it for ``r`` randomly permuted mixer orders, keeps the heaviest bitstring
and merges it into the global independent set. The next root is drawn from
the ball's outer shell, avoiding earlier roots. The run stops once every node
has been inside some ball.

In the default ``clamped`` mode, qubits of nodes that are already selected
start in |1>. Partial mixers are conditioned on all neighbors being |0>, so a
clamped node blocks its neighbors and every merge stays independent without
any repair step. ``paper_literal`` mode starts every ball at |0...0> and
drops conflicting nodes greedily when merging.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .ansatz import (
    DEFAULT_CONTROL_BUDGET,
    AnsatzCircuit,
    AnsatzParams,
    build_plan,
    eligible_mixer_nodes,
)
from .baseline import bh_ratio, boppana_halldorsson
from .errors import InvariantError, ParameterError
from .graph import Graph, Neighborhood, ball, distances_from, is_independent_set
from .optimizer import OptimizerConfig, maximize
from .simulator import (
    MAX_QUBITS,
    bitstring,
    hamming_weights,
    parse_bitstring,
    probabilities,
    sample,
)

log = logging.getLogger(__name__)

RecombineMode = Literal["clamped", "paper_literal"]
SUPPORT_THRESHOLD = 1e-6


@dataclass(frozen=True)
class QlsConfig:
    n_s: int = 2
    k: int = 4
    r: int = 5
    shots: int = 1024
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    control_budget: int = DEFAULT_CONTROL_BUDGET
    recombine_mode: RecombineMode = "clamped"
    seed: int | None = None
    # debug switch: skip optimization and run every mixer at angle 0
    zero_angles: bool = False

    def __post_init__(self):
        if self.n_s < 1 or self.k < 1 or self.r < 1:
            raise ParameterError("n_s, k and r must all be >= 1")
        if self.shots < 0:
            raise ParameterError("shots must be >= 0 (0 selects exact mode)")
        if self.control_budget < 0:
            raise ParameterError("control_budget must be >= 0")
        if self.recombine_mode not in ("clamped", "paper_literal"):
            raise ParameterError(f"unknown recombine mode {self.recombine_mode!r}")


@dataclass(frozen=True)
class GlobalSolution:
    selected: frozenset[int] = frozenset()
    visited: frozenset[int] = frozenset()


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    root: int
    radius: int
    m: int
    active_mixers: int
    round_weights: tuple[int, ...]
    added: tuple[int, ...]
    global_size: int
    ratio: float | None
    evals: int


@dataclass(frozen=True)
class LocalResult:
    bits: str
    round_weights: tuple[int, ...]
    active_mixers: int
    evals: int


def next_root(
    g: Graph,
    current_root: int,
    visited,
    n_s: int,
    rng: np.random.Generator,
    roots=None,
) -> int:
    """Pick the next root from the shell at distance exactly ``n_s``.

    Preference order, each a uniform draw: unvisited shell nodes; shell nodes
    never used as a root (only when ``roots`` is given); any unvisited node.
    Every shell node lies inside the ball just merged, so during a run the
    second tier is what keeps the walk on the neighborhood's edge.
    """
    visited = set(visited)
    if len(visited) >= g.n:
        raise ParameterError("every node is already visited")
    dist = distances_from(g, current_root, limit=n_s)
    shell = [v for v in sorted(dist) if dist[v] == n_s]
    tiers = [[v for v in shell if v not in visited]]
    if roots is not None:
        tiers.append([v for v in shell if v not in roots])
    tiers.append([v for v in range(g.n) if v not in visited])
    pool = next(t for t in tiers if t)
    return int(pool[rng.integers(len(pool))])


def _clamped_local(nb: Neighborhood, sol: GlobalSolution, cfg: QlsConfig) -> list[int]:
    if cfg.recombine_mode != "clamped":
        return []
    return [i for i, u in enumerate(nb.nodes) if u in sol.selected]


def _rank(weight: int, prob: float, bits: str) -> tuple:
    # heaviest first, then most probable, then smallest bitstring
    return (-weight, -prob, bits)


def neighborhood_round(
    g: Graph,
    nb: Neighborhood,
    sol: GlobalSolution,
    cfg: QlsConfig,
    rng: np.random.Generator,
) -> LocalResult:
    """Run ``cfg.r`` permutation rounds on one ball and return the best bitstring.

    Each round gets its own generator derived from one draw of ``rng``, so the
    first rounds of a longer run replay a shorter run exactly.
    """
    if nb.m > MAX_QUBITS:
        raise ParameterError(f"neighborhood has {nb.m} qubits, cap is {MAX_QUBITS}")
    clamped = _clamped_local(nb, sol, cfg)
    eligible = eligible_mixer_nodes(nb, clamped, cfg.control_budget)
    hw = hamming_weights(nb.m)
    base_seed = int(rng.integers(2**63))

    best = None
    weights = []
    evals = 0
    active = 0
    for j in range(cfg.r):
        round_rng = np.random.default_rng([base_seed, j])
        plan = build_plan(nb, eligible, cfg.k, round_rng)
        active = len(plan.active)
        circuit = AnsatzCircuit(nb.m, plan, clamped)
        x0 = round_rng.uniform(0.0, 2 * np.pi, size=plan.num_params)
        if cfg.zero_angles:
            x = np.zeros(plan.num_params)
        elif plan.active:
            res = maximize(circuit.energy, x0, cfg.optimizer)
            x, evals = res.x, evals + res.evals
        else:
            x = x0
        psi = circuit.state(AnsatzParams.from_vector(x))
        probs = probabilities(psi)
        if cfg.shots == 0:
            candidates = np.flatnonzero(probs >= SUPPORT_THRESHOLD)
        else:
            counts = sample(psi, cfg.shots, round_rng)
            candidates = [parse_bitstring(s) for s in counts.counts]
        top = min(
            _rank(int(hw[b]), float(probs[b]), bitstring(int(b), nb.m)) for b in candidates
        )
        weights.append(-top[0])
        best = top if best is None else min(best, top)
    return LocalResult(best[2], tuple(weights), active, evals)


def merge_local(
    g: Graph,
    sol: GlobalSolution,
    nb: Neighborhood,
    bits: str,
    mode: RecombineMode = "clamped",
) -> GlobalSolution:
    if len(bits) != nb.m:
        raise ParameterError(f"bitstring length {len(bits)} != neighborhood size {nb.m}")
    ones = [nb.nodes[i] for i, c in enumerate(bits) if c == "1"]
    selected = set(sol.selected)
    if mode == "clamped":
        selected.update(ones)
        if not is_independent_set(g, selected):
            raise InvariantError(
                f"merging ball around {nb.root} broke independence: {sorted(ones)}"
            )
    else:
        for u in ones:
            if u not in selected and not any(v in selected for v in g.adjacency[u]):
                selected.add(u)
    return GlobalSolution(frozenset(selected), sol.visited | frozenset(nb.nodes))


def fitting_ball(g: Graph, root: int, n_s: int) -> Neighborhood:
    """Ball of radius ``n_s``, shrunk one hop at a time until it fits the qubit cap."""
    nb = ball(g, root, n_s)
    while nb.m > MAX_QUBITS:
        log.info("ball around %d has %d qubits, shrinking radius to %d", root, nb.m, nb.radius - 1)
        nb = ball(g, root, nb.radius - 1)
    return nb


def run_qls(
    g: Graph,
    cfg: QlsConfig,
    rng: np.random.Generator | None = None,
    e_bh: int | None = None,
) -> tuple[GlobalSolution, list[IterationRecord]]:
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    if e_bh is None and g.n:
        e_bh = boppana_halldorsson(g).size
    sol = GlobalSolution()
    trace: list[IterationRecord] = []
    if g.n == 0:
        return sol, trace

    root = int(rng.integers(g.n))
    roots = set()
    while len(sol.visited) < g.n:
        roots.add(root)
        nb = fitting_ball(g, root, cfg.n_s)
        local = neighborhood_round(g, nb, sol, cfg, rng)
        before = sol.selected
        sol = merge_local(g, sol, nb, local.bits, cfg.recombine_mode)
        trace.append(
            IterationRecord(
                iteration=len(trace) + 1,
                root=root,
                radius=nb.radius,
                m=nb.m,
                active_mixers=local.active_mixers,
                round_weights=local.round_weights,
                added=tuple(sorted(sol.selected - before)),
                global_size=len(sol.selected),
                ratio=bh_ratio(len(sol.selected), e_bh) if e_bh else None,
                evals=local.evals,
            )
        )
        if len(sol.visited) == g.n:
            break
        root = next_root(g, root, sol.visited, cfg.n_s, rng, roots)
    return sol, trace
