"""Boppana-Halldorsson clique-removal baseline and the approximation ratio."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantError, ParameterError
from .graph import Graph, is_independent_set


@dataclass(frozen=True)
class BaselineResult:
    independent_set: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.independent_set)


def _ramsey(adj: list[set[int]], nodes: frozenset[int]) -> tuple[frozenset[int], frozenset[int]]:
    if not nodes:
        return frozenset(), frozenset()
    v = min(nodes)
    nbrs = nodes & adj[v]
    c1, i1 = _ramsey(adj, nbrs)
    c2, i2 = _ramsey(adj, nodes - nbrs - {v})
    c1 = c1 | {v}
    i2 = i2 | {v}
    # ties keep the first candidate
    clique = c1 if len(c1) >= len(c2) else c2
    indep = i1 if len(i1) >= len(i2) else i2
    return clique, indep


def ramsey(g: Graph, nodes=None) -> tuple[frozenset[int], frozenset[int]]:
    """Ramsey recursion with the lowest id as pivot; returns (clique, independent set).

    ``nodes`` restricts the search to an induced subgraph (default: all of ``g``).
    """
    adj = [set(a) for a in g.adjacency]
    nodes = frozenset(range(g.n)) if nodes is None else frozenset(nodes)
    return _ramsey(adj, nodes)


def boppana_halldorsson(g: Graph) -> BaselineResult:
    """Run Ramsey, delete the clique it found, repeat; keep the largest independent set."""
    adj = [set(a) for a in g.adjacency]
    remaining = frozenset(range(g.n))
    best: frozenset[int] = frozenset()
    while remaining:
        clique, indep = _ramsey(adj, remaining)
        if len(indep) > len(best):
            best = indep
        remaining = remaining - clique
    if not is_independent_set(g, best):
        raise InvariantError("baseline produced a dependent set")
    return BaselineResult(best)


def bh_ratio(e_qls: int, e_bh: int) -> float:
    if e_bh < 1:
        raise ParameterError("baseline size must be >= 1")
    return e_qls / e_bh
