"""Undirected simple graphs, BFS neighborhoods and a brute-force MIS oracle."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import CapacityError, GenerationError, InputError, ParameterError

EXACT_MIS_CAP = 24
REGULAR_RETRY_CAP = 1000


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0..n-1`` with sorted adjacency lists."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise ParameterError("adjacency must have one entry per node")
        for u, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ParameterError(f"neighbors of {u} must be sorted and unique")
            for v in nbrs:
                if v == u:
                    raise ParameterError(f"self-loop at node {u}")
                if not 0 <= v < self.n or u not in self.adjacency[v]:
                    raise ParameterError(f"edge {u}-{v} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge {u}-{v} out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(tuple(sorted(a)) for a in adj))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges())})"


def from_edge_list(text: str) -> Graph:
    """Parse a whitespace-separated edge list.

    Blank lines and lines starting with ``#`` are skipped. A line holding a
    single id declares that node without edges. Node ids are dense: ``n`` is
    the largest id plus one, so gaps become isolated nodes.
    """
    edges = []
    n = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if len(parts) not in (1, 2):
                raise ValueError
            ids = [int(p) for p in parts]
        except ValueError:
            raise InputError(f"line {lineno}: expected 'u v', got {raw!r}") from None
        if min(ids) < 0:
            raise InputError(f"line {lineno}: negative node id in {raw!r}")
        if len(ids) == 2:
            if ids[0] == ids[1]:
                raise InputError(f"line {lineno}: self-loop {raw!r}")
            edges.append((ids[0], ids[1]))
        n = max(n, max(ids) + 1)
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"{u} {v}\n" for u, v in g.edges()]
    lines += [f"{u}\n" for u in range(g.n) if not g.adjacency[u]]
    return "".join(lines)


def random_regular(n: int, d: int, rng: np.random.Generator) -> Graph:
    """Sample a simple ``d``-regular graph with the pairing model.

    Whole realizations containing a self-loop or a repeated edge are rejected
    and redrawn, up to ``REGULAR_RETRY_CAP`` attempts.
    """
    if n < 1 or d < 0:
        raise ParameterError("need n >= 1 and d >= 0")
    if (n * d) % 2:
        raise ParameterError(f"n*d must be even (n={n}, d={d})")
    if d >= n:
        raise ParameterError(f"degree must be below node count (n={n}, d={d})")
    stubs = np.repeat(np.arange(n), d)
    for _ in range(REGULAR_RETRY_CAP):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        pairs.sort(axis=1)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        if len({(int(u), int(v)) for u, v in pairs}) != len(pairs):
            continue
        return Graph.from_edges(n, pairs.tolist())
    raise GenerationError(f"no simple {d}-regular graph on {n} nodes after {REGULAR_RETRY_CAP} tries")


def distances_from(g: Graph, root: int, limit: int | None = None) -> dict[int, int]:
    """BFS hop distances from ``root``; nodes beyond ``limit`` are omitted."""
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        if limit is not None and dist[u] >= limit:
            continue
        for v in g.adjacency[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


@dataclass(frozen=True)
class Neighborhood:
    """BFS ball around ``root``.

    ``nodes`` lists global ids layer by layer, ascending within each layer, so
    local index ``i`` refers to ``nodes[i]`` and local index 0 is the root.
    A node is *interior* when every one of its graph neighbors lies in the ball.
    """

    root: int
    radius: int
    nodes: tuple[int, ...]
    local_edges: tuple[tuple[int, int], ...]
    interior_mask: tuple[bool, ...]
    local_neighbors: tuple[tuple[int, ...], ...] = field(repr=False)
    degrees: tuple[int, ...] = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.nodes)

    def local_index(self) -> dict[int, int]:
        return {u: i for i, u in enumerate(self.nodes)}


def ball(g: Graph, root: int, radius: int) -> Neighborhood:
    if not 0 <= root < g.n:
        raise ParameterError(f"root {root} out of range")
    if radius < 0:
        raise ParameterError("radius must be non-negative")
    dist = distances_from(g, root, limit=radius)
    nodes = tuple(sorted(dist, key=lambda u: (dist[u], u)))
    index = {u: i for i, u in enumerate(nodes)}
    local_neighbors = tuple(
        tuple(sorted(index[v] for v in g.adjacency[u] if v in index)) for u in nodes
    )
    local_edges = tuple(
        (i, j) for i, nbrs in enumerate(local_neighbors) for j in nbrs if i < j
    )
    interior = tuple(all(v in index for v in g.adjacency[u]) for u in nodes)
    return Neighborhood(
        root=root,
        radius=radius,
        nodes=nodes,
        local_edges=local_edges,
        interior_mask=interior,
        local_neighbors=local_neighbors,
        degrees=tuple(g.degree(u) for u in nodes),
    )


def is_independent_set(g: Graph, s: Iterable[int]) -> bool:
    chosen = set(s)
    return not any(v in chosen for u in chosen for v in g.adjacency[u])


def exact_mis(g: Graph) -> set[int]:
    """Maximum independent set by branch and bound over bitmasks.

    Branches on the lowest candidate id, include-first, and only replaces the
    incumbent on a strict improvement, so the result is the lexicographically
    smallest optimum.
    """
    if g.n > EXACT_MIS_CAP:
        raise CapacityError(f"exact_mis is capped at {EXACT_MIS_CAP} nodes, got {g.n}")
    closed = [(1 << u) | sum(1 << v for v in g.adjacency[u]) for u in range(g.n)]
    best_size = -1
    best_mask = 0

    def search(chosen: int, size: int, candidates: int) -> None:
        nonlocal best_size, best_mask
        if candidates == 0:
            if size > best_size:
                best_size, best_mask = size, chosen
            return
        if size + candidates.bit_count() <= best_size:
            return
        low = candidates & -candidates
        u = low.bit_length() - 1
        search(chosen | low, size + 1, candidates & ~closed[u])
        search(chosen, size, candidates & ~low)

    search(0, 0, (1 << g.n) - 1)
    return {u for u in range(g.n) if best_mask >> u & 1}
