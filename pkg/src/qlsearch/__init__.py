"""Quantum local search for Maximum Independent Set on large graphs.

Small neighborhoods of the graph are solved with a simulated depth-one
Quantum Alternating Operator Ansatz and merged into a global independent set.
"""
from .baseline import BaselineResult, bh_ratio, boppana_halldorsson, ramsey
from .errors import (
    CapacityError,
    GenerationError,
    InputError,
    InvariantError,
    ParameterError,
    QLSError,
)
from .graph import Graph, Neighborhood, ball, exact_mis, from_edge_list, is_independent_set, random_regular
from .optimizer import OptimizerConfig, maximize
from .qls import GlobalSolution, IterationRecord, QlsConfig, merge_local, neighborhood_round, next_root, run_qls

__version__ = "0.1.0"
