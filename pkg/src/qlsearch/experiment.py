"""Ensemble runs over graph instances, trials and mixer budgets.

Seeds fan out from one master seed with :class:`numpy.random.SeedSequence`
spawn keys: instance ``i`` draws its graph from key ``(0, i)`` and trial ``t``
on it runs QLS from key ``(1, i, t)``. The trial key does not include ``k``,
so every mixer budget sees the same random stream (common random numbers).
Any cell can be recomputed alone, in any order, with the same result.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .baseline import bh_ratio, boppana_halldorsson
from .errors import ParameterError
from .graph import Graph, from_edge_list, random_regular
from .optimizer import OptimizerConfig
from .qls import QlsConfig, run_qls

SCHEMA_VERSION = 1
CONVERGENCE_FRACTION = 0.95


@dataclass(frozen=True)
class ExperimentSpec:
    graph_path: str | None = None
    random: tuple[int, int] | None = None
    instances: int = 1
    trials: int = 1
    ks: tuple[int, ...] = (4,)
    n_s: int = 2
    r: int = 5
    shots: int = 1024
    seed: int = 0
    recombine_mode: str = "clamped"
    opt_max_evals: int | None = None
    out: str | None = None

    def __post_init__(self):
        if (self.graph_path is None) == (self.random is None):
            raise ParameterError("give exactly one graph source: a file or a random (n, d) pair")
        if self.instances < 1 or self.trials < 1:
            raise ParameterError("instances and trials must be >= 1")
        if not self.ks:
            raise ParameterError("k list must not be empty")
        if self.seed < 0:
            raise ParameterError("seed must be non-negative")
        # validates the remaining fields early
        self.qls_config(self.ks[0])

    def qls_config(self, k: int) -> QlsConfig:
        return QlsConfig(
            n_s=self.n_s,
            k=k,
            r=self.r,
            shots=self.shots,
            optimizer=OptimizerConfig(max_evals=self.opt_max_evals),
            recombine_mode=self.recombine_mode,
            seed=self.seed,
        )

    def echo(self) -> dict:
        opt = OptimizerConfig(max_evals=self.opt_max_evals)
        d = asdict(self)
        d["random"] = list(self.random) if self.random else None
        d["ks"] = list(self.ks)
        d["optimizer"] = {
            "method": "nelder-mead",
            "max_evals": self.opt_max_evals if self.opt_max_evals is not None else "250*(dim+1)",
            "f_tol": opt.f_tol,
            "x_tol": opt.x_tol,
        }
        d["bitstring_extraction"] = "exact-support" if self.shots == 0 else f"{self.shots} shots"
        return d


def _seed_sequence(master: int, *key: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(master, spawn_key=key)


def load_graph(path: str | Path) -> Graph:
    return from_edge_list(Path(path).read_text(encoding="utf-8"))


def instance_graph(spec: ExperimentSpec, instance: int) -> tuple[Graph, dict]:
    if spec.graph_path is not None:
        g = load_graph(spec.graph_path)
        meta = {"source": str(spec.graph_path)}
    else:
        n, d = spec.random
        g = random_regular(n, d, np.random.default_rng(_seed_sequence(spec.seed, 0, instance)))
        meta = {"source": "random_regular", "degree": d, "seed": spec.seed, "spawn_key": [0, instance]}
    meta.update(instance=instance, n=g.n, edges=len(g.edges()))
    return g, meta


def run_cell(spec: ExperimentSpec, g: Graph, e_bh: int, instance: int, trial: int, k: int) -> dict:
    rng = np.random.default_rng(_seed_sequence(spec.seed, 1, instance, trial))
    sol, trace = run_qls(g, spec.qls_config(k), rng, e_bh)
    e_qls = len(sol.selected)
    return {
        "instance": instance,
        "trial": trial,
        "k": k,
        "e_qls": e_qls,
        "e_bh": e_bh,
        "r_bh": bh_ratio(e_qls, e_bh),
        "selected": sorted(sol.selected),
        "trace": [asdict(rec) for rec in trace],
    }


def iterations_to_fraction(sizes: Sequence[int], fraction: float = CONVERGENCE_FRACTION) -> int:
    """1-based index of the first iteration reaching ``fraction`` of the final size."""
    if not sizes:
        return 0
    target = fraction * sizes[-1]
    return next(i for i, s in enumerate(sizes, start=1) if s >= target)


def _mean_std(values: Sequence[float]) -> tuple[float, float]:
    # population std so a single sample reports 0
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float(arr.std())


def aggregate(cells: Sequence[dict], ks: Sequence[int]) -> dict:
    """Per-k final statistics and per-(k, iteration) running-ratio statistics.

    Shorter traces are padded with their final ratio so every trial
    contributes to every iteration up to the longest trace for that k.
    """
    final, per_iteration = [], []
    for k in ks:
        group = [c for c in cells if c["k"] == k]
        mean, std = _mean_std([c["r_bh"] for c in group])
        conv = [iterations_to_fraction([t["global_size"] for t in c["trace"]]) for c in group]
        final.append(
            {
                "k": k,
                "mean_final_ratio": mean,
                "std_final_ratio": std,
                "mean_iterations": float(np.mean([len(c["trace"]) for c in group])),
                "mean_iterations_to_95": float(np.mean(conv)),
            }
        )
        length = max(len(c["trace"]) for c in group)
        for it in range(length):
            ratios = [
                c["trace"][min(it, len(c["trace"]) - 1)]["ratio"] if c["trace"] else 0.0
                for c in group
            ]
            mean, std = _mean_std(ratios)
            per_iteration.append({"k": k, "iteration": it + 1, "mean_ratio": mean, "std_ratio": std})
    return {"final": final, "per_iteration": per_iteration}


def run_experiment(spec: ExperimentSpec, progress=None) -> dict:
    graphs, cells = [], []
    for i in range(spec.instances):
        g, meta = instance_graph(spec, i)
        e_bh = boppana_halldorsson(g).size
        meta["e_bh"] = e_bh
        graphs.append(meta)
        for t in range(spec.trials):
            for k in spec.ks:
                cells.append(run_cell(spec, g, e_bh, i, t, k))
                if progress:
                    progress(cells[-1])
    return {
        "schema": SCHEMA_VERSION,
        "config": spec.echo(),
        "graphs": graphs,
        "trials": cells,
        "aggregates": aggregate(cells, spec.ks),
    }


def _fmt(x: float) -> str:
    return repr(float(x))


def iterations_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "iteration", "mean_ratio", "std_ratio"])
    for row in report["aggregates"]["per_iteration"]:
        w.writerow([row["k"], row["iteration"], _fmt(row["mean_ratio"]), _fmt(row["std_ratio"])])
    return buf.getvalue()


def final_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "mean_final_ratio", "std_final_ratio"])
    for row in report["aggregates"]["final"]:
        w.writerow([row["k"], _fmt(row["mean_final_ratio"]), _fmt(row["std_final_ratio"])])
    return buf.getvalue()


def dump_json(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def verify_report(report: dict, tol: float = 1e-12) -> list[str]:
    """Recompute aggregates from the embedded trials; return any mismatches."""
    problems = []
    if report.get("schema") != SCHEMA_VERSION:
        problems.append(f"unsupported schema {report.get('schema')!r}")
        return problems
    cells = report["trials"]
    for c in cells:
        sizes = [t["global_size"] for t in c["trace"]]
        if sizes and sizes[-1] != c["e_qls"]:
            problems.append(f"cell {c['instance']}/{c['trial']}/k={c['k']}: trace ends at {sizes[-1]}, e_qls={c['e_qls']}")
        if any(b < a for a, b in zip(sizes, sizes[1:])):
            problems.append(f"cell {c['instance']}/{c['trial']}/k={c['k']}: trace not monotone")
        if not math.isclose(c["r_bh"], c["e_qls"] / c["e_bh"], abs_tol=tol):
            problems.append(f"cell {c['instance']}/{c['trial']}/k={c['k']}: r_bh mismatch")
    ks = [row["k"] for row in report["aggregates"]["final"]]
    fresh = aggregate(cells, ks)
    for name in ("final", "per_iteration"):
        got, want = report["aggregates"][name], fresh[name]
        if len(got) != len(want):
            problems.append(f"{name}: {len(got)} rows, expected {len(want)}")
            continue
        for a, b in zip(got, want):
            for key, value in b.items():
                if not math.isclose(a[key], value, rel_tol=0, abs_tol=tol):
                    problems.append(f"{name} k={b['k']} {key}: {a[key]} != {value}")
    return problems
