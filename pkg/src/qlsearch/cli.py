"""Command-line entry point: ``qlsearch {run,sweep,baseline,verify}``.

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import experiment
from .baseline import boppana_halldorsson
from .errors import ParameterError, QLSError
from .graph import is_independent_set

log = logging.getLogger("qlsearch")


def _pair(text: str) -> tuple[int, int]:
    try:
        n, d = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,D, got {text!r}") from None
    return n, d


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected INT[,INT...], got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="PATH", help="edge-list file, one 'u v' per line")
    src.add_argument("--random", metavar="N,D", type=_pair, help="random D-regular graph on N nodes")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")


def _add_qls(p: argparse.ArgumentParser, k_list: bool) -> None:
    p.add_argument("--ns", type=int, default=2, help="neighborhood radius (default 2)")
    if k_list:
        p.add_argument("--k", type=_int_list, default=(1, 2, 3, 4, 10), help="mixer budgets, comma separated")
    else:
        p.add_argument("--k", type=int, default=4, help="max partial mixers per ball (default 4)")
    p.add_argument("--rounds", type=int, default=5, help="permutation rounds per ball (default 5)")
    p.add_argument("--shots", type=int, default=1024, help="samples per round; 0 = exact support")
    p.add_argument("--recombine", choices=["clamped", "paper-literal"], default="clamped")
    p.add_argument("--opt-max-evals", type=int, default=None, help="Nelder-Mead budget per round")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlsearch", description="Quantum local search for MIS")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="one QLS run on one graph")
    _add_source(run)
    _add_qls(run, k_list=False)
    run.add_argument("--out", metavar="PATH", help="JSON report (default: stdout)")

    sweep = sub.add_parser("sweep", help="instances x trials x k ensemble with CSV aggregates")
    _add_source(sweep)
    _add_qls(sweep, k_list=True)
    sweep.add_argument("--instances", type=int, default=1)
    sweep.add_argument("--trials", type=int, default=1)
    sweep.add_argument(
        "--out", metavar="PATH", required=True,
        help="JSON report; <stem>.iterations.csv and <stem>.final.csv are written beside it",
    )

    base = sub.add_parser("baseline", help="Boppana-Halldorsson independent set")
    _add_source(base)
    base.add_argument("--out", metavar="PATH", help="also write the set as JSON")

    verify = sub.add_parser("verify", help="recompute a report's aggregates from its trials")
    verify.add_argument("report", metavar="PATH")
    return parser


def _spec(args, ks, instances=1, trials=1) -> experiment.ExperimentSpec:
    return experiment.ExperimentSpec(
        graph_path=args.graph,
        random=args.random,
        instances=instances,
        trials=trials,
        ks=ks,
        n_s=args.ns,
        r=args.rounds,
        shots=args.shots,
        seed=args.seed,
        recombine_mode=args.recombine.replace("-", "_"),
        opt_max_evals=args.opt_max_evals,
        out=args.out,
    )


def _progress(cell: dict) -> None:
    log.info(
        "instance %d trial %d k=%d: E_QLS=%d E_BH=%d R_BH=%.3f (%d iterations)",
        cell["instance"], cell["trial"], cell["k"], cell["e_qls"], cell["e_bh"], cell["r_bh"],
        len(cell["trace"]),
    )


def cmd_run(args) -> int:
    report = experiment.run_experiment(_spec(args, (args.k,)), _progress)
    cell = report["trials"][0]
    report["final"] = {"e_qls": cell["e_qls"], "e_bh": cell["e_bh"], "r_bh": cell["r_bh"]}
    text = experiment.dump_json(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"E_QLS={cell['e_qls']} E_BH={cell['e_bh']} R_BH={cell['r_bh']:.4f}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_sweep(args) -> int:
    spec = _spec(args, args.k, args.instances, args.trials)
    report = experiment.run_experiment(spec, _progress)
    out = Path(args.out)
    out.write_text(experiment.dump_json(report), encoding="utf-8")
    stem = out.with_suffix("")
    Path(f"{stem}.iterations.csv").write_text(experiment.iterations_csv(report), encoding="utf-8", newline="")
    Path(f"{stem}.final.csv").write_text(experiment.final_csv(report), encoding="utf-8", newline="")
    for row in report["aggregates"]["final"]:
        print(f"k={row['k']}: R_BH {row['mean_final_ratio']:.4f} +/- {row['std_final_ratio']:.4f}")
    return 0


def cmd_baseline(args) -> int:
    if args.graph:
        g = experiment.load_graph(args.graph)
    else:
        # same spawn key as instance 0 of run/sweep, so baselines line up
        g, _ = experiment.instance_graph(experiment.ExperimentSpec(random=args.random, seed=args.seed), 0)
    result = boppana_halldorsson(g)
    if not is_independent_set(g, result.independent_set):
        raise QLSError("baseline set is not independent")
    print(result.size)
    if args.out:
        payload = {"schema": experiment.SCHEMA_VERSION, "n": g.n, "e_bh": result.size,
                   "independent_set": sorted(result.independent_set)}
        Path(args.out).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    return 0


def cmd_verify(args) -> int:
    report = json.loads(Path(args.report).read_text(encoding="utf-8"))
    problems = experiment.verify_report(report)
    for p in problems:
        print(p)
    print("ok" if not problems else f"{len(problems)} problem(s)")
    return 0 if not problems else 1


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "baseline": cmd_baseline, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except ParameterError as exc:
        print(f"qlsearch {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (QLSError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"qlsearch {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
