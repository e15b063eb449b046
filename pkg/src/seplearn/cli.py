"""``seplearn`` command line: gen, learn, bench, verify."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .corpus import standard_corpus
from .errors import SepLearnError
from .generators import BandParams, band_graph, sliding_window_decomposition
from .graph import kappa_max, max_degree
from .harness import (
    FAMILIES,
    LEARNERS,
    ExperimentConfig,
    Report,
    build_instance,
    format_graph,
    run_experiment,
    write_csv,
    write_report,
)
from .naive import verify_size_lower_bound
from .oracle import Budget
from .treewidth import validate_decomposition, width_at_most

BAND_GRID = ((3, 3, 3), (4, 3, 3), (4, 4, 3), (4, 4, 4))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_instance_flags(p: argparse.ArgumentParser, many: bool = False) -> None:
    nargs = "+" if many else None
    p.add_argument("--family", choices=FAMILIES, help="generator family")
    p.add_argument("--n", type=int, nargs=nargs, help="vertex count, or band length parameter")
    p.add_argument("--q", type=int, nargs=nargs, help="band parameter q")
    p.add_argument("--k", type=int, nargs=nargs, help="band width k")
    p.add_argument("--m", type=int, nargs=nargs, help="page count for book")
    p.add_argument("--p", type=float, nargs=nargs, help="edge probability for random")
    p.add_argument("--seed", type=int, nargs=nargs, default=[0] if many else 0)


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-size", type=int, help="largest allowed conditioning set")
    p.add_argument("--budget-count", type=int, help="largest allowed number of distinct tests")
    p.add_argument("--audit", action="store_true", help="embed ground truth and audit learner internals")
    p.add_argument("--timing", action="store_true", help="record wall-clock time (breaks byte-reproducibility)")
    p.add_argument("--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seplearn", description="Learn graphs from separation tests.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit an instance file")
    _add_instance_flags(gen)
    gen.add_argument("--out")

    learn = sub.add_parser("learn", help="run one experiment")
    learn.add_argument("--algo", choices=LEARNERS, default="naive")
    learn.add_argument("--input", help="graph file")
    _add_instance_flags(learn)
    _add_run_flags(learn)
    learn.add_argument("--format", choices=("json", "csv"), default="json")

    bench = sub.add_parser("bench", help="sweep a parameter grid")
    bench.add_argument("--algo", choices=LEARNERS, nargs="+", default=["naive"])
    _add_instance_flags(bench, many=True)
    _add_run_flags(bench)
    bench.add_argument("--format", choices=("json", "csv"), default="csv")
    bench.add_argument("--jobs", type=int, default=1, help="worker processes")

    verify = sub.add_parser("verify", help="size lower-bound and band generator suites")
    verify.add_argument("--max-vertices", type=int, default=10)
    verify.add_argument("--max-kappa", type=int, default=4)
    return parser


def _budget(args: argparse.Namespace) -> Budget:
    return Budget(max_test_size=args.budget_size, max_test_count=args.budget_count)


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family is None:
        raise SepLearnError("gen needs --family")
    cfg = ExperimentConfig(learner="naive", family=args.family, n=args.n, q=args.q, k=args.k, m=args.m, p=args.p,
                           seed=args.seed)
    name, g = build_instance(cfg)
    _emit(format_graph(g, comment=name), args.out)
    return 0


def cmd_learn(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig(
        learner=args.algo,
        input_path=args.input,
        family=args.family,
        n=args.n,
        q=args.q,
        k=args.k,
        m=args.m,
        p=args.p,
        seed=args.seed,
        budget=_budget(args),
        output_format=args.format,
        audit=args.audit,
        timing=args.timing,
    )
    report = run_experiment(cfg)
    _emit(write_report(report, args.format), args.out)
    return 0 if report.success else 1


def bench_configs(args: argparse.Namespace) -> list[ExperimentConfig]:
    if args.family is None:
        raise SepLearnError("bench needs --family")

    def axis(values: list | None) -> list:
        return values if values else [None]

    grid = itertools.product(args.algo, axis(args.n), axis(args.q), axis(args.k), axis(args.m), axis(args.p),
                             args.seed)
    return [
        ExperimentConfig(learner=algo, family=args.family, n=n, q=q, k=k, m=m, p=p, seed=seed,
                         budget=_budget(args), output_format=args.format, audit=args.audit, timing=args.timing)
        for algo, n, q, k, m, p, seed in grid
    ]


def run_many(configs: Sequence[ExperimentConfig], jobs: int = 1) -> list[Report]:
    """Run experiments, in parallel when ``jobs`` > 1; results keep config order."""
    if jobs <= 1:
        return [run_experiment(c) for c in configs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_experiment, configs))


def cmd_bench(args: argparse.Namespace) -> int:
    reports = run_many(bench_configs(args), args.jobs)
    if args.format == "csv":
        text = write_csv(reports)
    else:
        text = json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2) + "\n"
    _emit(text, args.out)
    return 0 if all(r.success for r in reports) else 1


def verify_lines(max_vertices: int = 10, max_kappa: int = 4) -> list[tuple[str, bool]]:
    lines: list[tuple[str, bool]] = []
    for inst in standard_corpus():
        g = inst.graph
        if g.n < 2 or g.n > max_vertices:
            continue
        kappa = kappa_max(g)
        if kappa > max_kappa:
            continue
        lines.append((f"size-lower-bound {inst.name} kappa={kappa}", verify_size_lower_bound(g, max_vertices)))
    for n, q, k in BAND_GRID:
        params = BandParams(n, q, k)
        g = band_graph(params)
        td = sliding_window_decomposition(params.total, k)
        checks = (
            g.n == 3 * q * n,
            max_degree(g) == 2 * k,
            kappa_max(g) == 2 * k - 2,
            not validate_decomposition(g, td) and td.width == k,
            width_at_most(g, k, g.n) is not None,
            width_at_most(g, k - 1, g.n) is None,
        )
        lines.append((f"band ({n},{q},{k})", all(checks)))
    return lines


def cmd_verify(args: argparse.Namespace) -> int:
    ok = True
    for label, passed in verify_lines(args.max_vertices, args.max_kappa):
        print(f"{'PASS' if passed else 'FAIL'} {label}")
        ok = ok and passed
    return 0 if ok else 1


COMMANDS = {"gen": cmd_gen, "learn": cmd_learn, "bench": cmd_bench, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (SepLearnError, OSError) as exc:
        print(f"seplearn: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
