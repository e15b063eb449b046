"""Experiment orchestration, graph files and canonical reports.

Graph file format::

    # optional comments
    <n> <m>
    <u> <v>        (m lines, 0-indexed endpoints)

CSV report columns, in order: see :data:`CSV_COLUMNS`.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Iterable

from .audit import audit_report
from .errors import InstanceTooLarge, InvalidParams, ParseError, SepLearnError
from .generators import BandParams, NAMED_FAMILIES, band_graph, band_graph_minus, named_instance, random_graph
from .graph import Graph, kappa_max, max_degree
from .learner_tw import FINAL, learn_decomposition, learn_tw
from .naive import LearnerReport, learn_naive
from .oracle import Budget, OracleStats, make_exact_oracle
from .treewidth import exact_treewidth, validate_decomposition

LEARNERS = ("naive", "tw", "decomposition")
FAMILIES = NAMED_FAMILIES + ("band", "band-minus", "random")
CSV_COLUMNS = (
    "instance",
    "n",
    "m",
    "learner",
    "success",
    "exact_recovery",
    "stopping_level",
    "total_tests",
    "raw_calls",
    "max_size_seen",
    "bounds_passed",
    "bounds_failed",
    "error",
)
GROUND_TRUTH_TW_CAP = 64


def parse_graph(text: str) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            a, b = (int(x) for x in parts)
        except ValueError:
            raise ParseError("syntax", lineno, raw) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("syntax", lineno, raw)
            header = (a, b)
            continue
        n = header[0]
        if a == b:
            raise ParseError("self-loop", lineno, raw)
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError("range", lineno, raw)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ParseError("duplicate", lineno, raw)
        seen.add(key)
        edges.append(key)
    if header is None:
        raise ParseError("syntax", None, "missing 'n m' header")
    if len(edges) != header[1]:
        raise ParseError("count", None, f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"{g.n} {g.m}")
    lines += [f"{u} {v}" for u, v in g.edge_list()]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ExperimentConfig:
    learner: str
    input_path: str | None = None
    family: str | None = None
    n: int | None = None
    q: int | None = None
    k: int | None = None
    m: int | None = None
    p: float | None = None
    seed: int = 0
    budget: Budget = field(default_factory=Budget)
    output_format: str = "json"
    audit: bool = False
    timing: bool = False

    def __post_init__(self) -> None:
        if (self.input_path is None) == (self.family is None):
            raise InvalidParams("exactly one of input_path and family is required")
        if self.learner not in LEARNERS:
            raise InvalidParams(f"unknown learner {self.learner!r}; choose from {LEARNERS}")
        if self.family is not None and self.family not in FAMILIES:
            raise InvalidParams(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.output_format not in ("json", "csv"):
            raise InvalidParams(f"unknown format {self.output_format!r}")


def build_instance(cfg: ExperimentConfig) -> tuple[str, Graph]:
    if cfg.input_path is not None:
        with open(cfg.input_path, encoding="utf-8") as fh:
            return cfg.input_path, parse_graph(fh.read())
    family = cfg.family
    assert family is not None
    if family in ("band", "band-minus"):
        if None in (cfg.n, cfg.q, cfg.k):
            raise InvalidParams(f"{family} needs --n, --q and --k")
        params = BandParams(cfg.n, cfg.q, cfg.k)  # type: ignore[arg-type]
        g = band_graph(params) if family == "band" else band_graph_minus(params)
        return f"{family}-{cfg.n}-{cfg.q}-{cfg.k}", g
    if family == "random":
        if cfg.n is None or cfg.p is None:
            raise InvalidParams("random needs --n and --p")
        return f"random-n{cfg.n}-p{cfg.p}-s{cfg.seed}", random_graph(cfg.n, cfg.p, cfg.seed)
    if family == "book":
        if cfg.m is None:
            raise InvalidParams("book needs --m (page count)")
        return f"book{cfg.m}", named_instance("book", cfg.m)
    if family == "wheel6":
        return "wheel6", named_instance("wheel6")
    if cfg.n is None:
        raise InvalidParams(f"{family} needs --n")
    return f"{family}{cfg.n}", named_instance(family, cfg.n)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    bound: int
    observed: int
    passed: bool


@dataclass
class Report:
    instance: dict
    learner: str
    success: bool
    exact_recovery: bool
    stopping_level: int | None
    bounds: list[BoundCheck]
    stats: OracleStats
    learned_edges: list[tuple[int, int]]
    error: str | None = None
    elapsed: float | None = None

    def to_dict(self) -> dict:
        return {
            "instance": dict(self.instance),
            "learner": self.learner,
            "success": self.success,
            "exact_recovery": self.exact_recovery,
            "stopping_level": self.stopping_level,
            "bounds": [
                {"name": b.name, "bound": b.bound, "observed": b.observed, "passed": b.passed} for b in self.bounds
            ],
            "stats": self.stats.to_dict(),
            "learned_edges": [list(e) for e in self.learned_edges],
            "error": self.error,
            "elapsed": self.elapsed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        return cls(
            instance=data["instance"],
            learner=data["learner"],
            success=data["success"],
            exact_recovery=data["exact_recovery"],
            stopping_level=data["stopping_level"],
            bounds=[BoundCheck(**b) for b in data["bounds"]],
            stats=OracleStats.from_dict(data["stats"]),
            learned_edges=[tuple(e) for e in data["learned_edges"]],
            error=data["error"],
            elapsed=data["elapsed"],
        )


def _check(name: str, bound: int, observed: int, passed: bool) -> BoundCheck:
    return BoundCheck(name, bound, observed, passed)


def run_experiment(cfg: ExperimentConfig) -> Report:
    """Run one learner on one instance and evaluate its bound checks.

    Learner failures, including budget exhaustion, produce a failing report
    carrying whatever statistics had accumulated.
    """
    name, g = build_instance(cfg)
    n = g.n
    kappa = kappa_max(g) if n >= 2 else 0
    try:
        tw: int | None = exact_treewidth(g, GROUND_TRUTH_TW_CAP)[0]
    except InstanceTooLarge:
        tw = None

    instance: dict = {"name": name, "n": n, "m": g.m}
    if cfg.audit:
        instance.update({"kappa": kappa, "max_degree": max_degree(g), "treewidth": tw})

    oracle = make_exact_oracle(g, cfg.budget)
    start = time.perf_counter()
    bounds: list[BoundCheck] = []
    learned: Graph | None = None
    decomposition_ok = False
    level: int | None = None
    error: str | None = None
    try:
        if cfg.learner == "naive":
            rep = learn_naive(oracle, n)
            learned, level = rep.result_graph, rep.stopping_level
            st = rep.stats
            bounds.append(_check("max_test_size_equals_kappa", kappa, st.max_size_seen, st.max_size_seen == kappa))
            bounds.append(
                _check("test_count_at_most_n_pow_kappa_plus_2", n ** (kappa + 2), st.total_tests,
                       st.total_tests <= n ** (kappa + 2))
            )
        elif cfg.learner == "decomposition":
            td, rep = learn_decomposition(oracle, n)
            level = rep.stopping_level
            st = rep.stats
            violations = len(validate_decomposition(g, td))
            decomposition_ok = violations == 0
            bounds.append(_check("decomposition_valid", 0, violations, violations == 0))
            if tw is not None:
                bounds.append(_check("width_equals_tw", tw, td.width, td.width == tw))
                bounds.append(_check("max_test_size_equals_tw", tw, st.max_size_seen, st.max_size_seen == tw))
                bounds.append(
                    _check("test_count_at_most_n_pow_tw_plus_2", n ** (tw + 2), st.total_tests,
                           st.total_tests <= n ** (tw + 2))
                )
        else:
            rep_tw = learn_tw(oracle, n)
            learned, level = rep_tw.result_graph, rep_tw.treewidth
            st = rep_tw.stats
            t = rep_tw.treewidth
            final = st.bucket(FINAL)
            others = max((b.max_size for lbl, b in st.per_bucket_counts.items() if lbl != FINAL), default=0)
            bounds.append(_check("final_count_at_most_n_tw", n * t, final.count, final.count <= n * t))
            bounds.append(_check("final_size_at_most_2kappa", 2 * kappa, final.max_size, final.max_size <= 2 * kappa))
            bounds.append(_check("nonfinal_size_at_most_4tw_plus_4", 4 * t + 4, others, others <= 4 * t + 4))
            if cfg.audit:
                failures = audit_report(g, rep_tw)
                for check in sorted({f.check for f in failures}):
                    count = sum(1 for f in failures if f.check == check)
                    bounds.append(_check(f"audit_{check}", 0, count, False))
    except SepLearnError as exc:
        error = f"{type(exc).__name__}: {exc}"
        partial = getattr(exc, "partial", None)
        if isinstance(partial, LearnerReport):
            level = partial.stopping_level
    elapsed = time.perf_counter() - start

    stats = oracle.stats()
    if cfg.learner == "decomposition":
        exact = error is None and decomposition_ok
    else:
        exact = learned is not None and learned == g
    success = error is None and exact and all(b.passed for b in bounds)
    edges = learned.edge_list() if learned is not None else []
    return Report(
        instance=instance,
        learner=cfg.learner,
        success=success,
        exact_recovery=exact,
        stopping_level=level,
        bounds=bounds,
        stats=stats,
        learned_edges=edges,
        error=error,
        elapsed=elapsed if cfg.timing else None,
    )


def write_report(r: Report, fmt: str = "json", header: bool = True) -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return write_csv([r], header=header)
    raise InvalidParams(f"unknown format {fmt!r}")


def read_report(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def csv_row(r: Report) -> list[object]:
    passed = sum(1 for b in r.bounds if b.passed)
    return [
        r.instance["name"],
        r.instance["n"],
        r.instance["m"],
        r.learner,
        int(r.success),
        int(r.exact_recovery),
        "" if r.stopping_level is None else r.stopping_level,
        r.stats.total_tests,
        r.stats.raw_calls,
        r.stats.max_size_seen,
        passed,
        len(r.bounds) - passed,
        r.error or "",
    ]


def write_csv(reports: Iterable[Report], header: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(csv_row(r))
    return buf.getvalue()
