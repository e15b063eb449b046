"""Iterative deepening over conditioning-set size.

Level k asks every test of size k; the supergraph G^k keeps a pair adjacent
unless some test of size <= k separated it. Learning stops at the first k with
kappa(G^k) <= k, at which point G^k is the hidden graph.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceeded, InstanceTooLarge
from .graph import Graph, colex_subsets, component_labels, iter_bits, kappa_argmax, kappa_at_most, to_mask
from .oracle import Oracle, OracleStats


@dataclass
class LearnerReport:
    result_graph: Graph
    stopping_level: int
    stats: OracleStats
    elapsed: float


class SupergraphBuilder:
    """Accumulates oracle answers level by level and materialises G^k.

    Each level only asks the tests of that exact size, so lower-level answers
    are reused rather than re-queried.
    """

    def __init__(self, oracle: Oracle, vertices: int, bucket: str = "phase1") -> None:
        self.oracle = oracle
        self.n = vertices
        self.bucket = bucket
        self.level = -1
        self._separated: set[tuple[int, int]] = set()

    def _scan_size(self, size: int) -> None:
        n = self.n
        ask = self.oracle.connected
        bucket = self.bucket
        separated = self._separated
        for s in colex_subsets(range(n), size):
            smask = to_mask(s)
            rest = [x for x in range(n) if not smask >> x & 1]
            for u, v in combinations(rest, 2):
                if not ask(smask, u, v, bucket):
                    separated.add((u, v))

    def advance(self, k: int) -> Graph:
        for size in range(self.level + 1, k + 1):
            self._scan_size(size)
            self.level = size
        return self.graph()

    def graph(self) -> Graph:
        pairs = (p for p in combinations(range(self.n), 2) if p not in self._separated)
        return Graph(self.n, pairs)


def supergraph_at_level(o: Oracle, vertices: int, k: int, bucket: str = "phase1") -> Graph:
    return SupergraphBuilder(o, vertices, bucket).advance(k)


def learn_naive(o: Oracle, vertices: int, bucket: str = "phase1") -> LearnerReport:
    """Learn the hidden graph with tests no larger than its kappa.

    On :class:`BudgetExceeded` the partially learned state is attached to the
    exception as a :class:`LearnerReport` whose ``stopping_level`` is the last
    completed level (-1 if none).
    """
    if vertices < 1:
        raise ValueError("need at least one vertex")
    start = time.perf_counter()
    builder = SupergraphBuilder(o, vertices, bucket)
    k = 0
    try:
        while True:
            gk = builder.advance(k)
            if kappa_at_most(gk, k):
                return LearnerReport(gk, k, o.stats(), time.perf_counter() - start)
            k += 1
    except BudgetExceeded as exc:
        exc.partial = LearnerReport(builder.graph(), builder.level, o.stats(), time.perf_counter() - start)
        raise


def verify_size_lower_bound(g: Graph, max_vertices: int = 12) -> bool:
    """Check exhaustively that tests smaller than kappa(g) cannot tell g from g'.

    g' toggles the edge between the lexicographically smallest pair attaining
    kappa(g). Every test of size < kappa(g) is evaluated on both graphs.
    """
    if g.n > max_vertices:
        raise InstanceTooLarge(f"{g.n} vertices exceeds the exhaustive cap of {max_vertices}")
    u, v, kappa = kappa_argmax(g)
    twin = g.without_edge(u, v) if g.has_edge(u, v) else g.with_edge(u, v)
    for size in range(kappa):
        for s in colex_subsets(range(g.n), size):
            smask = to_mask(s)
            left = component_labels(g.adjacency, smask)
            right = component_labels(twin.adjacency, smask)
            rest = list(iter_bits(g.full_mask & ~smask))
            for a, b in combinations(rest, 2):
                if (left[a] == left[b]) != (right[a] == right[b]):
                    return False
    return True
