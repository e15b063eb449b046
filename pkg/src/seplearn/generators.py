"""Instance families.

Band graphs place vertices on a line and join every pair at distance <= k.
The customary 1-indexed vertex v_i is stored as id ``i - 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import InvalidParams
from .graph import Graph
from .treewidth import TreeDecomposition


@dataclass(frozen=True)
class BandParams:
    n: int
    q: int
    k: int

    def __post_init__(self) -> None:
        if not self.n >= self.q >= self.k >= 3:
            raise InvalidParams(f"need n >= q >= k >= 3, got n={self.n} q={self.q} k={self.k}")

    @property
    def total(self) -> int:
        return 3 * self.q * self.n


def band_line(total: int, k: int) -> Graph:
    """Vertices 0..total-1 with an edge between every pair at distance <= k."""
    return Graph(total, ((i, j) for i in range(total) for j in range(i + 1, min(total, i + k + 1))))


def band_graph(p: BandParams) -> Graph:
    return band_line(p.total, p.k)


def band_graph_minus(p: BandParams) -> Graph:
    """The band graph without the edge v_1 v_{k+1}."""
    return band_graph(p).without_edge(0, p.k)


def band_line_minus(total: int, k: int) -> Graph:
    return band_line(total, k).without_edge(0, k)


def sliding_window_decomposition(total: int, k: int) -> TreeDecomposition:
    """Path decomposition with bags {v_i..v_{i+k}}; each bag is a clique of the band graph."""
    count = max(1, total - k)
    bags = tuple(tuple(range(i, min(total, i + k + 1))) for i in range(count))
    return TreeDecomposition(bags, tuple((i, i + 1) for i in range(count - 1)))


def covers_no_short_interval(s: Iterable[int], k: int, total: int) -> bool:
    """True iff ``s`` contains no run of k-1 consecutive line positions.

    Positions are 0-based ids on the line ``0..total-1``.
    """
    members = set(s)
    run = 0
    for i in range(total):
        run = run + 1 if i in members else 0
        if run >= k - 1:
            return False
    return True


def sample_non_covering_set(
    rng: random.Random, total: int, k: int, q: int, max_retries: int = 10_000
) -> tuple[tuple[int, ...], int]:
    """Draw S with |S| uniform in [k-1, q] until it covers no (k-1)-interval.

    Returns the set and the number of rejected draws.
    """
    for attempt in range(max_retries):
        size = rng.randint(k - 1, q)
        s = tuple(sorted(rng.sample(range(total), size)))
        if covers_no_short_interval(s, k, total):
            return s, attempt
    raise RuntimeError(f"no non-covering set after {max_retries} draws")


def wheel6() -> Graph:
    """Hub 0 joined to the 5-cycle 1-2-3-4-5-1."""
    rim = [(i, i % 5 + 1) for i in range(1, 6)]
    return Graph(6, [(0, i) for i in range(1, 6)] + rim)


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParams("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n: int) -> Graph:
    return Graph.complete(n)


def star(n: int) -> Graph:
    """Centre 0 joined to leaves 1..n-1."""
    return Graph(n, ((0, i) for i in range(1, n)))


def book(pages: int, spine: bool = True) -> Graph:
    """Hubs 0 and 1 plus ``pages`` vertices adjacent to both hubs."""
    edges = [(0, 1)] if spine else []
    for p in range(2, pages + 2):
        edges += [(0, p), (1, p)]
    return Graph(pages + 2, edges)


def edgeless(n: int) -> Graph:
    return Graph(n)


NAMED_FAMILIES = ("wheel6", "path", "cycle", "clique", "star", "book", "edgeless")


def named_instance(name: str, size: int | None = None) -> Graph:
    """Build a named family; ``size`` is the vertex count, or the page count for ``book``."""
    if name == "wheel6":
        if size not in (None, 6):
            raise InvalidParams("wheel6 has exactly 6 vertices")
        return wheel6()
    builders = {"path": path, "cycle": cycle, "clique": clique, "star": star, "book": book, "edgeless": edgeless}
    if name not in builders:
        raise InvalidParams(f"unknown instance family {name!r}")
    if size is None or size < 0:
        raise InvalidParams(f"{name} needs a non-negative size")
    return builders[name](size)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded G(n, p): each pair in lexicographic order is kept with probability p."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParams(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    return Graph(n, (pair for pair in combinations(range(n), 2) if rng.random() < p))


def permute_graph(g: Graph, seed: int) -> tuple[Graph, tuple[int, ...]]:
    """Relabel vertex x as perm[x] under a seeded uniform permutation."""
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return Graph(g.n, ((perm[u], perm[v]) for u, v in g.edge_list())), tuple(perm)
