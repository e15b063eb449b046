"""Immutable undirected graphs and ground-truth connectivity queries.

Vertices are the integers ``0..n-1``. Adjacency is stored as one bitmask per
vertex so that deleting a conditioning set is a single mask operation; every
public function still speaks in sorted tuples of vertex ids.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import InvalidGraph, InvalidTest, InvalidVertex

VertexSet = tuple[int, ...]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for x in vertices:
        mask |= 1 << x
    return mask


def from_mask(mask: int) -> VertexSet:
    return tuple(iter_bits(mask))


def colex_subsets(items: Sequence[int], size: int) -> Iterator[VertexSet]:
    """Yield the ``size``-subsets of ``items`` in colexicographic order.

    ``items`` must be sorted; subsets are compared by their largest element
    first, so ``(0, 3)`` precedes ``(1, 3)`` which precedes ``(0, 4)``.
    """

    def rec(stop: int, r: int) -> Iterator[VertexSet]:
        if r == 0:
            yield ()
            return
        for i in range(r - 1, stop):
            last = (items[i],)
            for head in rec(i, r - 1):
                yield head + last

    if size < 0 or size > len(items):
        return iter(())
    return rec(len(items), size)


def subsets_up_to(items: Sequence[int], max_size: int) -> Iterator[VertexSet]:
    """Size-then-colex enumeration of all subsets with at most ``max_size`` members."""
    for size in range(min(max_size, len(items)) + 1):
        yield from colex_subsets(items, size)


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Instances are values: equality and hashing use ``(n, edges)`` and the
    edge-edit methods return new graphs.
    """

    __slots__ = ("_n", "_edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise InvalidGraph(f"negative vertex count {n}")
        adj = [0] * n
        normalized: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertex(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise InvalidGraph(f"self-loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in normalized:
                raise InvalidGraph(f"duplicate edge {key}")
            normalized.add(key)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._edges = frozenset(normalized)
        self._adj = tuple(adj)

    @classmethod
    def _from_masks(cls, adj: Sequence[int]) -> Graph:
        g = cls.__new__(cls)
        g._n = len(adj)
        g._adj = tuple(adj)
        g._edges = frozenset((u, v) for u in range(len(adj)) for v in iter_bits(adj[u] >> (u + 1) << (u + 1)))
        return g

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, combinations(range(n), 2))

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def adjacency(self) -> tuple[int, ...]:
        """Per-vertex neighbour bitmasks."""
        return self._adj

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def vertices(self) -> range:
        return range(self._n)

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> VertexSet:
        self._check(v)
        return from_mask(self._adj[v])

    def degree(self, v: int) -> int:
        self._check(v)
        return self._adj[v].bit_count()

    def with_edge(self, u: int, v: int) -> Graph:
        """G + uv."""
        if self.has_edge(u, v):
            return self
        if u == v:
            raise InvalidGraph(f"self-loop at {u}")
        adj = list(self._adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph._from_masks(adj)

    def without_edge(self, u: int, v: int) -> Graph:
        """G - uv."""
        if not self.has_edge(u, v):
            return self
        adj = list(self._adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph._from_masks(adj)

    def is_subgraph_of(self, other: Graph) -> bool:
        return self._n == other._n and self._edges <= other._edges

    def _check(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise InvalidVertex(f"vertex {v} outside 0..{self._n - 1}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edge_list()})"


def _checked_mask(g: Graph, s: Iterable[int]) -> int:
    mask = 0
    for x in s:
        if not 0 <= x < g.n:
            raise InvalidVertex(f"vertex {x} outside 0..{g.n - 1}")
        mask |= 1 << x
    return mask


def component_labels(adj: Sequence[int], removed: int) -> list[int]:
    """Label each vertex outside ``removed`` by the smallest vertex of its component.

    Removed vertices get ``-1``.
    """
    n = len(adj)
    labels = [-1] * n
    alive = ((1 << n) - 1) & ~removed
    unvisited = alive
    while unvisited:
        low = unvisited & -unvisited
        root = low.bit_length() - 1
        reach = low
        frontier = low
        while frontier:
            grow = 0
            for x in iter_bits(frontier):
                grow |= adj[x]
            grow &= alive & ~reach
            reach |= grow
            frontier = grow
        unvisited &= ~reach
        for x in iter_bits(reach):
            labels[x] = root
    return labels


def reach_mask(adj: Sequence[int], start: int, allowed: int) -> int:
    """Vertices reachable from ``start`` using only vertices in ``allowed``."""
    reach = 1 << start
    frontier = reach
    while frontier:
        grow = 0
        for x in iter_bits(frontier):
            grow |= adj[x]
        grow &= allowed & ~reach
        reach |= grow
        frontier = grow
    return reach


def connected_components(g: Graph, s: Iterable[int] = ()) -> list[VertexSet]:
    """Connected components of ``g \\ s``, each sorted, ordered by minimum element."""
    removed = _checked_mask(g, s)
    groups: dict[int, list[int]] = {}
    for v, label in enumerate(component_labels(g.adjacency, removed)):
        if label >= 0:
            groups.setdefault(label, []).append(v)
    return [tuple(groups[k]) for k in sorted(groups)]


def _check_test(g: Graph, removed: int, u: int, v: int) -> None:
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise InvalidVertex(f"test endpoints ({u}, {v}) outside 0..{g.n - 1}")
    if u == v:
        raise InvalidTest("test endpoints coincide")
    if removed >> u & 1 or removed >> v & 1:
        raise InvalidTest("test endpoint inside the conditioning set")


def is_separated(g: Graph, s: Iterable[int], u: int, v: int) -> bool:
    """True iff u and v lie in different components of ``g \\ s``."""
    removed = _checked_mask(g, s)
    _check_test(g, removed, u, v)
    return not reach_mask(g.adjacency, u, g.full_mask & ~removed) >> v & 1


def neighborhood(g: Graph, s: Iterable[int]) -> VertexSet:
    mask = _checked_mask(g, s)
    out = 0
    for x in iter_bits(mask):
        out |= g.adjacency[x]
    return from_mask(out & ~mask)


def max_degree(g: Graph) -> int:
    return max((a.bit_count() for a in g.adjacency), default=0)


def disjoint_paths(
    adj: Sequence[int], u: int, v: int, allowed: int | None = None, limit: int | None = None
) -> int:
    """Maximum number of internally vertex-disjoint u-v paths with an internal vertex.

    Unit-capacity max flow on the vertex-split graph; the edge uv itself is
    ignored. Internal vertices are drawn from ``allowed`` (default: all).
    With ``limit`` set, augmentation stops once the flow exceeds ``limit``.
    """
    n = len(adj)
    if allowed is None:
        allowed = (1 << n) - 1
    allowed |= (1 << u) | (1 << v)
    residual: dict[int, dict[int, int]] = {}

    def arc(a: int, b: int) -> None:
        residual.setdefault(a, {})[b] = 1
        residual.setdefault(b, {}).setdefault(a, 0)

    for x in iter_bits(allowed):
        if x != u and x != v:
            arc(2 * x, 2 * x + 1)
        for y in iter_bits(adj[x] & allowed):
            if (x == u and y == v) or (x == v and y == u):
                continue
            arc(2 * x + 1, 2 * y)

    source, sink = 2 * u + 1, 2 * v
    if source not in residual:
        return 0
    flow = 0
    while limit is None or flow <= limit:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b, cap in residual[a].items():
                if cap and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while b != source:
            a = parent[b]
            residual[a][b] -= 1
            residual[b][a] += 1
            b = a
        flow += 1
    return flow


def kappa_pair(g: Graph, u: int, v: int, within: Iterable[int] | None = None) -> int:
    """kappa(g, u, v): size of a smallest u-v separator in ``g - uv``.

    ``within`` restricts internal vertices, i.e. computes
    kappa(g[within + {u, v}], u, v).
    """
    _check_test(g, 0, u, v)
    allowed = None if within is None else _checked_mask(g, within)
    return disjoint_paths(g.adjacency, u, v, allowed)


def kappa_max(g: Graph) -> int:
    if g.n < 2:
        raise InvalidGraph("kappa is defined over vertex pairs; need n >= 2")
    return max(disjoint_paths(g.adjacency, u, v) for u, v in combinations(range(g.n), 2))


def kappa_at_most(g: Graph, k: int) -> bool:
    """Decide kappa(g) <= k without computing every flow to completion."""
    if g.n < 2:
        return True
    return all(disjoint_paths(g.adjacency, u, v, limit=k) <= k for u, v in combinations(range(g.n), 2))


def kappa_argmax(g: Graph) -> tuple[int, int, int]:
    """Lexicographically smallest pair attaining kappa(g), with the value."""
    if g.n < 2:
        raise InvalidGraph("kappa is defined over vertex pairs; need n >= 2")
    best = (-1, 0, 0)
    for u, v in combinations(range(g.n), 2):
        k = disjoint_paths(g.adjacency, u, v)
        if k > best[0]:
            best = (k, u, v)
    return best[1], best[2], best[0]
