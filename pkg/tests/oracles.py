"""Brute-force reference implementations, deliberately unrelated to the package code.

Everything here works on plain Python sets or networkx graphs and enumerates
subsets directly. Nothing reuses the bitmask, max-flow or elimination search
machinery under test.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import networkx as nx


def to_nx(n: int, edges) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def separated(n: int, edges, s, u: int, v: int) -> bool:
    g = to_nx(n, edges)
    g.remove_nodes_from(s)
    return not nx.has_path(g, u, v)


def components(n: int, edges, s=()) -> list[tuple[int, ...]]:
    g = to_nx(n, edges)
    g.remove_nodes_from(s)
    return sorted(tuple(sorted(c)) for c in nx.connected_components(g))


def brute_kappa_pair(n: int, edges, u: int, v: int, within=None) -> int:
    """Smallest S avoiding u, v that separates them once the edge uv is dropped."""
    keep = set(range(n)) if within is None else set(within) | {u, v}
    sub = [(a, b) for a, b in edges if a in keep and b in keep and {a, b} != {u, v}]
    others = sorted(keep - {u, v})
    outside = set(range(n)) - keep
    for size in range(len(others) + 1):
        for s in combinations(others, size):
            if separated(n, sub, set(s) | outside, u, v):
                return size
    raise AssertionError("removing all other vertices always separates")


def brute_kappa(n: int, edges) -> int:
    return max(brute_kappa_pair(n, edges, u, v) for u, v in combinations(range(n), 2))


def brute_supergraph(n: int, edges, k: int) -> set[tuple[int, int]]:
    """G^k straight from the definition: keep uv unless some |S| <= k separates it."""
    out = set()
    for u, v in combinations(range(n), 2):
        rest = [w for w in range(n) if w not in (u, v)]
        if not any(
            separated(n, edges, s, u, v) for size in range(k + 1) for s in combinations(rest, size)
        ):
            out.add((u, v))
    return out


def brute_treewidth(n: int, edges) -> int:
    """Subset dynamic program: TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|).

    Q(S, v) is the set of vertices outside S + v reachable from v by a path
    whose interior lies in S.
    """
    if n == 0:
        return -1
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    full = frozenset(range(n))

    def q(s: frozenset, v: int) -> int:
        seen = {v}
        stack = [v]
        hits = set()
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in seen:
                    continue
                seen.add(y)
                if y in s:
                    stack.append(y)
                else:
                    hits.add(y)
        return len(hits)

    @lru_cache(maxsize=None)
    def tw(s: frozenset) -> int:
        if not s:
            return -1
        return min(max(tw(s - {v}), q(s - {v}, v)) for v in s)

    return tw(full)


def neighbourhood(n: int, edges, c) -> set[int]:
    cs = set(c)
    out = set()
    for a, b in edges:
        if a in cs and b not in cs:
            out.add(b)
        if b in cs and a not in cs:
            out.add(a)
    return out
