"""Tree decompositions: exact treewidth, validation and rooted utilities.

The exact solver is a memoised search over elimination orderings. The
elimination graph after removing a vertex set does not depend on the order in
which the set was removed, so failed states are cached by the remaining-vertex
bitmask. Simplicial and almost-simplicial vertices of degree <= k are
eliminated without branching, and a contraction-degeneracy bound prunes
hopeless states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InstanceTooLarge, InvalidDecomposition, ParseError
from .graph import Graph, VertexSet, from_mask, iter_bits, to_mask

DEFAULT_MAX_VERTICES = 30


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[VertexSet, ...]
    tree_edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bags", tuple(tuple(sorted(set(b))) for b in self.bags))
        object.__setattr__(
            self, "tree_edges", tuple(sorted((min(a, b), max(a, b)) for a, b in self.tree_edges))
        )

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_text(self) -> str:
        lines = [f"td {self.num_nodes} {self.width}"]
        lines += [" ".join(["b", str(i), *map(str, bag)]) for i, bag in enumerate(self.bags)]
        lines += [f"e {a} {b}" for a, b in self.tree_edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> TreeDecomposition:
        bags: dict[int, VertexSet] = {}
        edges: list[tuple[int, int]] = []
        header: tuple[int, int] | None = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            parts = raw.split()
            if not parts or parts[0].startswith("#"):
                continue
            try:
                nums = [int(p) for p in parts[1:]]
            except ValueError:
                raise ParseError("syntax", lineno, raw) from None
            if parts[0] == "td" and len(nums) == 2 and header is None:
                header = (nums[0], nums[1])
            elif parts[0] == "b" and nums and header is not None:
                bags[nums[0]] = tuple(nums[1:])
            elif parts[0] == "e" and len(nums) == 2 and header is not None:
                edges.append((nums[0], nums[1]))
            else:
                raise ParseError("syntax", lineno, raw)
        if header is None:
            raise ParseError("header", None, "missing 'td' line")
        if sorted(bags) != list(range(header[0])):
            raise ParseError("count", None, f"expected bags 0..{header[0] - 1}")
        td = cls(tuple(bags[i] for i in range(header[0])), tuple(edges))
        if td.width != header[1]:
            raise ParseError("width", None, f"declared {header[1]}, bags give {td.width}")
        return td


@dataclass(frozen=True)
class Violation:
    """One failed decomposition property; ``witness`` names the culprit."""

    kind: str
    witness: tuple[int, ...]


def validate_decomposition(g: Graph, td: TreeDecomposition) -> list[Violation]:
    violations: list[Violation] = []
    k = td.num_nodes
    tree_adj: list[set[int]] = [set() for _ in range(k)]
    for a, b in td.tree_edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            violations.append(Violation("invalid-tree", (a, b)))
            continue
        tree_adj[a].add(b)
        tree_adj[b].add(a)
    if k and (len(td.tree_edges) != k - 1 or len(_reach(tree_adj, None, 0)) != k):
        violations.append(Violation("invalid-tree", ()))

    where: list[set[int]] = [set() for _ in range(g.n)]
    for t, bag in enumerate(td.bags):
        for x in bag:
            if 0 <= x < g.n:
                where[x].add(t)
            else:
                violations.append(Violation("foreign-vertex", (x,)))
    for x in range(g.n):
        if not where[x]:
            violations.append(Violation("missing-vertex", (x,)))
    bag_masks = [to_mask(b) for b in td.bags if all(0 <= x < g.n for x in b)]
    for u, v in g.edge_list():
        pair = (1 << u) | (1 << v)
        if not any(m & pair == pair for m in bag_masks):
            violations.append(Violation("uncovered-edge", (u, v)))
    for x in range(g.n):
        nodes = where[x]
        if len(nodes) > 1 and len(_reach(tree_adj, nodes, min(nodes))) != len(nodes):
            violations.append(Violation("disconnected-occurrence", (x,)))
    return violations


def _reach(tree_adj: list[set[int]], allowed: set[int] | None, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for b in tree_adj[a]:
            if b not in seen and (allowed is None or b in allowed):
                seen.add(b)
                stack.append(b)
    return seen


def _eliminate(adj: list[int], v: int) -> None:
    nb = adj[v]
    bit = 1 << v
    for w in iter_bits(nb):
        adj[w] = (adj[w] | nb) & ~(1 << w) & ~bit
    adj[v] = 0


def _is_clique(adj: Sequence[int], members: int) -> bool:
    for w in iter_bits(members):
        if members & ~adj[w] & ~(1 << w):
            return False
    return True


def _almost_simplicial(adj: Sequence[int], v: int) -> bool:
    nb = adj[v]
    for w in iter_bits(nb):
        missing = nb & ~adj[w] & ~(1 << w)
        if missing:
            other = missing & -missing
            return _is_clique(adj, nb & ~(1 << w)) or _is_clique(adj, nb & ~other)
    return True


def contraction_lower_bound(adj: Sequence[int], remaining: int) -> int:
    """Minimum-degree contraction bound: the largest min-degree seen along a minor sequence."""
    live = {v: adj[v] & remaining for v in iter_bits(remaining)}
    best = 0
    while len(live) > 1:
        v = min(live, key=lambda x: (live[x].bit_count(), x))
        nb = live.pop(v)
        best = max(best, nb.bit_count())
        if not nb:
            continue
        w = min(iter_bits(nb), key=lambda x: (live[x].bit_count(), x))
        for x in iter_bits(nb):
            live[x] &= ~(1 << v)
            if x != w:
                live[x] |= 1 << w
        live[w] |= nb & ~(1 << w)
    return best


class _WidthSearch:
    def __init__(self, k: int) -> None:
        self.k = k
        self.failed: set[int] = set()

    def run(self, adj: list[int], remaining: int) -> list[int] | None:
        k = self.k
        order: list[int] = []
        progress = True
        while progress and remaining:
            if remaining.bit_count() <= k + 1:
                return order + list(iter_bits(remaining))
            progress = False
            for v in iter_bits(remaining):
                if adj[v].bit_count() <= k and _almost_simplicial(adj, v):
                    _eliminate(adj, v)
                    remaining &= ~(1 << v)
                    order.append(v)
                    progress = True
                    break
        if not remaining:
            return order
        if remaining in self.failed:
            return None
        if contraction_lower_bound(adj, remaining) > k:
            self.failed.add(remaining)
            return None
        candidates = sorted((adj[v].bit_count(), v) for v in iter_bits(remaining) if adj[v].bit_count() <= k)
        for _, v in candidates:
            child = list(adj)
            _eliminate(child, v)
            tail = self.run(child, remaining & ~(1 << v))
            if tail is not None:
                return order + [v] + tail
        self.failed.add(remaining)
        return None


def greedy_order(g: Graph) -> list[int]:
    """Min-fill elimination order (ties by degree, then id)."""
    adj = list(g.adjacency)
    remaining = g.full_mask
    order = []
    while remaining:
        def fill(v: int) -> tuple[int, int, int]:
            nb = adj[v]
            missing = sum((nb & ~adj[w] & ~(1 << w)).bit_count() for w in iter_bits(nb)) // 2
            return missing, nb.bit_count(), v

        v = min(iter_bits(remaining), key=fill)
        _eliminate(adj, v)
        remaining &= ~(1 << v)
        order.append(v)
    return order


def order_width(g: Graph, order: Sequence[int]) -> int:
    adj = list(g.adjacency)
    width = -1
    for v in order:
        width = max(width, adj[v].bit_count())
        _eliminate(adj, v)
    return width


def decomposition_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Bag of the i-th eliminated vertex is itself plus its later neighbours."""
    if g.n == 0:
        return TreeDecomposition(((),), ())
    pos = {v: i for i, v in enumerate(order)}
    adj = list(g.adjacency)
    bags: list[VertexSet] = []
    higher: list[int] = []
    for v in order:
        bags.append(from_mask(adj[v] | 1 << v))
        higher.append(adj[v])
        _eliminate(adj, v)
    edges = []
    roots = []
    for i, nb in enumerate(higher):
        if nb:
            edges.append((i, min(pos[x] for x in iter_bits(nb))))
        else:
            roots.append(i)
    edges += [(r, roots[-1]) for r in roots[:-1]]
    return compact(TreeDecomposition(tuple(bags), tuple(edges)))


def compact(td: TreeDecomposition) -> TreeDecomposition:
    """Merge away every node whose bag is contained in a neighbour's bag.

    The lowest-numbered such node goes first, into its lowest-numbered
    containing neighbour; survivors keep their relative order.
    """
    bags = {i: set(b) for i, b in enumerate(td.bags)}
    nbrs: dict[int, set[int]] = {i: set() for i in bags}
    for a, b in td.tree_edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    changed = True
    while changed and len(bags) > 1:
        changed = False
        for i in sorted(bags):
            into = [j for j in sorted(nbrs[i]) if bags[i] <= bags[j]]
            if not into:
                continue
            j = into[0]
            for x in nbrs.pop(i):
                nbrs[x].discard(i)
                if x != j:
                    nbrs[x].add(j)
                    nbrs[j].add(x)
            del bags[i]
            changed = True
            break
    ids = {old: new for new, old in enumerate(sorted(bags))}
    edges = {(min(ids[a], ids[b]), max(ids[a], ids[b])) for a in nbrs for b in nbrs[a]}
    return TreeDecomposition(tuple(tuple(bags[i]) for i in sorted(bags)), tuple(edges))


def _check_size(g: Graph, max_vertices: int) -> None:
    if g.n > max_vertices:
        raise InstanceTooLarge(f"{g.n} vertices exceeds the treewidth cap of {max_vertices}")


def width_at_most(g: Graph, k: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> TreeDecomposition | None:
    """A decomposition of width <= k, or None when tw(g) > k."""
    _check_size(g, max_vertices)
    if k < 0:
        return None if g.n else decomposition_from_order(g, [])
    greedy = greedy_order(g)
    if order_width(g, greedy) <= k:
        return decomposition_from_order(g, greedy)
    order = _WidthSearch(k).run(list(g.adjacency), g.full_mask)
    return None if order is None else decomposition_from_order(g, order)


def exact_treewidth(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> tuple[int, TreeDecomposition]:
    _check_size(g, max_vertices)
    if g.n == 0:
        return -1, decomposition_from_order(g, [])
    greedy = greedy_order(g)
    upper = order_width(g, greedy)
    for k in range(contraction_lower_bound(g.adjacency, g.full_mask), upper):
        td = width_at_most(g, k, max_vertices)
        if td is not None:
            return td.width, td
    return upper, decomposition_from_order(g, greedy)


@dataclass(frozen=True)
class RootedDecomposition:
    """A decomposition hung from a fresh empty-bag root.

    Node ids ``0..base.num_nodes-1`` are the original nodes; the root is
    ``base.num_nodes``. ``cmp[t]`` holds the vertices that appear strictly
    below t but not in bag(t).
    """

    base: TreeDecomposition
    root: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    depth: tuple[int, ...]
    postorder: tuple[int, ...]
    bag_masks: tuple[int, ...]
    cmp_masks: tuple[int, ...]

    def bag(self, t: int) -> VertexSet:
        return from_mask(self.bag_masks[t])

    def cmp(self, t: int) -> VertexSet:
        return from_mask(self.cmp_masks[t])

    def lca(self, a: int, b: int) -> int:
        depth, parent = self.depth, self.parent
        while depth[a] > depth[b]:
            a = parent[a]
        while depth[b] > depth[a]:
            b = parent[b]
        while a != b:
            a, b = parent[a], parent[b]
        return a

    def lca_of(self, nodes: Iterable[int]) -> int:
        it = iter(nodes)
        acc = next(it)
        for t in it:
            acc = self.lca(acc, t)
        return acc

    def is_ancestor(self, a: int, b: int) -> bool:
        """True iff a is b or lies above b."""
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
        return a == b


def root_decomposition(td: TreeDecomposition) -> RootedDecomposition:
    if td.num_nodes == 0:
        raise InvalidDecomposition("cannot root an empty decomposition")
    k = td.num_nodes
    root = k
    nbrs: list[list[int]] = [[] for _ in range(k + 1)]
    for a, b in td.tree_edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    nbrs[root].append(0)
    nbrs[0].append(root)

    parent = [-1] * (k + 1)
    depth = [0] * (k + 1)
    children: list[list[int]] = [[] for _ in range(k + 1)]
    postorder: list[int] = []
    visited = {root}
    stack: list[tuple[int, bool]] = [(root, False)]
    while stack:
        t, done = stack.pop()
        if done:
            postorder.append(t)
            continue
        stack.append((t, True))
        kids = sorted(x for x in nbrs[t] if x not in visited)
        for c in kids:
            visited.add(c)
            parent[c] = t
            depth[c] = depth[t] + 1
        children[t] = kids
        stack.extend((c, False) for c in reversed(kids))
    if len(visited) != k + 1:
        raise InvalidDecomposition("decomposition tree is not connected")

    bag_masks = [to_mask(b) for b in td.bags] + [0]
    below = [0] * (k + 1)
    cmp_masks = [0] * (k + 1)
    for t in postorder:
        acc = bag_masks[t]
        for c in children[t]:
            acc |= below[c]
        below[t] = acc
        cmp_masks[t] = acc & ~bag_masks[t]
    return RootedDecomposition(
        base=td,
        root=root,
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        depth=tuple(depth),
        postorder=tuple(postorder),
        bag_masks=tuple(bag_masks),
        cmp_masks=tuple(cmp_masks),
    )


def is_lca_closed(rd: RootedDecomposition, nodes: Iterable[int]) -> bool:
    members = set(nodes)
    return all(rd.lca(a, b) in members for a in members for b in members)
