"""Treewidth-guided learning.

Phase one learns an optimal-width tree decomposition from small tests. Each
pair that shares an edge of the learned supergraph is then settled by a single
large test. That test is assembled from a guard set S = bag(R) + {u, v}, where
R is an LCA-closed set of decomposition nodes. Added to S is a minimum u-v cut
inside every component of G \\ S. All cut searches and component discovery run
on oracle answers alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import BudgetExceeded, IncompleteComponents, InvalidRegion, RegionBoundViolated
from .graph import Graph, VertexSet, disjoint_paths, from_mask, iter_bits, subsets_up_to, to_mask
from .naive import LearnerReport, SupergraphBuilder
from .oracle import Oracle, OracleStats
from .treewidth import RootedDecomposition, TreeDecomposition, root_decomposition, width_at_most

PHASE1 = "phase1"
GUARD = "guard"
COMPONENTS = "components"
CUTS = "cuts"
FINAL = "final"

LEARNER_MAX_VERTICES = 64


@dataclass(frozen=True)
class RegionCheck:
    """One threshold decision taken while building R."""

    node: int
    case: int
    region: VertexSet
    base: VertexSet
    at_least_threshold: bool
    cut: VertexSet | None
    certified_by: str


@dataclass
class GuardSet:
    r_nodes: tuple[int, ...]
    s_vertices: VertexSet
    region_log: list[RegionCheck] = field(default_factory=list)


@dataclass
class EdgeDecision:
    u: int
    v: int
    guard: GuardSet
    components: list[tuple[VertexSet, VertexSet]]
    cuts: list[VertexSet]
    final_test: VertexSet
    present: bool


@dataclass
class TwLearnerReport:
    result_graph: Graph
    decomposition: TreeDecomposition
    treewidth: int
    candidate_pairs: int
    stats: OracleStats
    decisions: list[EdgeDecision]
    elapsed: float


def learn_decomposition(
    o: Oracle, vertices: int, bucket: str = PHASE1, max_vertices: int = LEARNER_MAX_VERTICES
) -> tuple[TreeDecomposition, LearnerReport]:
    """Deepen k until G^k has a decomposition of width <= k.

    The returned report's ``result_graph`` is the final supergraph G^k and
    ``stopping_level`` is k, which equals the treewidth of the hidden graph.
    """
    if vertices < 1:
        raise ValueError("need at least one vertex")
    start = time.perf_counter()
    builder = SupergraphBuilder(o, vertices, bucket)
    k = 0
    try:
        while True:
            gk = builder.advance(k)
            td = width_at_most(gk, k, max_vertices)
            if td is not None:
                return td, LearnerReport(gk, k, o.stats(), time.perf_counter() - start)
            k += 1
    except BudgetExceeded as exc:
        exc.partial = LearnerReport(builder.graph(), builder.level, o.stats(), time.perf_counter() - start)
        raise


def _separates(o: Oracle, cmask: int, xmask: int, from_u: int, from_v: int, u: int, v: int, bucket: str) -> bool:
    for w in iter_bits(cmask & ~xmask):
        if o.connected(xmask | from_u, w, u, bucket) and o.connected(xmask | from_v, w, v, bucket):
            return False
    return True


def bounded_cut_search(
    o: Oracle, c: VertexSet, s: VertexSet, u: int, v: int, f: int, bucket: str = CUTS
) -> VertexSet | None:
    """Find a minimum X within region c separating u from v, if |X| <= f.

    Requires c and s disjoint, u and v in s, and N(c) contained in s. Then
    the test (X + s - {u}, w, u) tells whether w in c - X reaches u inside the
    region, and the mirrored test does the same for v. X separates iff no w
    reaches both. Candidates are tried in size-then-colex order. Only vertices
    that reach both u and v with X empty are tried, since any minimum cut
    lies among them.
    """
    cmask = to_mask(c)
    smask = to_mask(s)
    if cmask & smask:
        raise InvalidRegion(f"region and base overlap on {from_mask(cmask & smask)}")
    if not (smask >> u & 1 and smask >> v & 1):
        raise InvalidRegion("u and v must belong to the base set")
    from_u = smask & ~(1 << u)
    from_v = smask & ~(1 << v)
    both = 0
    for w in iter_bits(cmask):
        if o.connected(from_u, w, u, bucket) and o.connected(from_v, w, v, bucket):
            both |= 1 << w
    if not both:
        return ()
    for x in subsets_up_to(from_mask(both), f):
        if x and _separates(o, both, to_mask(x), from_u, from_v, u, v, bucket):
            return x
    return None


def select_guard_set(
    o: Oracle,
    rd: RootedDecomposition,
    u: int,
    v: int,
    tw: int,
    bucket: str = GUARD,
    supergraph: Graph | None = None,
) -> GuardSet:
    """Choose R bottom-up and return S = bag(R) + {u, v}.

    Nodes are visited in postorder. A node joins R when it is the LCA of
    two R nodes. It also joins when its still-unguarded region has
    kappa >= 2tw + 2. That region is cmp(t) if nothing below t is in R, and
    otherwise cmp(t) minus cmp(l) + bag(l) for the lowest R node l below t.

    ``supergraph`` may be any learned supergraph of the hidden graph, such as
    G^tw. A region whose supergraph connectivity is already <= 2tw + 1 is
    below the threshold for the hidden graph too, so no tests are spent on it.
    """
    threshold_cut = 2 * tw + 1
    uv = (1 << u) | (1 << v)
    size = len(rd.parent)
    r_set: set[int] = set()
    subtree_has_r = [False] * size
    log: list[RegionCheck] = []

    for t in rd.postorder:
        kids = [c for c in rd.children[t] if subtree_has_r[c]]
        if len(kids) >= 2:
            r_set.add(t)
        else:
            if not kids:
                case = 2
                region = rd.cmp_masks[t] & ~uv
                base = rd.bag_masks[t] | uv
            else:
                case = 3
                below = [r for r in r_set if r != t and rd.is_ancestor(t, r)]
                low = rd.lca_of(below)
                region = rd.cmp_masks[t] & ~(rd.cmp_masks[low] | rd.bag_masks[low]) & ~uv
                base = rd.bag_masks[t] | rd.bag_masks[low] | uv
            if supergraph is not None and disjoint_paths(supergraph.adjacency, u, v, region, threshold_cut) <= threshold_cut:
                check = RegionCheck(t, case, from_mask(region), from_mask(base), False, None, "supergraph")
            else:
                cut = bounded_cut_search(o, from_mask(region), from_mask(base), u, v, threshold_cut, bucket)
                check = RegionCheck(t, case, from_mask(region), from_mask(base), cut is None, cut, "oracle")
            log.append(check)
            if check.at_least_threshold:
                r_set.add(t)
        subtree_has_r[t] = t in r_set or bool(kids)

    guard_mask = uv
    for t in r_set:
        guard_mask |= rd.bag_masks[t]
    return GuardSet(tuple(sorted(r_set)), from_mask(guard_mask), log)


def _partition(o: Oracle, bmask: int, n: int, bucket: str) -> list[int]:
    reps: list[int] = []
    parts: list[int] = []
    for w in range(n):
        if bmask >> w & 1:
            continue
        for i, r in enumerate(reps):
            if o.connected(bmask, w, r, bucket):
                parts[i] |= 1 << w
                break
        else:
            reps.append(w)
            parts.append(1 << w)
    return parts


def discover_components(
    o: Oracle, rd: RootedDecomposition, guard: GuardSet, u: int, v: int, bucket: str = COMPONENTS
) -> list[tuple[VertexSet, VertexSet]]:
    """Components of G \\ S, each paired with a boundary set B ⊆ S containing its neighbourhood.

    Every component's neighbourhood lies in bag(t) + bag(l) + {u, v} for some
    t, l in R + {root} with l below t (or in a single such bag). So for each
    candidate B, V \\ B is partitioned by queries (B, w, w'), and the parts
    avoiding S are kept. Those parts are exactly components of G \\ S.
    """
    n = o.n
    uv = (1 << u) | (1 << v)
    smask = to_mask(guard.s_vertices)
    nodes = sorted(set(guard.r_nodes) | {rd.root})
    boundaries: list[int] = []
    for t in nodes:
        boundaries.append(rd.bag_masks[t] | uv)
    for t in nodes:
        for low in nodes:
            if low != t and rd.is_ancestor(t, low):
                boundaries.append(rd.bag_masks[t] | rd.bag_masks[low] | uv)

    found: dict[int, int] = {}
    tried: set[int] = set()
    for bmask in boundaries:
        if bmask in tried:
            continue
        tried.add(bmask)
        for part in _partition(o, bmask, n, bucket):
            if not part & smask and part not in found:
                found[part] = bmask
    covered = 0
    for part in found:
        covered |= part
    missing = ((1 << n) - 1) & ~smask & ~covered
    if missing:
        raise IncompleteComponents(f"vertices {from_mask(missing)} fell in no discovered component")
    ordered = sorted(found, key=lambda m: (m & -m).bit_length())
    return [(from_mask(part), from_mask(found[part])) for part in ordered]


def decide_edge(
    o: Oracle, rd: RootedDecomposition, u: int, v: int, tw: int, supergraph: Graph | None = None
) -> EdgeDecision:
    guard = select_guard_set(o, rd, u, v, tw, supergraph=supergraph)
    components = discover_components(o, rd, guard, u, v)
    cuts: list[VertexSet] = []
    for comp, boundary in components:
        x = bounded_cut_search(o, comp, boundary, u, v, 3 * tw + 2, CUTS)
        if x is None:
            raise RegionBoundViolated(f"component {comp} has no u-v cut of size <= {3 * tw + 2}")
        cuts.append(x)
    final = to_mask(guard.s_vertices) & ~((1 << u) | (1 << v))
    for x in cuts:
        final |= to_mask(x)
    present = o.connected(final, u, v, FINAL)
    return EdgeDecision(u, v, guard, components, cuts, from_mask(final), present)


def learn_tw(
    o: Oracle,
    vertices: int,
    max_vertices: int = LEARNER_MAX_VERTICES,
    use_supergraph_hint: bool = True,
) -> TwLearnerReport:
    """Learn the hidden graph: small tests for structure, one large test per candidate pair."""
    start = time.perf_counter()
    td, phase = learn_decomposition(o, vertices, PHASE1, max_vertices)
    supergraph = phase.result_graph
    tw = td.width
    decisions: list[EdgeDecision] = []
    if tw <= 0:
        return TwLearnerReport(supergraph, td, tw, 0, o.stats(), decisions, time.perf_counter() - start)

    rd = root_decomposition(td)
    pairs = supergraph.edge_list()
    hint = supergraph if use_supergraph_hint else None
    try:
        for u, v in pairs:
            decisions.append(decide_edge(o, rd, u, v, tw, hint))
    except BudgetExceeded as exc:
        exc.partial = decisions
        raise
    learned = Graph(vertices, [(d.u, d.v) for d in decisions if d.present])
    return TwLearnerReport(learned, td, tw, len(pairs), o.stats(), decisions, time.perf_counter() - start)
