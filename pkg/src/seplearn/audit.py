"""Ground-truth audits of treewidth-learner runs.

Nothing in here is imported by the learners; it inspects a finished
:class:`~seplearn.learner_tw.TwLearnerReport` against the hidden graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, connected_components, is_separated, kappa_max, kappa_pair, neighborhood
from .learner_tw import EdgeDecision, TwLearnerReport
from .treewidth import RootedDecomposition, is_lca_closed, root_decomposition

CHECKS = (
    "lca_closed",
    "guard_size",
    "r_size",
    "r_size_strict",
    "threshold_verdicts",
    "components_exact",
    "neighborhood_bound",
    "region_kappa_bound",
    "region_additivity",
    "cut_minimum",
    "final_soundness",
)


@dataclass(frozen=True)
class AuditFailure:
    check: str
    pair: tuple[int, int]
    detail: str


def audit_decision(g: Graph, rd: RootedDecomposition, tw: int, kappa: int, d: EdgeDecision) -> list[AuditFailure]:
    out: list[AuditFailure] = []
    pair = (d.u, d.v)

    def fail(check: str, detail: str) -> None:
        out.append(AuditFailure(check, pair, detail))

    r_nodes = d.guard.r_nodes
    s = d.guard.s_vertices
    if not is_lca_closed(rd, r_nodes):
        fail("lca_closed", f"R={r_nodes}")
    if len(s) > kappa:
        fail("guard_size", f"|S|={len(s)} > kappa={kappa}")
    if len(r_nodes) > kappa // (tw + 1):
        fail("r_size", f"|R|={len(r_nodes)} > floor(kappa/(tw+1))={kappa // (tw + 1)}")
    if len(r_nodes) > max(0, kappa // (tw + 1) - 1):
        fail("r_size_strict", f"|R|={len(r_nodes)} > max(0, floor(kappa/(tw+1)) - 1)")

    for check in d.guard.region_log:
        truth = kappa_pair(g, d.u, d.v, within=check.region) >= 2 * tw + 2
        if truth != check.at_least_threshold:
            fail("threshold_verdicts", f"node {check.node}: verdict {check.at_least_threshold}, truth {truth}")

    truth_components = connected_components(g, s)
    if sorted(c for c, _ in d.components) != sorted(truth_components):
        fail("components_exact", f"found {[c for c, _ in d.components]}, truth {truth_components}")

    total = 0
    for (comp, boundary), cut in zip(d.components, d.cuts):
        nbhd = neighborhood(g, comp)
        if not set(nbhd) <= set(boundary) or len(nbhd) > 2 * tw + 4:
            fail("neighborhood_bound", f"N({comp})={nbhd}, boundary {boundary}")
        region_kappa = kappa_pair(g, d.u, d.v, within=comp)
        total += region_kappa
        if region_kappa > 3 * tw + 2:
            fail("region_kappa_bound", f"kappa on {comp} is {region_kappa}")
        region_sep = is_separated(
            Graph(g.n, [e for e in g.edge_list() if set(e) <= set(comp) | {d.u, d.v} and set(e) != {d.u, d.v}]),
            cut,
            d.u,
            d.v,
        )
        if len(cut) != region_kappa or not region_sep:
            fail("cut_minimum", f"cut {cut} on {comp}, region kappa {region_kappa}")
    if total > kappa_pair(g, d.u, d.v):
        fail("region_additivity", f"sum {total} > kappa(G,u,v)={kappa_pair(g, d.u, d.v)}")

    edge = g.has_edge(d.u, d.v)
    if d.present != edge or is_separated(g, d.final_test, d.u, d.v) == edge:
        fail("final_soundness", f"final test {d.final_test} answered present={d.present}, edge={edge}")
    return out


def audit_report(g: Graph, report: TwLearnerReport) -> list[AuditFailure]:
    if report.treewidth <= 0 or not report.decisions:
        return []
    rd = root_decomposition(report.decomposition)
    kappa = kappa_max(g) if g.n >= 2 else 0
    failures: list[AuditFailure] = []
    for d in report.decisions:
        failures += audit_decision(g, rd, report.treewidth, kappa, d)
    return failures
