"""Hydrostatic validity, lakes, flat zones, and the flooding lattice.

A node-level assignment tau is a flooding when water is stable: on a
node-weighted graph tau >= ground and a strict drop across an edge only
happens where the higher side sits on dry ground; on an edge-weighted graph
tau_p <= tau_q v e_pq across every edge (criterion checked both ways).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .errors import PreconditionError
from .graphs import Graph, NodeFunction, build_graph, check_total, connected_components
from .weights import Weight, format_weight, join


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def is_node_flooding(graph: Graph, tau: Mapping[str, Weight]) -> ValidationReport:
    """Check tau >= f and: tau_p > tau_q across an edge forces tau_p = f_p."""
    ground = graph.require_ground("is_node_flooding")
    check_total(graph, tau, "tau")
    violations: list[str] = []
    for node in graph.nodes:
        if tau[node] < ground[node]:
            violations.append(
                f"node {node}: tau={format_weight(tau[node])} below ground "
                f"{format_weight(ground[node])}"
            )
    for u, v in graph.edges:
        for p, q in ((u, v), (v, u)):
            if tau[p] > tau[q] and tau[p] != ground[p]:
                violations.append(
                    f"edge ({u},{v}): tau_{p}={format_weight(tau[p])} hangs above "
                    f"tau_{q}={format_weight(tau[q])} without resting on ground"
                )
    return ValidationReport(not violations, tuple(violations))


def is_edge_flooding(graph: Graph, tau: Mapping[str, Weight]) -> ValidationReport:
    """Check tau_p <= tau_q v e_pq for every edge, in both directions."""
    weights = graph.require_edge_weights("is_edge_flooding")
    check_total(graph, tau, "tau")
    violations: list[str] = []
    for edge_id, (u, v) in enumerate(graph.edges):
        e = weights[edge_id]
        for p, q in ((u, v), (v, u)):
            if tau[p] > join(tau[q], e):
                violations.append(
                    f"edge ({u},{v}): tau_{p}={format_weight(tau[p])} exceeds "
                    f"tau_{q} v e = {format_weight(join(tau[q], e))}"
                )
    return ValidationReport(not violations, tuple(violations))


class LakeKind(enum.Enum):
    REGIONAL_MINIMUM = "regmin"
    FULL = "full"


@dataclass(frozen=True)
class Lake:
    nodes: tuple[str, ...]
    level: Weight
    kind: LakeKind
    exhaust_edges: tuple[int, ...] = ()


@dataclass(frozen=True)
class LakePartition:
    lakes: tuple[Lake, ...]

    def lake_of(self, node: str) -> Lake:
        for lake in self.lakes:
            if node in lake.nodes:
                return lake
        raise PreconditionError(f"node {node!r} not in any lake")


def _edge_view(graph: Graph) -> Graph:
    """Edge-weighted view of a graph, deriving weights from the ground."""
    if graph.has_edge_weights:
        return graph
    return derive_edge_graph(graph)


def lakes(graph: Graph, tau: Mapping[str, Weight]) -> LakePartition:
    """Partition nodes into lakes of a valid flooding and classify them.

    Lakes are components joined by edges with equal tau not above the water;
    a lake with an exhaust edge (edge at exactly the lake level leading to a
    strictly lower node) is full, otherwise it is a regional minimum.
    Node-weighted graphs are classified on their derived edge view.
    """
    view = _edge_view(graph)
    report = is_edge_flooding(view, tau)
    if not report:
        raise PreconditionError(f"tau is not a valid flooding: {report.violations[0]}")
    weights = view.edge_weights
    assert weights is not None

    def inside(edge_id: int) -> bool:
        u, v = view.edges[edge_id]
        return tau[u] == tau[v] and weights[edge_id] <= tau[u]

    result: list[Lake] = []
    for block in connected_components(view, inside):
        level = tau[block[0]]
        members = set(block)
        exhaust: list[int] = []
        for node in block:
            for neighbor, edge_id in view.neighbors(node):
                if neighbor in members:
                    continue
                if weights[edge_id] == level and tau[neighbor] < level:
                    exhaust.append(edge_id)
        exhaust_ids = tuple(sorted(set(exhaust)))
        kind = LakeKind.FULL if exhaust_ids else LakeKind.REGIONAL_MINIMUM
        result.append(Lake(block, level, kind, exhaust_ids))
    return LakePartition(tuple(result))


def flat_zones(graph: Graph, values: Mapping[str, Weight] | None = None) -> list[tuple[str, ...]]:
    """Components under edges whose endpoints share the same level."""
    levels = values if values is not None else graph.require_ground("flat_zones")
    check_total(graph, levels, "values")

    def flat(edge_id: int) -> bool:
        u, v = graph.edges[edge_id]
        return levels[u] == levels[v]

    return connected_components(graph, flat)


def regional_minima(
    graph: Graph, values: Mapping[str, Weight] | None = None
) -> list[tuple[str, ...]]:
    """Flat zones whose every outside neighbor is strictly higher."""
    levels = values if values is not None else graph.require_ground("regional_minima")
    check_total(graph, levels, "values")
    minima: list[tuple[str, ...]] = []
    for zone in flat_zones(graph, levels):
        members = set(zone)
        level = levels[zone[0]]
        if all(
            levels[neighbor] > level
            for node in zone
            for neighbor, _ in graph.neighbors(node)
            if neighbor not in members
        ):
            minima.append(zone)
    return minima


def _check_flooding(graph: Graph, tau: Mapping[str, Weight], what: str) -> None:
    report = (
        is_edge_flooding(graph, tau) if graph.has_edge_weights else is_node_flooding(graph, tau)
    )
    if not report:
        raise PreconditionError(f"{what} is not a valid flooding: {report.violations[0]}")


def flooding_sup(graph: Graph, tau: Mapping[str, Weight], nu: Mapping[str, Weight]) -> NodeFunction:
    """Pointwise max of two floodings; the result is again a flooding."""
    _check_flooding(graph, tau, "tau")
    _check_flooding(graph, nu, "nu")
    out = {node: max(tau[node], nu[node]) for node in graph.nodes}
    _check_flooding(graph, out, "sup result")
    return out


def flooding_inf(graph: Graph, tau: Mapping[str, Weight], nu: Mapping[str, Weight]) -> NodeFunction:
    """Pointwise min of two floodings; the result is again a flooding."""
    _check_flooding(graph, tau, "tau")
    _check_flooding(graph, nu, "nu")
    out = {node: min(tau[node], nu[node]) for node in graph.nodes}
    _check_flooding(graph, out, "inf result")
    return out


def derive_edge_graph(graph: Graph) -> Graph:
    """Give each edge the max of its endpoint grounds; keep the ground."""
    ground = graph.require_ground("derive_edge_graph")
    weights = [join(ground[u], ground[v]) for u, v in graph.edges]
    return build_graph(graph.nodes, graph.edges, ground=ground, edge_weights=weights)
