"""Flooding distance: min over chains of the maximum edge weight.

This "lowest pass" distance is an ultrametric: d(p,p) is bottom, it is
symmetric, and d(p,q) <= d(p,r) v d(r,q).  Closed balls of this distance
are the lakes a flooding can carve, which is why diameters, balls, and the
lowest cocycle edge all live here, together with minimum spanning trees
(which preserve the distance exactly).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import PreconditionError
from .graphs import Edge, Graph, NodeFunction, cocycle, partial_graph, subgraph_spanning
from .weights import BOTTOM, TOP, Weight, join


@dataclass(frozen=True)
class DistanceMatrix:
    nodes: tuple[str, ...]
    table: Mapping[str, Mapping[str, Weight]]

    def distance(self, x: str, y: str) -> Weight:
        try:
            return self.table[x][y]
        except KeyError:
            raise PreconditionError(f"unknown node: {x!r} or {y!r}") from None


def distance_matrix(graph: Graph) -> DistanceMatrix:
    """All-pairs flooding distance by min-max relaxation (Floyd-Warshall)."""
    weights = graph.require_edge_weights("distance_matrix")
    table: dict[str, dict[str, Weight]] = {
        u: {v: (BOTTOM if u == v else TOP) for v in graph.nodes} for u in graph.nodes
    }
    for edge_id, (u, v) in enumerate(graph.edges):
        w = weights[edge_id]
        if w < table[u][v]:
            table[u][v] = w
            table[v][u] = w
    for r in graph.nodes:
        row_r = table[r]
        for p in graph.nodes:
            through = table[p][r]
            if through == TOP:
                continue
            row_p = table[p]
            for q in graph.nodes:
                via = join(through, row_r[q])
                if via < row_p[q]:
                    row_p[q] = via
    return DistanceMatrix(graph.nodes, table)


def flooding_distance_all(graph: Graph, source: str) -> NodeFunction:
    """Single-source flooding distance via best-first growth."""
    weights = graph.require_edge_weights("flooding_distance_all")
    graph.node_index(source)
    dist: NodeFunction = {node: TOP for node in graph.nodes}
    dist[source] = BOTTOM
    counter = 0
    heap: list[tuple[Weight, int, str]] = [(BOTTOM, counter, source)]
    done: set[str] = set()
    while heap:
        d, _, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        for neighbor, edge_id in graph.neighbors(node):
            candidate = join(d, weights[edge_id])
            if candidate < dist[neighbor]:
                dist[neighbor] = candidate
                counter += 1
                heapq.heappush(heap, (candidate, counter, neighbor))
    return dist


def flooding_distance(graph: Graph, x: str, y: str) -> Weight:
    """Min over chains from x to y of the max edge weight; top if none."""
    graph.node_index(y)
    return flooding_distance_all(graph, x)[y]


def ball(graph: Graph, center: str, radius: Weight, kind: str = "closed") -> tuple[str, ...]:
    """Nodes within flooding distance radius of center, declaration order."""
    if kind not in ("closed", "open"):
        raise PreconditionError(f"ball kind must be 'closed' or 'open', got {kind!r}")
    dist = flooding_distance_all(graph, center)
    if kind == "closed":
        return tuple(node for node in graph.nodes if dist[node] <= radius)
    return tuple(node for node in graph.nodes if dist[node] < radius)


def diameter(graph: Graph, members: Iterable[str]) -> Weight:
    """Max pairwise flooding distance inside the induced subgraph."""
    inside = list(dict.fromkeys(members))
    if not inside:
        raise PreconditionError("diameter of an empty set")
    if len(inside) == 1:
        graph.node_index(inside[0])
        return BOTTOM
    sub = subgraph_spanning(graph, inside)
    widest: Weight = BOTTOM
    for source in sub.nodes[:-1]:
        dist = flooding_distance_all(sub, source)
        for other in sub.nodes:
            if dist[other] == TOP:
                raise PreconditionError(
                    f"diameter needs a connected set; {source!r} and {other!r} are separated"
                )
            if dist[other] > widest:
                widest = dist[other]
    return widest


def lowest_cocycle_edge(graph: Graph, inside: Iterable[str]) -> tuple[Edge | None, Weight]:
    """Lowest edge leaving the set; (None, top) when nothing leaves.

    Ties go to the earliest declared edge.
    """
    weights = graph.require_edge_weights("lowest_cocycle_edge")
    member = set(inside)
    if not member:
        raise PreconditionError("lowest_cocycle_edge of an empty set")
    if len(member) >= len(graph.nodes):
        raise PreconditionError("lowest_cocycle_edge of the full node set")
    best_id = -1
    best: Weight = TOP
    for edge_id in cocycle(graph, member):
        if weights[edge_id] < best:
            best = weights[edge_id]
            best_id = edge_id
    if best_id < 0:
        return None, TOP
    return graph.edges[best_id], best


def mst(graph: Graph, root: str | None = None) -> Graph:
    """Minimum spanning tree (forest on disconnected graphs) by Prim.

    Equal-weight frontier edges are taken in declaration order, so the
    result is deterministic.  Node set and weights are retained.
    """
    weights = graph.require_edge_weights("mst")
    if root is not None:
        graph.node_index(root)
    chosen: list[int] = []
    visited: set[str] = set()
    starts = list(graph.nodes)
    if root is not None:
        starts.remove(root)
        starts.insert(0, root)
    for start in starts:
        if start in visited:
            continue
        visited.add(start)
        heap: list[tuple[Weight, int]] = []
        for _, edge_id in graph.neighbors(start):
            heapq.heappush(heap, (weights[edge_id], edge_id))
        while heap:
            _, edge_id = heapq.heappop(heap)
            u, v = graph.edges[edge_id]
            fresh = v if u in visited else u
            if fresh in visited:
                continue
            visited.add(fresh)
            chosen.append(edge_id)
            for _, next_id in graph.neighbors(fresh):
                heapq.heappush(heap, (weights[next_id], next_id))
    return partial_graph(graph, chosen)
