"""Weight adjunctions, flat-zone contraction, and localized flooding.

The two base operators form an adjunction: `edge_dilation` turns ground
values into edge weights (max of the two endpoints) and `node_erosion`
turns edge weights into node values (min of the incident edges).
Composing them yields an opening on edge weights and a closing on node
values; the closing of the ground is also the waterfall level, the
lowest flooding a node can keep once water may escape through any pipe.

Contraction merges every flat zone of the ground into a single node.
Flooding commutes with it, which `contract_close_flood` exploits to
flood a node-weighted graph on a smaller derived one.  `local_flood`
answers "how high does the water stand at this one node" by growing
balls around it instead of flooding everything, and `up_hill` pushes
water from an already flooded region into the terrain above it.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .errors import PreconditionError
from .graphs import Edge, Graph, NodeFunction, build_graph, check_total
from .hydro import flat_zones, is_edge_flooding
from .solvers import dijkstra_flood
from .weights import BOTTOM, TOP, Weight, join, meet


def edge_dilation(graph: Graph, values: Mapping[str, Weight] | None = None) -> tuple[Weight, ...]:
    """Per-edge max of the endpoint values (defaults to the ground)."""
    if values is None:
        values = graph.require_ground("edge_dilation")
    else:
        check_total(graph, values, "node values")
    return tuple(join(values[u], values[v]) for u, v in graph.edges)


def node_erosion(graph: Graph, weights: tuple[Weight, ...] | None = None) -> NodeFunction:
    """Per-node min of the incident edge weights; isolated nodes get top."""
    if weights is None:
        weights = graph.require_edge_weights("node_erosion")
    elif len(weights) != len(graph.edges):
        raise PreconditionError(
            f"{len(graph.edges)} edges but {len(weights)} edge weights"
        )
    eroded: NodeFunction = {}
    for node in graph.nodes:
        low: Weight = TOP
        for _, edge_id in graph.neighbors(node):
            low = meet(low, weights[edge_id])
        eroded[node] = low
    return eroded


def edge_opening(graph: Graph, weights: tuple[Weight, ...] | None = None) -> tuple[Weight, ...]:
    """Opening on edge weights: erode to the nodes, dilate back."""
    eroded = node_erosion(graph, weights)
    return tuple(join(eroded[u], eroded[v]) for u, v in graph.edges)


def node_closing(graph: Graph, values: Mapping[str, Weight] | None = None) -> NodeFunction:
    """Closing on node values: dilate to the edges, erode back."""
    return node_erosion(graph, edge_dilation(graph, values))


def waterfall_flooding(graph: Graph) -> NodeFunction:
    """Highest flooding from which no node can still drain downhill.

    Equals the node erosion of the edge weights; every node sits exactly
    at its lowest escape pipe, so the result is always a valid flooding.
    """
    graph.require_edge_weights("waterfall_flooding")
    level = node_erosion(graph)
    report = is_edge_flooding(graph, level)
    assert report.valid, report.violations
    return level


@dataclass(frozen=True)
class ContractionMap:
    """Correspondence between a graph and its contraction.

    ``forward`` sends each original node to its super-node, ``blocks``
    lists the members of each super-node in declaration order, and
    ``graph`` is the contracted graph itself.
    """

    graph: Graph
    forward: dict[str, str]
    blocks: dict[str, tuple[str, ...]]

    def expand(self, values: Mapping[str, Weight]) -> NodeFunction:
        """Pull values on the contracted graph back to the original nodes."""
        check_total(self.graph, values, "contracted values")
        return {node: values[block] for node, block in self.forward.items()}


def expand(mapping: ContractionMap, values: Mapping[str, Weight]) -> NodeFunction:
    """Free-function form of :meth:`ContractionMap.expand`."""
    return mapping.expand(values)


def contract_flat_zones(
    graph: Graph,
    omega: Mapping[str, Weight] | None = None,
) -> tuple[Graph, ContractionMap, NodeFunction | None]:
    """Merge each flat zone of the ground into one super-node.

    The super-node id is the zone's first declared member.  Parallel
    edges between two zones collapse to one edge; if the graph carries
    edge weights the lowest one survives.  A ceiling contracts to the
    min over each zone, since a lake covering the zone is capped by the
    lowest ceiling above it.
    """
    ground = graph.require_ground("contract_flat_zones")
    if omega is not None:
        check_total(graph, omega, "ceiling")

    zones = flat_zones(graph)
    forward: dict[str, str] = {}
    blocks: dict[str, tuple[str, ...]] = {}
    for zone in zones:
        blocks[zone[0]] = zone
        for node in zone:
            forward[node] = zone[0]
    forward = {node: forward[node] for node in graph.nodes}

    contracted_ground = {rep: ground[rep] for rep in blocks}
    contracted_omega: NodeFunction | None = None
    if omega is not None:
        contracted_omega = {
            rep: min(omega[node] for node in zone) for rep, zone in blocks.items()
        }

    edges: list[Edge] = []
    weights: list[Weight] = []
    seen: dict[frozenset[str], int] = {}
    for edge_id, (u, v) in enumerate(graph.edges):
        ru, rv = forward[u], forward[v]
        if ru == rv:
            continue
        key = frozenset((ru, rv))
        if key in seen:
            if graph.edge_weights is not None:
                slot = seen[key]
                weights[slot] = meet(weights[slot], graph.edge_weights[edge_id])
            continue
        seen[key] = len(edges)
        edges.append((ru, rv))
        if graph.edge_weights is not None:
            weights.append(graph.edge_weights[edge_id])

    contracted = build_graph(
        list(blocks),
        edges,
        ground=contracted_ground,
        edge_weights=tuple(weights) if graph.edge_weights is not None else None,
    )
    mapping = ContractionMap(graph=contracted, forward=forward, blocks=blocks)
    return contracted, mapping, contracted_omega


def mst_with_contraction(graph: Graph) -> tuple[Graph, ContractionMap]:
    """Spanning tree of the derived edge weights with flat zones merged.

    One pass grows the tree edge by edge, always taking the cheapest
    crossing edge; among equal weights, edges inside a flat zone win so
    the whole zone collapses into one super-node before any outgoing
    edge of the same weight is considered.  Returns the tree on the
    super-nodes plus the contraction that produced them.
    """
    ground = graph.require_ground("mst_with_contraction")
    derived = edge_dilation(graph)

    parent = {node: node for node in graph.nodes}

    def find(node: str) -> str:
        root = node
        while parent[root] != root:
            root = parent[root]
        while parent[node] != root:
            parent[node], node = root, parent[node]
        return root

    def union(u: str, v: str) -> None:
        ru, rv = find(u), find(v)
        if graph.node_index(ru) > graph.node_index(rv):
            ru, rv = rv, ru
        parent[rv] = ru

    visited: set[str] = set()
    heap: list[tuple[Weight, int, int]] = []
    tree_edge_ids: list[int] = []

    def visit(node: str) -> None:
        visited.add(node)
        for _, edge_id in graph.neighbors(node):
            u, v = graph.edges[edge_id]
            flat = 0 if ground[u] == ground[v] else 1
            heapq.heappush(heap, (derived[edge_id], flat, edge_id))

    for start in graph.nodes:
        if start in visited:
            continue
        visit(start)
        while heap:
            _, flat, edge_id = heapq.heappop(heap)
            u, v = graph.edges[edge_id]
            if u in visited and v in visited:
                continue
            visit(v if u in visited else u)
            if flat == 0:
                union(u, v)
            else:
                tree_edge_ids.append(edge_id)

    blocks: dict[str, list[str]] = {}
    for node in graph.nodes:
        blocks.setdefault(find(node), []).append(node)
    forward = {node: find(node) for node in graph.nodes}

    tree_edges = [(forward[u], forward[v]) for u, v in
                  (graph.edges[edge_id] for edge_id in tree_edge_ids)]
    tree_weights = tuple(derived[edge_id] for edge_id in tree_edge_ids)
    tree = build_graph(
        list(blocks),
        tree_edges,
        ground={rep: ground[rep] for rep in blocks},
        edge_weights=tree_weights,
    )
    mapping = ContractionMap(
        graph=tree,
        forward=forward,
        blocks={rep: tuple(members) for rep, members in blocks.items()},
    )
    return tree, mapping


def contract_close_flood(graph: Graph, omega: Mapping[str, Weight]) -> NodeFunction:
    """Flood a node-weighted graph by contracting, closing, then flooding.

    Flat zones are merged first; the closing of the contracted ground
    gives the level at which each remaining node stops being a local
    pocket, and a single shortest-flood pass over the closed relief plus
    a final cap at the ceiling reproduces the flooding of the original
    graph exactly.
    """
    ground = graph.require_ground("contract_close_flood")
    check_total(graph, omega, "ceiling")
    for node in graph.nodes:
        if omega[node] < ground[node]:
            raise PreconditionError(f"ceiling is below the ground at node {node!r}")

    contracted, mapping, contracted_omega = contract_flat_zones(graph, omega)
    assert contracted_omega is not None
    closed = node_closing(contracted)
    capped = {node: join(contracted_omega[node], closed[node]) for node in contracted.nodes}
    relief = build_graph(
        contracted.nodes,
        contracted.edges,
        ground=closed,
        edge_weights=edge_dilation(contracted, closed),
    )
    chi = dijkstra_flood(relief, capped).tau
    # A minimum whose own ceiling sits below the closing never spills;
    # the final cap hands it back its ceiling.
    levels = {node: meet(chi[node], contracted_omega[node]) for node in contracted.nodes}
    return mapping.expand(levels)


def local_flood(graph: Graph, omega: Mapping[str, Weight], node: str) -> Weight:
    """Flooding level at one node without flooding the whole graph.

    Grows the balls around ``node`` one radius at a time; the level is
    the best ceiling-versus-diameter trade-off over those balls, capped
    below by the ground.  Stops as soon as the lowest ceiling seen no
    longer beats the next radius.
    """
    ground = graph.require_ground("local_flood")
    check_total(graph, omega, "ceiling")
    graph.node_index(node)

    def checked(q: str) -> Weight:
        if omega[q] < ground[q]:
            raise PreconditionError(f"ceiling is below the ground at node {q!r}")
        return omega[q]

    inside = {node}
    lake_cap = checked(node)
    diam: Weight = BOTTOM
    best = lake_cap
    heap: list[tuple[Weight, int, str]] = []

    def push_edges(q: str) -> None:
        for r, edge_id in graph.neighbors(q):
            if r not in inside:
                heapq.heappush(heap, (join(ground[q], ground[r]), edge_id, r))

    push_edges(node)
    while lake_cap > diam:
        while heap and heap[0][2] in inside:
            heapq.heappop(heap)
        radius = heap[0][0] if heap else TOP
        if lake_cap <= radius:
            break
        while heap:
            while heap and heap[0][2] in inside:
                heapq.heappop(heap)
            if not heap or heap[0][0] > radius:
                break
            _, _, fresh = heapq.heappop(heap)
            inside.add(fresh)
            lake_cap = meet(lake_cap, checked(fresh))
            push_edges(fresh)
        diam = radius
        best = meet(best, join(lake_cap, diam))
    return join(ground[node], best)


def up_hill(
    graph: Graph,
    omega: Mapping[str, Weight],
    region: Mapping[str, Weight] | set[str] | list[str] | tuple[str, ...],
    cap: Weight = TOP,
) -> NodeFunction:
    """Flood the terrain uphill of an already flooded region.

    Water spills out of ``region`` through its lowest boundary edge, at
    most up to ``cap``.  Each newly reached valley either fills to the
    spill level, or, if it has a lower ceiling inside, fills to that
    ceiling first and then continues from there.  Returns the levels of
    the newly flooded nodes only.
    """
    ground = graph.require_ground("up_hill")
    check_total(graph, omega, "ceiling")
    seeds: list[str] = []
    for node in region:
        graph.node_index(node)
        seeds.append(node)
    if not seeds:
        raise PreconditionError("up_hill needs a non-empty start region")

    claimed = set(seeds)
    levels: NodeFunction = {}

    def claim(q: str, level: Weight) -> None:
        if omega[q] < ground[q]:
            raise PreconditionError(f"ceiling is below the ground at node {q!r}")
        claimed.add(q)
        levels[q] = level

    frames: list[tuple[frozenset[str], Weight]] = [(frozenset(seeds), cap)]
    while frames:
        area, limit = frames.pop()
        spill: Weight = TOP
        for x in area:
            for q, _ in graph.neighbors(x):
                if q not in claimed:
                    spill = meet(spill, join(ground[x], ground[q]))
        if spill == TOP or spill > limit:
            continue

        reached: set[str] = set()
        valleys: list[list[str]] = []
        for x in (n for n in graph.nodes if n in area):
            for q, _ in graph.neighbors(x):
                if q in claimed or q in reached:
                    continue
                if join(ground[x], ground[q]) > spill:
                    continue
                valley = [q]
                reached.add(q)
                queue = deque([q])
                while queue:
                    y = queue.popleft()
                    for r, _ in graph.neighbors(y):
                        if r in claimed or r in reached:
                            continue
                        if join(ground[y], ground[r]) > spill:
                            continue
                        reached.add(r)
                        valley.append(r)
                        queue.append(r)
                valleys.append(sorted(valley, key=graph.node_index))

        # The same frame continues once every valley below is flooded.
        frames.append((frozenset(area | reached), limit))
        followups: list[tuple[frozenset[str], Weight]] = []
        for valley in valleys:
            low: Weight = TOP
            lowest = valley[0]
            for z in valley:
                if omega[z] < low:
                    low = omega[z]
                    lowest = z
            if low >= spill:
                for z in valley:
                    claim(z, spill)
                continue
            members = set(valley)
            pool = [lowest]
            pooled = {lowest}
            queue = deque([lowest])
            while queue:
                y = queue.popleft()
                for r, _ in graph.neighbors(y):
                    if r not in members or r in pooled:
                        continue
                    if join(ground[y], ground[r]) > low:
                        continue
                    pooled.add(r)
                    pool.append(r)
                    queue.append(r)
            for z in sorted(pool, key=graph.node_index):
                claim(z, low)
            followups.append((frozenset(pool), spill))
        frames.extend(reversed(followups))

    return {node: levels[node] for node in graph.nodes if node in levels}
