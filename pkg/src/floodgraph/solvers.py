"""Dominated flooding: the highest flooding lying below a ceiling.

Five independent routes to the same function, cross-checked in the tests:

* ``berge_flood``: fixpoint sweeps of tau_p <- tau_p ^ min_q(tau_q v e_pq).
* ``dijkstra_flood``: best-first growth from the finite-ceiling nodes; the
  ceiling acts like a virtual reservoir node joined to every node p by a
  pipe at height omega_p.
* ``prim_flood``: grows a tree over the lowest boundary edge; a running
  water level turns edge priorities into flooding levels.
* ``core_expanding_flood``: node-weighted variant that introduces whole
  neighborhoods at once and settles dry neighbors without queue traffic.
* ``oracle_flood``: brute force over the all-pairs flooding distance,
  tau_q = min_i(omega_i v d(i, q)); slow and obviously right.

``marker_segmentation`` reuses the same machinery with per-marker labels,
and ``ceiling_minima`` finds cheap seed supersets for reduced starts.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import PreconditionError
from .graphs import Graph, NodeFunction, build_graph, check_total
from .hydro import regional_minima
from .ultrametric import distance_matrix
from .weights import BOTTOM, TOP, Weight, join, meet, weight_succ


class Funnel:
    """Priority structure of FIFO buckets (a hierarchical queue).

    Extraction returns an entry of minimal priority; entries sharing a
    priority leave in insertion order.  A node may sit in several buckets
    at once; callers discard stale entries on extraction.
    """

    def __init__(self) -> None:
        self._buckets: dict = {}
        self._priorities: list = []
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def __bool__(self) -> bool:
        return self._size > 0

    def push(self, priority, item) -> None:
        bucket = self._buckets.get(priority)
        if bucket is None:
            bucket = self._buckets[priority] = deque()
            heapq.heappush(self._priorities, priority)
        bucket.append(item)
        self._size += 1

    def min_priority(self):
        if not self._size:
            raise PreconditionError("empty funnel")
        return self._priorities[0]

    def pop(self):
        if not self._size:
            raise PreconditionError("empty funnel")
        priority = self._priorities[0]
        bucket = self._buckets[priority]
        item = bucket.popleft()
        self._size -= 1
        if not bucket:
            del self._buckets[priority]
            heapq.heappop(self._priorities)
        return priority, item


@dataclass
class SolverStats:
    extractions: int = 0
    relaxations: int = 0
    sweeps: int = 0
    extraction_levels: tuple[Weight, ...] = ()


@dataclass(frozen=True)
class SolverResult:
    tau: NodeFunction
    labels: NodeFunction | None = None
    stats: SolverStats = field(default_factory=SolverStats)


def augment_with_dummy(graph: Graph, omega: Mapping[str, Weight]) -> tuple[Graph, str]:
    """Add a reservoir node joined to each finite-ceiling node p at omega_p.

    The dominated flooding of the original graph is the flooding distance
    from the reservoir in the augmented graph.  Returns the augmented graph
    and the reservoir's node id.
    """
    weights = graph.require_edge_weights("augment_with_dummy")
    check_total(graph, omega, "omega")
    dummy = "@omega"
    while dummy in graph:
        dummy += "+"
    nodes = [*graph.nodes, dummy]
    edges = list(graph.edges)
    edge_weights = list(weights)
    for node in graph.nodes:
        if omega[node] < TOP:
            edges.append((dummy, node))
            edge_weights.append(omega[node])
    return build_graph(nodes, edges, edge_weights=edge_weights), dummy


def oracle_flood(graph: Graph, omega: Mapping[str, Weight]) -> NodeFunction:
    """tau_q = min over nodes i of omega_i v d(i, q), via the full matrix."""
    check_total(graph, omega, "omega")
    table = distance_matrix(graph).table
    return {
        q: min(join(omega[i], table[i][q]) for i in graph.nodes) for q in graph.nodes
    }


def berge_flood(
    graph: Graph,
    omega: Mapping[str, Weight],
    schedule: str = "gauss_seidel_alternating",
) -> SolverResult:
    """Relaxation sweeps from tau = omega down to the fixpoint.

    ``jacobi`` reads the previous sweep's values; ``gauss_seidel_alternating``
    updates in place, alternating forward and backward node order.  The sweep
    count includes the final sweep that verifies nothing changed.
    """
    weights = graph.require_edge_weights("berge_flood")
    check_total(graph, omega, "omega")
    tau: NodeFunction = {node: omega[node] for node in graph.nodes}
    stats = SolverStats()
    if schedule == "jacobi":
        while True:
            stats.sweeps += 1
            new: NodeFunction = {}
            for p in graph.nodes:
                value = tau[p]
                for q, edge_id in graph.neighbors(p):
                    value = meet(value, join(tau[q], weights[edge_id]))
                if value != tau[p]:
                    stats.relaxations += 1
                new[p] = value
            if new == tau:
                break
            tau = new
    elif schedule == "gauss_seidel_alternating":
        forward = True
        while True:
            stats.sweeps += 1
            changed = False
            order = graph.nodes if forward else tuple(reversed(graph.nodes))
            for p in order:
                value = tau[p]
                for q, edge_id in graph.neighbors(p):
                    value = meet(value, join(tau[q], weights[edge_id]))
                if value != tau[p]:
                    tau[p] = value
                    changed = True
                    stats.relaxations += 1
            if not changed:
                break
            forward = not forward
    else:
        raise PreconditionError(f"unknown berge schedule: {schedule!r}")
    return SolverResult(tau=tau, stats=stats)


def dijkstra_flood(
    graph: Graph,
    omega: Mapping[str, Weight],
    init: str | Iterable[str] = "all",
) -> SolverResult:
    """Best-first flooding with a funnel and the stale-entry discard guard.

    ``init="all"`` seeds every finite-ceiling node at its ceiling.  Passing
    a node set instead seeds only those nodes, which computes the flooding
    for the reduced ceiling that is top outside the set; the set must still
    touch every regional minimum of omega (checked), which is what makes
    the reduction exact on node-derived graphs.
    """
    weights = graph.require_edge_weights("dijkstra_flood")
    check_total(graph, omega, "omega")
    if isinstance(init, str):
        if init != "all":
            raise PreconditionError(f"unknown init mode: {init!r}")
        seeds = list(graph.nodes)
    else:
        seeds = list(dict.fromkeys(init))
        for seed in seeds:
            graph.node_index(seed)
        chosen = set(seeds)
        for zone in regional_minima(graph, omega):
            if not chosen.intersection(zone):
                raise PreconditionError(
                    f"init set misses the ceiling minimum at {zone[0]!r}"
                )
    tau: NodeFunction = {node: TOP for node in graph.nodes}
    funnel = Funnel()
    stats = SolverStats()
    levels: list[Weight] = []
    for seed in seeds:
        if omega[seed] < TOP:
            tau[seed] = omega[seed]
            funnel.push(omega[seed], seed)
    while funnel:
        lam, node = funnel.pop()
        stats.extractions += 1
        if tau[node] != lam:
            continue
        levels.append(lam)
        for neighbor, edge_id in graph.neighbors(node):
            candidate = join(lam, weights[edge_id])
            if candidate < tau[neighbor]:
                tau[neighbor] = candidate
                funnel.push(candidate, neighbor)
                stats.relaxations += 1
    stats.extraction_levels = tuple(levels)
    return SolverResult(tau=tau, stats=stats)


def prim_flood(graph: Graph, sources: Mapping[str, Weight]) -> SolverResult:
    """Tree growth over the lowest boundary edge, scheduled by a funnel.

    Edges enter the funnel at their own weight; a running level lam, raised
    whenever a higher priority is extracted, turns edge priorities into
    flooding levels (the level of a popped node is lam itself).  Seeding
    every finite-ceiling node at its ceiling reproduces dijkstra_flood.
    """
    weights = graph.require_edge_weights("prim_flood")
    if not sources:
        raise PreconditionError("prim_flood needs at least one source")
    for node in sources:
        graph.node_index(node)
    tau: NodeFunction = {node: TOP for node in graph.nodes}
    funnel = Funnel()
    stats = SolverStats()
    levels: list[Weight] = []
    for node, level in sources.items():
        funnel.push(level, node)
    settled: set[str] = set()
    lam: Weight = min(sources.values())
    while funnel:
        mu, node = funnel.pop()
        stats.extractions += 1
        lam = join(lam, mu)
        if node in settled:
            continue
        settled.add(node)
        tau[node] = lam
        levels.append(lam)
        for neighbor, edge_id in graph.neighbors(node):
            if neighbor not in settled:
                funnel.push(weights[edge_id], neighbor)
                stats.relaxations += 1
    stats.extraction_levels = tuple(levels)
    return SolverResult(tau=tau, stats=stats)


def core_expanding_flood(graph: Graph, omega: Mapping[str, Weight]) -> SolverResult:
    """Node-weighted flooding that floods whole neighborhoods at once.

    Alternates between opening a new core (the lowest-ceiling unflooded
    node) and expanding the flooded region through its lowest boundary.
    Two shortcuts keep queue traffic low: a neighbor standing at or above
    the water (f_q >= level) is settled at its own ground immediately, and
    its neighbors are examined in the same batch.
    """
    ground = graph.require_ground("core_expanding_flood")
    check_total(graph, omega, "omega")
    for node in graph.nodes:
        if omega[node] < ground[node]:
            raise PreconditionError(
                f"ceiling below ground at node {node!r}: no flooding >= ground fits"
            )
    order = sorted(graph.nodes, key=lambda n: (omega[n], graph.node_index(n)))
    tau: NodeFunction = {}
    flooded: set[str] = set()
    funnel = Funnel()
    stats = SolverStats()

    def settle(start: str, level: Weight) -> None:
        batch = deque([(start, level)])
        while batch:
            p, at = batch.popleft()
            if p in flooded:
                continue
            flooded.add(p)
            tau[p] = at
            for q, _ in graph.neighbors(p):
                if q in flooded:
                    continue
                if ground[q] >= at:
                    batch.append((q, ground[q]))
                else:
                    funnel.push(at, q)
                    stats.relaxations += 1

    pointer = 0
    total = len(graph.nodes)
    while len(flooded) < total:
        while pointer < total and order[pointer] in flooded:
            pointer += 1
        lam = omega[order[pointer]] if pointer < total else TOP
        mu = funnel.min_priority() if funnel else TOP
        if lam == TOP and mu == TOP:
            for node in graph.nodes:
                if node not in flooded:
                    flooded.add(node)
                    tau[node] = TOP
            break
        if lam < mu:
            stats.extractions += 1
            settle(order[pointer], lam)
        else:
            mu, node = funnel.pop()
            stats.extractions += 1
            if node in flooded:
                continue
            settle(node, mu)
    return SolverResult(tau={node: tau[node] for node in graph.nodes}, stats=stats)


def ceiling_minima(
    graph: Graph,
    omega: Mapping[str, Weight],
    method: str = "scan_x",
    iterations: int = 2,
) -> tuple[str, ...]:
    """A cheap superset of one-entry-per-regional-minimum of the ceiling.

    ``scan_x``: one forward scan keeps nodes strictly below every earlier
    neighbor and not above any later one.  ``scan_x_and_y`` intersects with
    the survivors of ``iterations`` parallel geodesic erosions of omega+1
    above omega; ``scan_x_and_z`` uses one in-place backward erosion pass
    instead.  Every regional minimum of omega meets the result.
    """
    check_total(graph, omega, "omega")
    index = graph.node_index
    scan: list[str] = []
    for node in graph.nodes:
        own = omega[node]
        here = index(node)
        if all(
            own < omega[q] if index(q) < here else own <= omega[q]
            for q, _ in graph.neighbors(node)
        ):
            scan.append(node)
    if method == "scan_x":
        return tuple(scan)
    if method not in ("scan_x_and_y", "scan_x_and_z"):
        raise PreconditionError(f"unknown ceiling_minima method: {method!r}")
    lifted = {node: weight_succ(omega[node]) for node in graph.nodes}
    if method == "scan_x_and_y":
        for _ in range(iterations):
            eroded = {}
            for node in graph.nodes:
                low = lifted[node]
                for q, _ in graph.neighbors(node):
                    low = meet(low, lifted[q])
                eroded[node] = low
            lifted = {node: join(eroded[node], omega[node]) for node in graph.nodes}
    else:
        for node in reversed(graph.nodes):
            low = lifted[node]
            for q, _ in graph.neighbors(node):
                low = meet(low, lifted[q])
            lifted[node] = join(omega[node], low)
    # A top ceiling cannot rise under erosion (succ(top) == top), yet an
    # all-top component is still a regional minimum, so top nodes stay.
    keep = {
        node
        for node in graph.nodes
        if lifted[node] > omega[node] or omega[node] == TOP
    }
    return tuple(node for node in scan if node in keep)


def marker_segmentation(
    graph: Graph,
    markers: Mapping[str, Weight],
    engine: str = "dijkstra",
    want_tau: bool = False,
) -> SolverResult:
    """Label every reachable node with its closest marker's label.

    Closeness is the flooding distance; ties go to the earliest-listed
    marker.  Every marker is strictly closest to itself (its seed enters
    at bottom), so each marker always keeps its own label.  Both engines
    settle each node with the least (distance, marker rank) pair, so they
    produce identical partitions: ``dijkstra`` keeps one improving
    candidate per node, ``prim`` grows a forest over boundary edges with
    multi-occupancy.  Nodes unreachable from every marker stay unlabeled.
    tau (the distance to the winning marker, floored at zero) is filled
    only when ``want_tau`` is set.
    """
    weights = graph.require_edge_weights("marker_segmentation")
    if not markers:
        raise PreconditionError("marker_segmentation needs at least one marker")
    ranked = list(markers)
    for node in ranked:
        graph.node_index(node)
    label_of = [markers[node] for node in ranked]
    if len(set(label_of)) != len(label_of):
        raise PreconditionError("marker labels must be distinct")
    tau: NodeFunction = {}
    labels: NodeFunction = {}
    settled: set[str] = set()
    funnel = Funnel()
    stats = SolverStats()
    levels: list[Weight] = []
    best: dict[str, tuple[Weight, int]] = {}
    for rank, node in enumerate(ranked):
        best[node] = (BOTTOM, rank)
        funnel.push((BOTTOM, rank), node)
    if engine not in ("dijkstra", "prim"):
        raise PreconditionError(f"unknown segmentation engine: {engine!r}")
    while funnel:
        (level, rank), node = funnel.pop()
        stats.extractions += 1
        if node in settled:
            continue
        settled.add(node)
        tau[node] = join(0, level)
        labels[node] = label_of[rank]
        levels.append(level)
        for neighbor, edge_id in graph.neighbors(node):
            if neighbor in settled:
                continue
            candidate = (join(level, weights[edge_id]), rank)
            if engine == "prim":
                funnel.push(candidate, neighbor)
                stats.relaxations += 1
            elif neighbor not in best or candidate < best[neighbor]:
                best[neighbor] = candidate
                funnel.push(candidate, neighbor)
                stats.relaxations += 1
    stats.extraction_levels = tuple(levels)
    ordered_labels = {node: labels[node] for node in graph.nodes if node in labels}
    ordered_tau = {node: tau[node] for node in graph.nodes if node in tau}
    return SolverResult(
        tau=ordered_tau if want_tau else {},
        labels=ordered_labels,
        stats=stats,
    )
