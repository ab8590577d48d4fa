"""Dendrograms: nested families of node sets with diameters.

The clusters of the lake dendrogram are the distinct closed balls of the
flooding distance; merging components in increasing edge-weight order over
the graph (single linkage) enumerates exactly those balls.  Relational
queries (predecessors, brothers, uncles, ...) and dominated flooding
evaluated directly on the tree both live here.

Cluster indices are topological: every child's index is smaller than its
father's, leaves come first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import groupby
from typing import Iterable, Mapping, Sequence

from .errors import ConstructionError, PreconditionError
from .graphs import Graph, NodeFunction
from .ultrametric import ball, lowest_cocycle_edge
from .weights import BOTTOM, TOP, Weight, join, meet


@dataclass(frozen=True)
class Cluster:
    index: int
    members: tuple[str, ...]
    diam: Weight
    father: int | None = None
    children: tuple[int, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return len(self.members) == 1 and self.diam == BOTTOM


@dataclass(frozen=True)
class Dendrogram:
    clusters: tuple[Cluster, ...]
    _by_members: dict[frozenset, int] = field(default_factory=dict, repr=False)

    @property
    def leaf_names(self) -> tuple[str, ...]:
        return tuple(c.members[0] for c in self.clusters if c.is_leaf)

    @property
    def summits(self) -> tuple[Cluster, ...]:
        return tuple(c for c in self.clusters if c.father is None)

    def resolve(self, target) -> Cluster:
        """Accept a Cluster, an index, a leaf name, or a member collection."""
        if isinstance(target, Cluster):
            return self.clusters[target.index]
        if isinstance(target, int):
            if not 0 <= target < len(self.clusters):
                raise PreconditionError(f"unknown cluster index: {target}")
            return self.clusters[target]
        if isinstance(target, str):
            key = frozenset((target,))
        else:
            key = frozenset(target)
        index = self._by_members.get(key)
        if index is None:
            raise PreconditionError(f"unknown cluster: {sorted(key)}")
        return self.clusters[index]


def is_dendrogram(family: Iterable[Iterable[str]]) -> tuple[bool, tuple | None]:
    """Every pair of sets must be nested or disjoint; returns a culprit pair."""
    sets = [tuple(dict.fromkeys(members)) for members in family]
    for i, a in enumerate(sets):
        set_a = set(a)
        for b in sets[i + 1 :]:
            set_b = set(b)
            if set_a <= set_b or set_b <= set_a or not (set_a & set_b):
                continue
            return False, (a, b)
    return True, None


def _assemble(
    leaf_order: Sequence[str],
    groups: Sequence[tuple[tuple[str, ...], Weight, tuple[int, ...]]],
) -> Dendrogram:
    """Freeze leaf singletons plus prepared groups into a Dendrogram."""
    records: list[dict] = [
        {"members": (name,), "diam": BOTTOM, "father": None, "children": ()}
        for name in leaf_order
    ]
    for members, diam, children in groups:
        index = len(records)
        for child in children:
            records[child]["father"] = index
        records.append(
            {"members": members, "diam": diam, "father": None, "children": children}
        )
    clusters = tuple(
        Cluster(index=i, members=r["members"], diam=r["diam"], father=r["father"], children=r["children"])
        for i, r in enumerate(records)
    )
    by_members = {frozenset(c.members): c.index for c in clusters}
    return Dendrogram(clusters=clusters, _by_members=by_members)


def build_dendrogram(
    leaves: Sequence[str],
    groups: Iterable[tuple[Iterable[str], Weight]],
) -> Dendrogram:
    """Build from explicit (members, diam) groups; singletons are implicit.

    Validates the nesting (every pair nested or disjoint), membership, and
    that diameters strictly increase from child to father.
    """
    leaf_order = list(dict.fromkeys(leaves))
    if len(leaf_order) != len(list(leaves)):
        raise ConstructionError("duplicate leaf name")
    known = set(leaf_order)
    normalized: list[tuple[tuple[str, ...], Weight]] = []
    seen: set[frozenset] = set()
    for members, diam in groups:
        ordered = tuple(name for name in leaf_order if name in set(members))
        for name in members:
            if name not in known:
                raise ConstructionError(f"group member {name!r} is not a leaf")
        if len(ordered) < 2:
            raise ConstructionError(f"group {ordered} needs at least two leaves")
        key = frozenset(ordered)
        if key in seen:
            raise ConstructionError(f"duplicate group {ordered}")
        seen.add(key)
        if diam == BOTTOM:
            raise ConstructionError(f"group {ordered} needs a diameter above bottom")
        normalized.append((ordered, diam))
    ok, culprit = is_dendrogram([members for members, _ in normalized])
    if not ok:
        assert culprit is not None
        raise ConstructionError(f"sets {culprit[0]} and {culprit[1]} overlap without nesting")
    leaf_index = {name: i for i, name in enumerate(leaf_order)}
    normalized.sort(key=lambda item: (len(item[0]), leaf_index[item[0][0]]))

    prepared: list[tuple[tuple[str, ...], Weight, tuple[int, ...]]] = []
    owner = {name: i for i, name in enumerate(leaf_order)}  # smallest cluster so far
    diam_of: dict[int, Weight] = {i: BOTTOM for i in range(len(leaf_order))}
    for members, diam in normalized:
        children = tuple(sorted({owner[name] for name in members}))
        index = len(leaf_order) + len(prepared)
        for child in children:
            if diam_of[child] >= diam:
                raise ConstructionError(
                    f"diameter must increase strictly: {members} has {diam}, "
                    f"contained cluster has {diam_of[child]}"
                )
        prepared.append((members, diam, children))
        diam_of[index] = diam
        for name in members:
            owner[name] = index
    return _assemble(leaf_order, prepared)


def build_lake_dendrogram(graph: Graph) -> Dendrogram:
    """Single-linkage merge tree of the graph under its edge weights.

    All merges at one weight level collapse into a single cluster, so each
    cluster is a distinct closed ball with diam = its merge level.  On a
    disconnected graph the result is a forest with one summit per component.
    """
    weights = graph.require_edge_weights("build_lake_dendrogram")
    leaf_order = list(graph.nodes)
    parent: dict[str, str] = {node: node for node in leaf_order}

    def find(node: str) -> str:
        root = node
        while parent[root] != root:
            root = parent[root]
        while parent[node] != root:
            parent[node], node = root, parent[node]
        return root

    current: dict[str, int] = {node: i for i, node in enumerate(leaf_order)}
    prepared: list[tuple[tuple[str, ...], Weight, tuple[int, ...]]] = []
    member_sets: dict[int, set[str]] = {i: {n} for i, n in enumerate(leaf_order)}
    by_weight = sorted(range(len(graph.edges)), key=lambda eid: (weights[eid], eid))
    for level, ids in groupby(by_weight, key=lambda eid: weights[eid]):
        pending: dict[str, list[int]] = {}
        for edge_id in ids:
            u, v = graph.edges[edge_id]
            root_u, root_v = find(u), find(v)
            if root_u == root_v:
                continue
            parts = pending.pop(root_u, None) or [current[root_u]]
            parts += pending.pop(root_v, None) or [current[root_v]]
            parent[root_v] = root_u
            pending[root_u] = parts
        for root, parts in pending.items():
            children = tuple(sorted(set(parts)))
            merged: set[str] = set()
            for child in children:
                merged |= member_sets[child]
            members = tuple(node for node in leaf_order if node in merged)
            index = len(leaf_order) + len(prepared)
            prepared.append((members, level, children))
            member_sets[index] = merged
            current[root] = index
    return _assemble(leaf_order, prepared)


_RELATIONS = (
    "summits",
    "leaves",
    "pred",
    "impred",
    "succ",
    "imsucc",
    "brothers",
    "uncles",
)


def query(dendro: Dendrogram, relation: str, target=None) -> tuple[Cluster, ...]:
    """Evaluate one of the eight structural relations.

    pred/succ are all strict supersets/subsets; impred is the father,
    imsucc the children; brothers share the father; uncles are clusters
    whose father is a strict predecessor of the target other than the
    target's own father, and which are not predecessors themselves.
    """
    if relation not in _RELATIONS:
        raise PreconditionError(f"unknown relation: {relation!r}")
    if relation == "summits":
        return dendro.summits
    if relation == "leaves":
        return tuple(c for c in dendro.clusters if c.is_leaf)
    if target is None:
        raise PreconditionError(f"relation {relation!r} needs a target cluster")
    cluster = dendro.resolve(target)

    def chain_up(start: Cluster) -> list[Cluster]:
        out = []
        probe = start
        while probe.father is not None:
            probe = dendro.clusters[probe.father]
            out.append(probe)
        return out

    if relation == "pred":
        return tuple(chain_up(cluster))
    if relation == "impred":
        return () if cluster.father is None else (dendro.clusters[cluster.father],)
    if relation == "succ":
        inside = set(cluster.members)
        return tuple(
            c for c in dendro.clusters if c.index != cluster.index and set(c.members) < inside
        )
    if relation == "imsucc":
        return tuple(dendro.clusters[i] for i in cluster.children)
    if relation == "brothers":
        if cluster.father is None:
            return ()
        return tuple(
            dendro.clusters[i]
            for i in dendro.clusters[cluster.father].children
            if i != cluster.index
        )
    ancestors = {c.index for c in chain_up(cluster)}
    return tuple(
        c
        for c in dendro.clusters
        if c.father is not None
        and c.father in ancestors
        and c.father != cluster.father
        and c.index not in ancestors
        and c.index != cluster.index
    )


def dendrogram_flood(dendro: Dendrogram, omega_leaf: Mapping[str, Weight]) -> NodeFunction:
    """Dominated flooding evaluated on the tree alone.

    Work-list of (cluster, cap) pairs: a cluster floods to
    cap ^ (omega(cluster) v diam(cluster)) where omega(cluster) is the
    lowest ceiling among its leaves; children inherit that level as their
    cap.  Equals the graph solvers on any graph realizing the dendrogram.
    """
    leaf_names = dendro.leaf_names
    for name in leaf_names:
        if name not in omega_leaf:
            raise PreconditionError(f"omega is missing leaf {name!r}")
    lowest: list[Weight] = []
    for cluster in dendro.clusters:
        if cluster.is_leaf:
            lowest.append(omega_leaf[cluster.members[0]])
        else:
            lowest.append(min(lowest[i] for i in cluster.children))
    tau: NodeFunction = {}
    work: list[tuple[int, Weight]] = [(s.index, TOP) for s in reversed(dendro.summits)]
    while work:
        index, cap = work.pop()
        cluster = dendro.clusters[index]
        level = meet(cap, join(lowest[index], cluster.diam))
        if cluster.is_leaf:
            tau[cluster.members[0]] = level
        else:
            for child in reversed(cluster.children):
                work.append((child, level))
    return {name: tau[name] for name in leaf_names}


class GrowthKind(enum.Enum):
    REGIONAL_MINIMUM = "regmin"
    LAKE_ZONE = "lakezone"


@dataclass(frozen=True)
class GrowthStage:
    nodes: tuple[str, ...]
    kind: GrowthKind
    low: Weight
    high: Weight


def lake_growth_sequence(graph: Graph, node: str) -> tuple[GrowthStage, ...]:
    """How the lake around a node grows as the water level rises.

    Alternates regional-minimum stages (the set is a lake for every level
    strictly inside (low, high)) with lake-zone stages (at level == high
    the lake jumps to the closed ball at that radius), until the node's
    whole component is covered or nothing more can be reached.
    """
    graph.require_edge_weights("lake_growth_sequence")
    component = set(ball(graph, node, TOP))
    stages: list[GrowthStage] = []
    region = ball(graph, node, BOTTOM)
    floor: Weight = BOTTOM
    while True:
        if set(region) == component:
            if not stages:
                stages.append(GrowthStage(region, GrowthKind.REGIONAL_MINIMUM, floor, TOP))
            break
        _, spill = lowest_cocycle_edge(graph, region)
        stages.append(GrowthStage(region, GrowthKind.REGIONAL_MINIMUM, floor, spill))
        if spill == TOP:
            break
        region = ball(graph, node, spill)
        stages.append(GrowthStage(region, GrowthKind.LAKE_ZONE, spill, spill))
        floor = spill
    return tuple(stages)
