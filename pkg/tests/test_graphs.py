"""Graph construction, raster grids, and structural queries."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from floodgraph import (
    ConstructionError,
    Graph,
    PreconditionError,
    build_graph,
    check_total,
    cocycle,
    connected_components,
    grid_graph,
    grid_node,
    partial_graph,
    subgraph_spanning,
)

from strategies import edge_graphs


def edge_set(graph, ids):
    return [graph.edges[i] for i in ids]


# -- construction ------------------------------------------------------------


def test_build_graph_keeps_declaration_order(chain):
    graph = chain.graph
    assert graph.nodes == ("a", "b", "c", "d", "e")
    assert graph.edges == (("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"))
    assert graph.node_index("c") == 2
    assert "c" in graph and "z" not in graph


def test_neighbors_follow_edge_declaration_order(chain):
    assert chain.graph.neighbors("c") == (("b", 1), ("d", 2))
    assert chain.graph.neighbors("a") == (("b", 0),)


def test_direct_dataclass_instantiation_is_blocked():
    with pytest.raises(ConstructionError):
        Graph(nodes=("a",), edges=(), ground=None, edge_weights=None)


def test_duplicate_node_rejected():
    with pytest.raises(ConstructionError):
        build_graph(["a", "a"], [])


def test_unknown_edge_endpoint_rejected():
    with pytest.raises(ConstructionError):
        build_graph(["a", "b"], [("a", "z")])


def test_self_loop_rejected():
    with pytest.raises(ConstructionError):
        build_graph(["a"], [("a", "a")])


def test_partial_ground_rejected():
    with pytest.raises(ConstructionError):
        build_graph(["a", "b"], [("a", "b")], ground={"a": 0})
    with pytest.raises(ConstructionError):
        build_graph(["a"], [], ground={"a": 0, "b": 1})


def test_edge_weight_count_must_match():
    with pytest.raises(ConstructionError):
        build_graph(["a", "b"], [("a", "b")], edge_weights=[1, 2])


def test_missing_annotation_accessors_raise(chain, tank):
    with pytest.raises(PreconditionError):
        chain.graph.require_edge_weights("op")
    with pytest.raises(PreconditionError):
        tank.graph.require_ground("op")
    assert chain.edge_graph.require_edge_weights("op") == (4, 4, 2, 2)
    assert chain.graph.require_ground("op") == chain.graph.ground


# -- grids -------------------------------------------------------------------


def test_grid_graph_row_major_ids_and_ground():
    graph = grid_graph([[0, 4, 1, 2, 0]])
    assert graph.nodes == ("0,0", "0,1", "0,2", "0,3", "0,4")
    assert [graph.ground[n] for n in graph.nodes] == [0, 4, 1, 2, 0]
    assert graph.edges == tuple(
        (grid_node(0, c), grid_node(0, c + 1)) for c in range(4)
    )


def test_grid_graph_connectivity_4():
    graph = grid_graph([[1, 2], [3, 4]], connectivity=4)
    assert graph.edges == (
        ("0,0", "0,1"),
        ("0,0", "1,0"),
        ("0,1", "1,1"),
        ("1,0", "1,1"),
    )


def test_grid_graph_connectivity_8_adds_diagonals_in_scan_order():
    graph = grid_graph([[1, 2], [3, 4]], connectivity=8)
    assert graph.edges == (
        ("0,0", "0,1"),
        ("0,0", "1,0"),
        ("0,0", "1,1"),
        ("0,1", "1,0"),
        ("0,1", "1,1"),
        ("1,0", "1,1"),
    )


def test_grid_graph_rejects_bad_input():
    with pytest.raises(ConstructionError):
        grid_graph([[1, 2]], connectivity=6)
    with pytest.raises(ConstructionError):
        grid_graph([])
    with pytest.raises(ConstructionError):
        grid_graph([[1, 2], [3]])


# -- structural queries ------------------------------------------------------


def test_cocycle_on_the_chain(chain):
    graph = chain.graph
    assert edge_set(graph, cocycle(graph, {"a", "b"})) == [("b", "c")]
    assert cocycle(graph, set(graph.nodes)) == ()
    assert edge_set(graph, cocycle(graph, {"c"})) == [("b", "c"), ("c", "d")]


def test_cocycle_rejects_unknown_node(chain):
    with pytest.raises(ConstructionError):
        cocycle(chain.graph, {"z"})


def test_connected_components_filters(chain):
    graph = chain.edge_graph
    weights = graph.edge_weights
    assert connected_components(graph) == [("a", "b", "c", "d", "e")]
    assert connected_components(graph, lambda _: False) == [
        ("a",),
        ("b",),
        ("c",),
        ("d",),
        ("e",),
    ]
    assert connected_components(graph, lambda i: weights[i] <= 2) == [
        ("a",),
        ("b",),
        ("c", "d", "e"),
    ]


def test_subgraph_spanning(chain):
    sub = subgraph_spanning(chain.graph, ["c", "d", "e"])
    assert sub.nodes == ("c", "d", "e")
    assert sub.edges == (("c", "d"), ("d", "e"))
    assert sub.ground == {"c": 1, "d": 2, "e": 0}

    isolated = subgraph_spanning(chain.graph, ["a", "c"])
    assert isolated.nodes == ("a", "c")
    assert isolated.edges == ()


def test_partial_graph(chain):
    graph = chain.edge_graph
    empty = partial_graph(graph, [])
    assert empty.nodes == graph.nodes
    assert empty.edges == ()

    kept = partial_graph(graph, [2, 0])
    assert kept.edges == (("a", "b"), ("c", "d"))
    assert kept.edge_weights == (4, 2)
    with pytest.raises(ConstructionError):
        partial_graph(graph, [99])


def test_check_total(chain):
    check_total(chain.graph, chain.tau, "tau")
    with pytest.raises(PreconditionError):
        check_total(chain.graph, {"a": 0}, "tau")
    with pytest.raises(PreconditionError):
        check_total(chain.graph, {**chain.tau, "z": 1}, "tau")


# -- properties --------------------------------------------------------------


@given(edge_graphs())
def test_neighbors_are_symmetric_and_complete(graph):
    listed = set()
    for node in graph.nodes:
        for neighbor, edge_id in graph.neighbors(node):
            u, v = graph.edges[edge_id]
            assert {u, v} == {node, neighbor}
            listed.add(edge_id)
    assert listed == set(range(len(graph.edges)))


@given(edge_graphs())
def test_components_partition_the_nodes(graph):
    blocks = connected_components(graph)
    flat = [node for block in blocks for node in block]
    assert sorted(flat) == sorted(graph.nodes)
    assert len(set(flat)) == len(flat)


@given(edge_graphs())
def test_cocycle_complement_symmetry(graph):
    inside = set(graph.nodes[: len(graph.nodes) // 2])
    outside = set(graph.nodes) - inside
    assert cocycle(graph, inside) == cocycle(graph, outside)
