"""Shared fixtures: worked examples, seeded instance pools, acceptance log."""

from __future__ import annotations

import random
from types import SimpleNamespace

import pytest
from hypothesis import settings

from floodgraph import TOP, build_dendrogram, build_graph, derive_edge_graph, grid_graph

from strategies import (
    ceiling_above,
    connected_edge_graph,
    connected_node_graph,
    marker_instance,
    random_ceiling,
)

settings.register_profile("floodgraph", deadline=None, max_examples=60)
settings.load_profile("floodgraph")


# ---------------------------------------------------------------------------
# Worked examples used throughout the suite.
# ---------------------------------------------------------------------------

CHAIN_NODES = ("a", "b", "c", "d", "e")
CHAIN_EDGES = (("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"))
CHAIN_GROUND = {"a": 0, "b": 4, "c": 1, "d": 2, "e": 0}
CHAIN_OMEGA = {"a": 0, "b": 5, "c": 3, "d": 3, "e": 1}
CHAIN_TAU = {"a": 0, "b": 4, "c": 2, "d": 2, "e": 1}


@pytest.fixture
def chain():
    """Five-node path with one valley at each end and a saddle in between."""
    graph = build_graph(CHAIN_NODES, CHAIN_EDGES, ground=CHAIN_GROUND)
    return SimpleNamespace(
        graph=graph,
        edge_graph=derive_edge_graph(graph),
        omega=dict(CHAIN_OMEGA),
        tau=dict(CHAIN_TAU),
    )


@pytest.fixture
def tank():
    """Six tanks on a line, joined by pipes at the edge altitudes."""
    graph = build_graph(
        ("A", "B", "C", "D", "E", "F"),
        (("A", "B"), ("B", "C"), ("C", "D"), ("D", "E"), ("E", "F")),
        edge_weights=(1, 5, 3, 2, 6),
    )
    tau = {"A": 2, "B": 2, "C": 1, "D": 3, "E": 3, "F": 3}
    return SimpleNamespace(graph=graph, tau=tau)


DENDRO_LEAVES = tuple("abcdefghijk")
DENDRO_GROUPS = (
    (("b", "c", "d", "e"), 4),
    (("b", "c", "d", "e", "f"), 7),
    (("a", "b", "c", "d", "e", "f"), 9),
    (("g", "h"), 1),
    (("g", "h", "i"), 6),
    (("j", "k"), 3),
    (("g", "h", "i", "j", "k"), 8),
    (DENDRO_LEAVES, 10),
)


@pytest.fixture
def dendro_fixture():
    """Eleven-leaf dendrogram with two ceilinged leaves and known flooding."""
    dendro = build_dendrogram(DENDRO_LEAVES, DENDRO_GROUPS)
    omega = {name: TOP for name in DENDRO_LEAVES}
    omega["c"] = 6
    omega["h"] = 1
    tau = {
        "a": 9,
        "b": 6,
        "c": 6,
        "d": 6,
        "e": 6,
        "f": 7,
        "g": 1,
        "h": 1,
        "i": 6,
        "j": 8,
        "k": 8,
    }
    # An edge-weighted tree whose single-linkage merge tree is exactly this
    # dendrogram (every cluster diameter realized by one tree edge).
    tree = build_graph(
        DENDRO_LEAVES,
        (
            ("b", "c"),
            ("c", "d"),
            ("d", "e"),
            ("e", "f"),
            ("a", "b"),
            ("g", "h"),
            ("h", "i"),
            ("j", "k"),
            ("i", "j"),
            ("f", "g"),
        ),
        edge_weights=(4, 4, 4, 7, 9, 1, 6, 3, 8, 10),
    )
    return SimpleNamespace(
        dendro=dendro,
        leaves=DENDRO_LEAVES,
        groups=DENDRO_GROUPS,
        omega=omega,
        tau=tau,
        tree=tree,
    )


@pytest.fixture
def strip():
    """1x6 raster whose flat-zone contraction is exactly the chain fixture."""
    raster = ((0, 0, 4, 1, 2, 0),)
    graph = grid_graph(raster)
    names = graph.nodes
    omega = dict(zip(names, (0, TOP, 5, 3, 3, 1)))
    tau = dict(zip(names, (0, 0, 4, 2, 2, 1)))
    return SimpleNamespace(raster=raster, graph=graph, omega=omega, tau=tau)


# ---------------------------------------------------------------------------
# Seeded instance pools for the acceptance suite (built once per session).
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def edge_instances():
    """1000 connected edge-weighted graphs with half-finite ceilings."""
    rng = random.Random(20260825)
    pool = []
    for _ in range(1000):
        graph = connected_edge_graph(rng, max_nodes=12, max_weight=15)
        pool.append((graph, random_ceiling(rng, graph, max_weight=15, finite_chance=0.5)))
    return pool


@pytest.fixture(scope="session")
def metric_instances():
    """1000 connected edge-weighted graphs (n <= 10) with ceilings."""
    rng = random.Random(471103)
    pool = []
    for _ in range(1000):
        graph = connected_edge_graph(rng, max_nodes=10, max_weight=15)
        pool.append((graph, random_ceiling(rng, graph, max_weight=15, finite_chance=0.5)))
    return pool


@pytest.fixture(scope="session")
def node_instances():
    """1000 connected node-weighted graphs with ceilings above the ground."""
    rng = random.Random(90125)
    pool = []
    for _ in range(1000):
        graph = connected_node_graph(rng, max_nodes=12, max_ground=6)
        pool.append((graph, ceiling_above(rng, graph, slack=6, top_chance=0.4)))
    return pool


@pytest.fixture(scope="session")
def plateau_instances():
    """500 node-weighted graphs with a tiny ground range, forcing plateaus."""
    rng = random.Random(68000)
    pool = []
    for _ in range(500):
        graph = connected_node_graph(rng, max_nodes=12, max_ground=3)
        pool.append((graph, ceiling_above(rng, graph, slack=5, top_chance=0.3)))
    return pool


@pytest.fixture(scope="session")
def marker_instances():
    """200 connected edge-weighted graphs with 2-4 labeled markers."""
    rng = random.Random(777)
    return [marker_instance(rng, max_nodes=12, max_weight=15) for _ in range(200)]


# ---------------------------------------------------------------------------
# Acceptance reporting: one PASS/FAIL line per criterion in the summary.
# ---------------------------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def acceptance():
    def record(number: int, description: str, ok: bool) -> None:
        _ACCEPTANCE[number] = (description, bool(ok))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        description, ok = _ACCEPTANCE[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {verdict} - {description}")
