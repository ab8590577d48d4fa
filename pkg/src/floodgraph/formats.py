"""Text and image formats.

The native graph format is line-oriented::

    floodgraph v1
    # comment
    node a f=0 omega=5
    node b f=4
    edge a b w=4

``f`` values (the ground) must be given for every node or for none.  The
same goes for edge ``w`` weights.  ``omega`` (the flooding ceiling) may be
partial; nodes without one default to the top value.  Weights are
non-negative integers or the tokens ``inf`` / ``-inf``.

Node values (flooding results, markers) use one ``<node> <value>`` pair per
line.  Rasters use PGM, plain (P2) or binary (P5) with 16-bit big-endian
samples when maxval exceeds 255.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import GraphFormatError
from .graphs import Graph, NodeFunction, build_graph
from .weights import TOP, Weight, format_weight, parse_weight

HEADER = "floodgraph v1"


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    if cut >= 0:
        line = line[:cut]
    return line.strip()


def _check_node_id(token: str, lineno: int) -> str:
    if "=" in token:
        raise GraphFormatError(f"line {lineno}: node id may not contain '=': {token!r}")
    return token


def _parse_attrs(tokens: list[str], allowed: tuple[str, ...], lineno: int) -> dict[str, Weight]:
    attrs: dict[str, Weight] = {}
    for token in tokens:
        key, sep, raw = token.partition("=")
        if not sep or key not in allowed:
            raise GraphFormatError(
                f"line {lineno}: expected one of {', '.join(k + '=<w>' for k in allowed)}, got {token!r}"
            )
        if key in attrs:
            raise GraphFormatError(f"line {lineno}: duplicate attribute {key!r}")
        try:
            attrs[key] = parse_weight(raw)
        except GraphFormatError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    return attrs


def parse_graph(text: str) -> tuple[Graph, NodeFunction | None]:
    """Parse the native format; returns the graph and the ceiling (or None)."""
    lines = text.splitlines()
    body_start = 0
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if line != HEADER:
            raise GraphFormatError(f"line {lineno}: expected header {HEADER!r}")
        header_seen = True
        body_start = lineno
        break
    if not header_seen:
        raise GraphFormatError(f"missing header {HEADER!r}")

    nodes: list[str] = []
    ground: dict[str, Weight] = {}
    omega: dict[str, Weight] = {}
    edges: list[tuple[str, str]] = []
    edge_weights: dict[int, Weight] = {}
    seen_nodes: set[str] = set()

    for lineno, raw in enumerate(lines[body_start:], start=body_start + 1):
        line = _strip_comment(raw)
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "node":
            if len(tokens) < 2:
                raise GraphFormatError(f"line {lineno}: node line needs an id")
            node = _check_node_id(tokens[1], lineno)
            if node in seen_nodes:
                raise GraphFormatError(f"line {lineno}: duplicate node {node!r}")
            seen_nodes.add(node)
            nodes.append(node)
            attrs = _parse_attrs(tokens[2:], ("f", "omega"), lineno)
            if "f" in attrs:
                ground[node] = attrs["f"]
            if "omega" in attrs:
                omega[node] = attrs["omega"]
        elif kind == "edge":
            if len(tokens) < 3:
                raise GraphFormatError(f"line {lineno}: edge line needs two node ids")
            u = _check_node_id(tokens[1], lineno)
            v = _check_node_id(tokens[2], lineno)
            for endpoint in (u, v):
                if endpoint not in seen_nodes:
                    raise GraphFormatError(f"line {lineno}: unknown node {endpoint!r}")
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop on {u!r}")
            attrs = _parse_attrs(tokens[3:], ("w",), lineno)
            if "w" in attrs:
                edge_weights[len(edges)] = attrs["w"]
            edges.append((u, v))
        else:
            raise GraphFormatError(f"line {lineno}: expected 'node' or 'edge', got {kind!r}")

    if not nodes:
        raise GraphFormatError("graph has no nodes")
    if ground and len(ground) != len(nodes):
        missing = next(node for node in nodes if node not in ground)
        raise GraphFormatError(f"ground must cover every node or none; {missing!r} has no f")
    if edge_weights and len(edge_weights) != len(edges):
        missing_id = next(i for i in range(len(edges)) if i not in edge_weights)
        u, v = edges[missing_id]
        raise GraphFormatError(f"edge weights must cover every edge or none; {u} {v} has no w")

    graph = build_graph(
        nodes,
        edges,
        ground=ground if ground else None,
        edge_weights=[edge_weights[i] for i in range(len(edges))] if edge_weights else None,
    )
    ceiling: NodeFunction | None = None
    if omega:
        ceiling = {node: omega.get(node, TOP) for node in nodes}
    return graph, ceiling


def serialize_graph(graph: Graph, omega: Mapping[str, Weight] | None = None) -> str:
    lines = [HEADER]
    for node in graph.nodes:
        parts = ["node", node]
        if graph.ground is not None:
            parts.append(f"f={format_weight(graph.ground[node])}")
        if omega is not None and node in omega and omega[node] != TOP:
            parts.append(f"omega={format_weight(omega[node])}")
        lines.append(" ".join(parts))
    for edge_id, (u, v) in enumerate(graph.edges):
        parts = ["edge", u, v]
        if graph.edge_weights is not None:
            parts.append(f"w={format_weight(graph.edge_weights[edge_id])}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_node_values(text: str) -> NodeFunction:
    """Parse ``<node> <value>`` lines (markers, floodings, ceilings)."""
    values: NodeFunction = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected '<node> <value>', got {line!r}")
        node, raw_value = tokens
        if node in values:
            raise GraphFormatError(f"line {lineno}: duplicate node {node!r}")
        try:
            values[node] = parse_weight(raw_value)
        except GraphFormatError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    return values


def serialize_node_values(values: Mapping[str, Weight], order: Iterable[str] | None = None) -> str:
    nodes = list(order) if order is not None else list(values)
    lines = [f"{node} {format_weight(values[node])}" for node in nodes if node in values]
    return "\n".join(lines) + "\n" if lines else ""


class _PgmScanner:
    """Token reader for PGM headers (handles # comments, any whitespace)."""

    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 0

    def next_token(self) -> bytes:
        data, pos = self.data, self.pos
        while pos < len(data):
            byte = data[pos : pos + 1]
            if byte == b"#":
                while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                    pos += 1
            elif byte.isspace():
                pos += 1
            else:
                break
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise GraphFormatError("truncated PGM header")
        self.pos = pos
        return data[start:pos]

    def next_int(self, what: str) -> int:
        token = self.next_token()
        try:
            return int(token)
        except ValueError:
            raise GraphFormatError(f"bad PGM {what}: {token!r}") from None


def read_pgm(data: bytes) -> list[list[int]]:
    """Decode P2 or P5 into rows of pixel values."""
    scanner = _PgmScanner(data)
    magic = scanner.next_token()
    if magic not in (b"P2", b"P5"):
        raise GraphFormatError(f"not a PGM image (magic {magic!r})")
    width = scanner.next_int("width")
    height = scanner.next_int("height")
    maxval = scanner.next_int("maxval")
    if width <= 0 or height <= 0:
        raise GraphFormatError(f"bad PGM size {width}x{height}")
    if not 0 < maxval <= 65535:
        raise GraphFormatError(f"PGM maxval out of range: {maxval}")

    pixels: list[int] = []
    if magic == b"P2":
        for _ in range(width * height):
            try:
                pixels.append(scanner.next_int("pixel"))
            except GraphFormatError as exc:
                if "truncated" in str(exc):
                    raise GraphFormatError("truncated PGM pixel data") from None
                raise
    else:
        sample = 2 if maxval > 255 else 1
        start = scanner.pos + 1  # single whitespace byte after maxval
        end = start + width * height * sample
        raw = data[start:end]
        if len(raw) != width * height * sample:
            raise GraphFormatError("truncated PGM pixel data")
        if sample == 1:
            pixels = list(raw)
        else:
            pixels = [
                (raw[i] << 8) | raw[i + 1] for i in range(0, len(raw), 2)
            ]
    for value in pixels:
        if not 0 <= value <= maxval:
            raise GraphFormatError(f"PGM pixel {value} exceeds maxval {maxval}")
    return [pixels[row * width : (row + 1) * width] for row in range(height)]


def write_pgm(raster: list[list[int]], plain: bool = False) -> bytes:
    """Encode rows of pixel values as P5 (or P2 when ``plain``)."""
    if not raster or not raster[0]:
        raise GraphFormatError("raster must be non-empty")
    width = len(raster[0])
    if any(len(row) != width for row in raster):
        raise GraphFormatError("raster rows must all have the same width")
    flat = [value for row in raster for value in row]
    for value in flat:
        if not isinstance(value, int) or not 0 <= value <= 65535:
            raise GraphFormatError(f"pixel value out of PGM range: {value!r}")
    maxval = max(max(flat), 1)
    header = f"{'P2' if plain else 'P5'}\n{width} {len(raster)}\n{maxval}\n"
    if plain:
        body = "\n".join(" ".join(str(v) for v in row) for row in raster) + "\n"
        return header.encode("ascii") + body.encode("ascii")
    if maxval > 255:
        payload = b"".join(value.to_bytes(2, "big") for value in flat)
    else:
        payload = bytes(flat)
    return header.encode("ascii") + payload
