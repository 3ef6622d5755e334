"""Immutable simple graphs and the structural operations everything else
builds on: induced subgraphs, vertex deletion, contraction, edge addition,
neighborhoods, connectivity, and the edge-list text format used by the CLI.

Graphs are values: every operation returns a new graph, vertex iteration is
always in ascending id order, and ids are preserved by every operation
(contraction reuses the minimum id of the collapsed set).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import GraphFormatError

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalized undirected edge: smaller endpoint first, no self-loops."""
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, init=False)
class Graph:
    """Simple undirected graph over nonnegative integer vertex ids."""

    vertices: tuple[int, ...]
    edges: frozenset[Edge]

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Iterable[int]] = ()) -> None:
        vs = sorted({int(v) for v in vertices})
        if vs and vs[0] < 0:
            raise ValueError("vertex ids must be nonnegative")
        declared = set(vs)
        es: set[Edge] = set()
        for u, v in edges:
            e = edge(int(u), int(v))
            if e[0] not in declared or e[1] not in declared:
                raise ValueError(f"edge {e} uses an undeclared vertex")
            es.add(e)
        object.__setattr__(self, "vertices", tuple(vs))
        object.__setattr__(self, "edges", frozenset(es))

    @property
    def order(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        nbr: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbr[u].append(v)
            nbr[v].append(u)
        return {v: tuple(sorted(ws)) for v, ws in nbr.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(vertices={list(self.vertices)}, edges={self.sorted_edges()})"


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format.

    Lines starting with ``#`` are comments.  The first non-comment line must
    be ``vertices <n>``, declaring ids 0..n-1 (isolated vertices included);
    every following line is one edge ``<u> <v>``.
    """
    count: int | None = None
    seen: set[Edge] = set()
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if count is None:
            if len(parts) != 2 or parts[0] != "vertices":
                raise GraphFormatError(f"line {lineno}: expected 'vertices <n>', got {line!r}")
            try:
                count = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: vertex count is not an integer") from None
            if count < 0:
                raise GraphFormatError(f"line {lineno}: vertex count must be nonnegative")
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected '<u> <v>', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: endpoints must be integers") from None
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < count and 0 <= v < count):
            raise GraphFormatError(f"line {lineno}: endpoint outside 0..{count - 1}")
        e = edge(u, v)
        if e in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {e[0]} {e[1]}")
        seen.add(e)
        edges.append(e)
    if count is None:
        raise GraphFormatError("missing 'vertices <n>' declaration")
    return Graph(range(count), edges)


def render_edge_list(graph: Graph, comments: Iterable[str] = ()) -> str:
    """Inverse of parse_edge_list; edges are emitted sorted.

    The format can only express graphs with dense ids 0..n-1.
    """
    if graph.vertices != tuple(range(graph.order)):
        raise ValueError("edge-list format requires dense vertex ids 0..n-1")
    lines = [f"# {c}".rstrip() for c in comments]
    lines.append(f"vertices {graph.order}")
    lines.extend(f"{u} {v}" for u, v in graph.sorted_edges())
    return "\n".join(lines) + "\n"


def induced_subgraph(graph: Graph, kept: Iterable[int]) -> Graph:
    ks = frozenset(kept)
    if not ks <= graph.vertex_set:
        raise ValueError("subgraph vertices must come from the host graph")
    return Graph(ks, (e for e in graph.edges if e[0] in ks and e[1] in ks))


def delete_vertices(graph: Graph, removed: Iterable[int]) -> Graph:
    return induced_subgraph(graph, graph.vertex_set - frozenset(removed))


@dataclass(frozen=True)
class ContractionResult:
    """A graph with one vertex set collapsed, plus where each new id came from.

    origin_map partitions the old vertex set; merged_vertex maps to exactly
    the collapsed set, every other id to itself.
    """

    graph: Graph
    merged_vertex: int
    origin_map: dict[int, frozenset[int]]


def contract(graph: Graph, merged: Iterable[int]) -> ContractionResult:
    """Collapse ``merged`` to a single vertex (its minimum id).

    Loops are discarded and parallel edges coincide, so the result is simple.
    Vertices outside the collapsed set keep their ids.
    """
    ms = frozenset(merged)
    if not ms:
        raise ValueError("cannot contract an empty vertex set")
    if not ms <= graph.vertex_set:
        raise ValueError("contraction vertices must come from the host graph")
    target = min(ms)

    def image(v: int) -> int:
        return target if v in ms else v

    vertices = {image(v) for v in graph.vertices}
    edges = {edge(image(u), image(v)) for u, v in graph.edges if image(u) != image(v)}
    origin = {v: frozenset((v,)) for v in vertices}
    origin[target] = ms
    return ContractionResult(Graph(vertices, edges), target, origin)


def add_edges(graph: Graph, pairs: Iterable[Iterable[int]]) -> Graph:
    """Add absent edges between existing vertices."""
    edges = set(graph.edges)
    for u, v in pairs:
        e = edge(int(u), int(v))
        if e[0] not in graph.vertex_set or e[1] not in graph.vertex_set:
            raise ValueError(f"edge {e} uses an unknown vertex")
        if e in edges:
            raise ValueError(f"edge {e} is already present")
        edges.add(e)
    return Graph(graph.vertices, edges)


def neighbors(graph: Graph, around: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``around`` adjacent to some vertex inside it."""
    xs = frozenset(around)
    if not xs <= graph.vertex_set:
        raise ValueError("neighborhood query outside the host graph")
    adj = graph.adjacency
    return frozenset(w for x in xs for w in adj[x] if w not in xs)


def connected_components(graph: Graph) -> tuple[tuple[int, ...], ...]:
    """Connectivity classes, each ascending, ordered by minimum id."""
    seen: set[int] = set()
    out: list[tuple[int, ...]] = []
    adj = graph.adjacency
    for start in graph.vertices:
        if start in seen:
            continue
        seen.add(start)
        stack = [start]
        comp: list[int] = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return tuple(out)


def complement_pairs(graph: Graph) -> list[Edge]:
    """All unordered distinct vertex pairs that are not edges, sorted."""
    vs = graph.vertices
    return [
        (vs[i], vs[j])
        for i in range(len(vs))
        for j in range(i + 1, len(vs))
        if (vs[i], vs[j]) not in graph.edges
    ]
