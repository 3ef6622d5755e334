"""The exposable / neighbor / inner three-way vertex partition.

The exposable part holds every vertex some maximum matching leaves uncovered,
computed directly from matching numbers of single-vertex deletions; the path
characterizations of the same partition live in the verifier as conformance
checks, not here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, delete_vertices, neighbors
from .matching import matching_number


@dataclass(frozen=True)
class GEPartition:
    """The (D, A, C) partition: exposable vertices, their outside neighbors,
    and everything else."""

    d: frozenset[int]
    a: frozenset[int]
    c: frozenset[int]

    def parts(self) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        return self.d, self.a, self.c


def gallai_edmonds(graph: Graph) -> GEPartition:
    nu = matching_number(graph)
    d = frozenset(
        v for v in graph.vertices if matching_number(delete_vertices(graph, (v,))) == nu
    )
    a = neighbors(graph, d)
    c = graph.vertex_set - d - a
    # d, a, c are disjoint by construction; the sum check pins the partition
    assert len(d) + len(a) + len(c) == graph.order
    return GEPartition(d, a, c)
