"""Shared fixture graphs and hypothesis strategies."""

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from cathedral.graph import Graph

E0 = Graph()
K1 = Graph([0])
K2 = Graph(range(2), [(0, 1)])
P4 = Graph(range(4), [(0, 1), (1, 2), (2, 3)])
C4 = Graph(range(4), [(0, 1), (1, 2), (2, 3), (0, 3)])
C5 = Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
K4 = Graph(range(4), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
T = Graph(range(4), [(0, 1), (0, 2), (1, 2), (2, 3)])


@st.composite
def graphs(draw, max_vertices: int = 8) -> Graph:
    n = draw(st.integers(min_value=0, max_value=max_vertices))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return Graph(range(n), chosen)


@st.composite
def factorizable_graphs(draw, max_vertices: int = 8) -> Graph:
    """A planted perfect matching plus arbitrary extra edges."""
    half = draw(st.integers(min_value=1, max_value=max_vertices // 2))
    n = 2 * half
    planted = {(2 * i, 2 * i + 1) for i in range(half)}
    pairs = [p for p in combinations(range(n), 2) if p not in planted]
    extra = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return Graph(range(n), planted | extra)
