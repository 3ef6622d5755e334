"""Maximum matchings, perfect-matching enumeration, and alternating-path
predicates.

The enumeration and the exhaustive path searches are the oracles the rest of
the package is checked against, so this module favors exact, deterministic
answers over speed: ties break by ascending vertex id everywhere, and the
path searches walk every simple alternating path (with an expansion budget
that aborts loudly instead of guessing).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

from .errors import SearchBudgetExceeded
from .graph import Edge, Graph, delete_vertices, edge

DEFAULT_SEARCH_BUDGET = 5_000_000
DEFAULT_ENUMERATION_CAP = 10_000


class PathKind(Enum):
    """Alternating-path flavors.

    A saturated path starts and ends with matched edges; an exposed path
    starts and ends with unmatched ones.  A balanced path is directed: it
    starts matched and ends unmatched, so its matched edges cover every
    vertex except the target, and the trivial one-vertex path counts.
    """

    SATURATED = "saturated"
    BALANCED = "balanced"
    EXPOSED = "exposed"


@dataclass(frozen=True, init=False)
class Matching:
    """A set of pairwise vertex-disjoint edges of a host graph."""

    graph: Graph
    edges: frozenset[Edge]

    def __init__(self, graph: Graph, edges: Iterable[Iterable[int]] = ()) -> None:
        es = {edge(int(u), int(v)) for u, v in edges}
        covered: set[int] = set()
        for u, v in es:
            if (u, v) not in graph.edges:
                raise ValueError(f"matching edge {(u, v)} is not an edge of the host graph")
            if u in covered or v in covered:
                raise ValueError(f"matching edges collide at {(u, v)}")
            covered.add(u)
            covered.add(v)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "edges", frozenset(es))

    @cached_property
    def partner(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for u, v in self.edges:
            out[u] = v
            out[v] = u
        return out

    @cached_property
    def exposed(self) -> frozenset[int]:
        return frozenset(v for v in self.graph.vertices if v not in self.partner)

    @property
    def is_perfect(self) -> bool:
        return not self.exposed

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def restrict_matching(matching: Matching, subgraph: Graph) -> Matching:
    """The matching's edges that survive inside an induced subgraph."""
    kept = subgraph.vertex_set
    return Matching(subgraph, (e for e in matching.edges if e[0] in kept and e[1] in kept))


def _blossom_matching(adj: list[list[int]], n: int) -> list[int]:
    # Augmenting-path search with blossom shrinking; deterministic because
    # roots and neighbors are always scanned in ascending order.
    mate = [-1] * n
    for v in range(n):
        if mate[v] == -1:
            for w in adj[v]:
                if mate[w] == -1:
                    mate[v] = w
                    mate[w] = v
                    break

    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, stem: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != stem:
            in_blossom[base[v]] = True
            in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def augment_from(root: int) -> None:
        nonlocal parent, base
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if base[v] == base[w] or mate[v] == w:
                    continue
                if w == root or (mate[w] != -1 and parent[mate[w]] != -1):
                    stem = lca(v, w)
                    in_blossom = [False] * n
                    mark_path(v, stem, w, in_blossom)
                    mark_path(w, stem, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = stem
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[w] == -1:
                    parent[w] = v
                    if mate[w] == -1:
                        while w != -1:
                            pv = parent[w]
                            nxt = mate[pv]
                            mate[w] = pv
                            mate[pv] = w
                            w = nxt
                        return
                    used[mate[w]] = True
                    queue.append(mate[w])

    for v in range(n):
        if mate[v] == -1:
            augment_from(v)
    return mate


def maximum_matching(graph: Graph) -> Matching:
    """A maximum-cardinality matching, deterministic for a fixed input."""
    vs = graph.vertices
    n = len(vs)
    index = {v: i for i, v in enumerate(vs)}
    adj = [[index[w] for w in graph.adjacency[v]] for v in vs]
    mate = _blossom_matching(adj, n)
    return Matching(graph, ((vs[i], vs[mate[i]]) for i in range(n) if mate[i] > i))


@lru_cache(maxsize=1 << 17)
def matching_number(graph: Graph) -> int:
    return len(maximum_matching(graph).edges)


def is_factorizable(graph: Graph) -> bool:
    """Whether the graph has a perfect matching; the empty graph qualifies."""
    return graph.order % 2 == 0 and 2 * matching_number(graph) == graph.order


def is_factor_critical(graph: Graph) -> bool:
    """Whether deleting any one vertex leaves a factorizable graph.

    One-vertex graphs qualify; the empty graph does not (it has no
    near-perfect matching for the definition to speak about).
    """
    if graph.order == 0 or graph.order % 2 == 0:
        return False
    return all(is_factorizable(delete_vertices(graph, (v,))) for v in graph.vertices)


@dataclass(frozen=True)
class PerfectMatchingEnumeration:
    """All perfect matchings in lexicographic order, with a truncation flag
    set when more than the requested cap exist."""

    matchings: tuple[Matching, ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.matchings)

    def __iter__(self) -> Iterator[Matching]:
        return iter(self.matchings)

    def edge_sets(self) -> set[frozenset[Edge]]:
        return {m.edges for m in self.matchings}


def enumerate_perfect_matchings(
    graph: Graph, cap: int = DEFAULT_ENUMERATION_CAP
) -> PerfectMatchingEnumeration:
    """Backtracking enumeration: repeatedly match the least uncovered vertex."""
    if cap < 1:
        raise ValueError("enumeration cap must be at least 1")
    if graph.order % 2 == 1:
        return PerfectMatchingEnumeration((), False)
    vs = graph.vertices
    adj = graph.adjacency
    covered: set[int] = set()
    current: list[Edge] = []
    found: list[tuple[Edge, ...]] = []
    truncated = False

    def extend() -> None:
        nonlocal truncated
        if truncated:
            return
        v = next((u for u in vs if u not in covered), None)
        if v is None:
            if len(found) == cap:
                truncated = True
            else:
                found.append(tuple(current))
            return
        covered.add(v)
        for w in adj[v]:
            if w in covered:
                continue
            covered.add(w)
            current.append(edge(v, w))
            extend()
            current.pop()
            covered.discard(w)
            if truncated:
                break
        covered.discard(v)

    extend()
    return PerfectMatchingEnumeration(tuple(Matching(graph, m) for m in found), truncated)


def _search_arrays(graph: Graph, matching: Matching) -> tuple[list[tuple[int, ...]], list[int], dict[int, int]]:
    if matching.graph != graph:
        raise ValueError("matching does not belong to this graph")
    vs = graph.vertices
    index = {v: i for i, v in enumerate(vs)}
    adj = [tuple(index[w] for w in graph.adjacency[v]) for v in vs]
    mate = [-1] * len(vs)
    for u, v in matching.edges:
        mate[index[u]] = index[v]
        mate[index[v]] = index[u]
    return adj, mate, index


def _budget_exhausted() -> SearchBudgetExceeded:
    return SearchBudgetExceeded("alternating-path search exceeded its expansion budget")


@dataclass(frozen=True)
class AlternatingReach:
    """All-pairs alternating reachability for one fixed matching.

    ``saturated[u]`` and ``exposed[u]`` hold the other endpoints of such
    paths (both symmetric); ``balanced[u]`` holds the directed targets and
    always contains ``u`` itself (the trivial path).
    """

    saturated: dict[int, frozenset[int]]
    balanced: dict[int, frozenset[int]]
    exposed: dict[int, frozenset[int]]


def alternating_reachability(
    graph: Graph, matching: Matching, *, budget: int = DEFAULT_SEARCH_BUDGET
) -> AlternatingReach:
    """Sweep every simple alternating path once per source vertex."""
    adj, mate, index = _search_arrays(graph, matching)
    vs = graph.vertices
    n = len(vs)
    sat: list[set[int]] = [set() for _ in range(n)]
    bal: list[set[int]] = [{i} for i in range(n)]
    exp: list[set[int]] = [set() for _ in range(n)]
    remaining = budget
    for s in range(n):
        for first_matched in (True, False):
            stack = [(s, first_matched, 1 << s, iter(adj[s]))]
            while stack:
                v, need, mask, it = stack[-1]
                for w in it:
                    if mask & (1 << w) or (mate[v] == w) != need:
                        continue
                    remaining -= 1
                    if remaining < 0:
                        raise _budget_exhausted()
                    if first_matched:
                        (sat if need else bal)[s].add(w)
                    elif not need:
                        exp[s].add(w)
                    stack.append((w, not need, mask | (1 << w), iter(adj[w])))
                    break
                else:
                    stack.pop()
    wrap = lambda sets: {vs[i]: frozenset(vs[j] for j in sets[i]) for i in range(n)}
    return AlternatingReach(wrap(sat), wrap(bal), wrap(exp))


def alternating_path_exists(
    graph: Graph,
    matching: Matching,
    source: int,
    target: int,
    kind: PathKind,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> bool:
    """Exhaustive search for one simple alternating path of the given kind."""
    if source not in graph.vertex_set or target not in graph.vertex_set:
        raise ValueError("path query outside the host graph")
    if source == target:
        if kind is PathKind.BALANCED:
            return True
        raise ValueError(f"{kind.value} paths need distinct endpoints")
    adj, mate, index = _search_arrays(graph, matching)
    first_matched = kind is not PathKind.EXPOSED
    want_last = kind is PathKind.SATURATED
    t = index[target]
    remaining = budget
    stack = [(index[source], first_matched, 1 << index[source], iter(adj[index[source]]))]
    while stack:
        v, need, mask, it = stack[-1]
        for w in it:
            if mask & (1 << w) or (mate[v] == w) != need:
                continue
            remaining -= 1
            if remaining < 0:
                raise _budget_exhausted()
            if w == t and need == want_last:
                return True
            stack.append((w, not need, mask | (1 << w), iter(adj[w])))
            break
        else:
            stack.pop()
    return False


def iter_saturated_paths(
    graph: Graph,
    matching: Matching,
    source: int,
    target: int,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> Iterator[tuple[int, ...]]:
    """Yield every simple saturated path between two vertices, as vertex
    tuples, in ascending DFS order."""
    if source == target or source not in graph.vertex_set or target not in graph.vertex_set:
        raise ValueError("saturated paths need two distinct host vertices")
    adj, mate, index = _search_arrays(graph, matching)
    vs = graph.vertices
    t = index[target]
    remaining = budget
    path = [index[source]]
    stack = [(index[source], True, 1 << index[source], iter(adj[index[source]]))]
    while stack:
        v, need, mask, it = stack[-1]
        for w in it:
            if mask & (1 << w) or (mate[v] == w) != need:
                continue
            remaining -= 1
            if remaining < 0:
                raise _budget_exhausted()
            path.append(w)
            if w == t and need:
                yield tuple(vs[i] for i in path)
            stack.append((w, not need, mask | (1 << w), iter(adj[w])))
            break
        else:
            stack.pop()
            path.pop()


def alternating_circuit_exists(
    graph: Graph,
    matching: Matching,
    circuit_edge: Iterable[int],
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> bool:
    """Whether some simple alternating circuit passes through the given edge.

    Searched directly (not reduced to a path query): walk away from one
    endpoint and try to close back onto the other with the right parity.
    """
    x, y = circuit_edge
    e = edge(int(x), int(y))
    if e not in graph.edges:
        raise ValueError(f"{e} is not an edge of the host graph")
    adj, mate, index = _search_arrays(graph, matching)
    xi, yi = index[e[0]], index[e[1]]
    through_matched = mate[xi] == yi
    closing = not through_matched
    adjset = [frozenset(ws) for ws in adj]
    remaining = budget
    # x is reserved as the closing target: block it from the walk entirely.
    start_mask = (1 << xi) | (1 << yi)
    stack = [(yi, not through_matched, start_mask, iter(adj[yi]))]
    while stack:
        v, need, mask, it = stack[-1]
        for w in it:
            if mask & (1 << w) or (mate[v] == w) != need:
                continue
            remaining -= 1
            if remaining < 0:
                raise _budget_exhausted()
            nxt = not need
            if nxt == closing and xi in adjset[w] and (mate[w] == xi) == closing:
                return True
            stack.append((w, nxt, mask | (1 << w), iter(adj[w])))
            break
        else:
            stack.pop()
    return False


def perfect_matching_union(graph: Graph, cap: int = DEFAULT_ENUMERATION_CAP) -> frozenset[Edge]:
    """Union of all enumerated perfect matchings; the enumeration must fit
    under the cap."""
    enum = enumerate_perfect_matchings(graph, cap)
    if enum.truncated:
        raise ValueError("enumeration cap exceeded while collecting the union")
    out: set[Edge] = set()
    for m in enum.matchings:
        out |= m.edges
    return frozenset(out)
