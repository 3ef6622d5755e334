"""Factor-connected components, the canonical vertex partition, the component
order, and the upper-bound structure tying the two together.

The order is computed definitionally: a component sits below another when
some separating superset of both contracts (at the lower one) to a
factor-critical graph, and all candidate separating sets are tried by brute
force.  That is exponential in the component count, so a configurable limit
(default 16) guards it; the structural laws (partial order, equivalence) are
asserted on every computation and raise StructureViolation when they fail,
because a failure falsifies a guarantee rather than signaling bad input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import (
    ClassAssignmentViolation,
    ComponentLimitError,
    EquivalenceViolation,
    NotFactorizableError,
    PartialOrderViolation,
)
from .graph import (
    Edge,
    Graph,
    connected_components,
    contract,
    delete_vertices,
    induced_subgraph,
    neighbors,
)
from .matching import is_factor_critical, is_factorizable

DEFAULT_COMPONENT_LIMIT = 16


def _require_factorizable(graph: Graph, operation: str) -> None:
    if not is_factorizable(graph):
        raise NotFactorizableError(f"{operation} needs a graph with a perfect matching")


def allowed_edges(graph: Graph) -> frozenset[Edge]:
    """Edges lying in some perfect matching: exactly those whose endpoint
    deletion leaves the graph factorizable."""
    _require_factorizable(graph, "allowed_edges")
    return frozenset(
        e for e in graph.edges if is_factorizable(delete_vertices(graph, e))
    )


@dataclass(frozen=True)
class FactorComponents:
    """Connected components of the allowed-edge subgraph, covering V(G)."""

    components: tuple[frozenset[int], ...]
    allowed: frozenset[Edge]

    @cached_property
    def component_of(self) -> dict[int, int]:
        return {v: i for i, comp in enumerate(self.components) for v in comp}

    def __len__(self) -> int:
        return len(self.components)


def factor_components(graph: Graph) -> FactorComponents:
    allow = allowed_edges(graph)
    skeleton = Graph(graph.vertices, allow)
    return FactorComponents(
        tuple(frozenset(c) for c in connected_components(skeleton)), allow
    )


@dataclass(frozen=True)
class CanonicalPartition:
    """Equivalence classes of the same-class relation, ordered by minimum id."""

    classes: tuple[frozenset[int], ...]

    @cached_property
    def class_of(self) -> dict[int, int]:
        return {v: i for i, cls in enumerate(self.classes) for v in cls}

    def classes_within(self, vertex_set: frozenset[int]) -> tuple[int, ...]:
        return tuple(sorted({self.class_of[v] for v in vertex_set}))

    def restricted_to(self, vertex_set: frozenset[int]) -> set[frozenset[int]]:
        return {cls for cls in self.classes if cls <= vertex_set}


def same_class(graph: Graph, comps: FactorComponents, u: int, v: int) -> bool:
    """Same factor-connected component, and deleting both endpoints kills
    every perfect matching (or the vertices coincide)."""
    if comps.component_of[u] != comps.component_of[v]:
        return False
    return u == v or not is_factorizable(delete_vertices(graph, (u, v)))


def canonical_partition(graph: Graph, comps: FactorComponents | None = None) -> CanonicalPartition:
    """Group vertices by the same-class relation.

    The relation is provably an equivalence; transitivity is still checked,
    and a violation raises EquivalenceViolation because it would mean the
    matching engine is broken.
    """
    _require_factorizable(graph, "canonical_partition")
    if comps is None:
        comps = factor_components(graph)
    related: dict[int, set[int]] = {v: {v} for v in graph.vertices}
    for u, v in combinations(graph.vertices, 2):
        if comps.component_of[u] != comps.component_of[v]:
            continue
        if not is_factorizable(delete_vertices(graph, (u, v))):
            related[u].add(v)
            related[v].add(u)
    for v in graph.vertices:
        for w in related[v]:
            if related[w] != related[v]:
                raise EquivalenceViolation(
                    f"same-class relation is not transitive at vertices {v} and {w}"
                )
    classes: list[frozenset[int]] = []
    placed: set[int] = set()
    for v in graph.vertices:
        if v not in placed:
            cls = frozenset(related[v])
            placed |= cls
            classes.append(cls)
    return CanonicalPartition(tuple(classes))


def is_separating(graph: Graph, comps: FactorComponents, candidate: frozenset[int]) -> bool:
    """Whether the set is a (possibly empty) union of factor-components."""
    xs = frozenset(candidate)
    if not xs <= graph.vertex_set:
        raise ValueError("separating-set query outside the host graph")
    return all(comp <= xs or not (comp & xs) for comp in comps.components)


def component_leq(
    graph: Graph,
    comps: FactorComponents,
    lower: int,
    upper: int,
    *,
    max_components: int = DEFAULT_COMPONENT_LIMIT,
) -> bool:
    """Whether ``lower`` sits below ``upper`` in the component order.

    True when some separating superset of both components contracts, at the
    lower one, to a factor-critical graph.  All unions of factor-components
    containing both are tried in ascending bitmask order.
    """
    k = len(comps)
    if not (0 <= lower < k and 0 <= upper < k):
        raise ValueError("component index out of range")
    if k > max_components:
        raise ComponentLimitError(
            f"{k} components exceed the brute-force limit of {max_components}"
        )
    if lower == upper:
        return True
    rest = [i for i in range(k) if i != lower and i != upper]
    seed = comps.components[lower] | comps.components[upper]
    for bits in range(1 << len(rest)):
        chosen = set(seed)
        for pos, i in enumerate(rest):
            if bits >> pos & 1:
                chosen |= comps.components[i]
        shrunk = contract(induced_subgraph(graph, chosen), comps.components[lower]).graph
        if is_factor_critical(shrunk):
            return True
    return False


@dataclass(frozen=True)
class ComponentPoset:
    """The full below-or-equal matrix over factor-components plus its
    transitive reduction (cover relation)."""

    components: FactorComponents
    leq: tuple[tuple[bool, ...], ...]
    hasse: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.components)


def component_poset(
    graph: Graph,
    comps: FactorComponents | None = None,
    *,
    max_components: int = DEFAULT_COMPONENT_LIMIT,
) -> ComponentPoset:
    _require_factorizable(graph, "component_poset")
    if comps is None:
        comps = factor_components(graph)
    k = len(comps)
    if k > max_components:
        raise ComponentLimitError(
            f"{k} components exceed the brute-force limit of {max_components}"
        )
    leq = [
        [component_leq(graph, comps, i, j, max_components=max_components) for j in range(k)]
        for i in range(k)
    ]
    for i in range(k):
        if not leq[i][i]:
            raise PartialOrderViolation(f"component {i} is not below-or-equal itself")
        for j in range(k):
            if i != j and leq[i][j] and leq[j][i]:
                raise PartialOrderViolation(f"components {i} and {j} are mutually below")
            if not leq[i][j]:
                continue
            for m in range(k):
                if leq[j][m] and not leq[i][m]:
                    raise PartialOrderViolation(
                        f"below-or-equal is not transitive at {i}, {j}, {m}"
                    )
    covers = [
        (i, j)
        for i in range(k)
        for j in range(k)
        if i != j
        and leq[i][j]
        and not any(m != i and m != j and leq[i][m] and leq[m][j] for m in range(k))
    ]
    return ComponentPoset(comps, tuple(tuple(row) for row in leq), tuple(sorted(covers)))


def minimum_component(poset: ComponentPoset) -> int | None:
    """Index of the unique component below every other, if one exists."""
    k = len(poset)
    for i in range(k):
        if all(poset.leq[i][j] for j in range(k)):
            return i
    return None


@dataclass(frozen=True, eq=False)
class UpSets:
    """Strict upper bounds of one component, split by the class each upper
    component attaches to.

    ``per_class`` maps a partition-class index (class inside the base
    component) to the strictly-upper component indices assigned to it; the
    assignment is by connected pieces of the strictly-upper induced subgraph,
    each of which touches exactly one class of the base.
    """

    base: int
    component_sets: tuple[frozenset[int], ...]
    partition: CanonicalPartition
    up_star: frozenset[int]
    per_class: dict[int, frozenset[int]] = field(repr=False)

    def strict_upper_components(self) -> frozenset[int]:
        return self.up_star - {self.base}

    def _union(self, indices: frozenset[int]) -> frozenset[int]:
        out: set[int] = set()
        for i in indices:
            out |= self.component_sets[i]
        return frozenset(out)

    def strict_upper_vertices(self) -> frozenset[int]:
        return self._union(self.strict_upper_components())

    def upper_closure_vertices(self) -> frozenset[int]:
        return self._union(self.up_star)

    def up_components(self, class_index: int) -> frozenset[int]:
        return self.per_class.get(class_index, frozenset())

    def up_vertices(self, class_index: int) -> frozenset[int]:
        return self._union(self.up_components(class_index))

    def up_star_vertices(self, class_index: int) -> frozenset[int]:
        return self.partition.classes[class_index] | self.up_vertices(class_index)


def up_sets(
    graph: Graph,
    poset: ComponentPoset,
    partition: CanonicalPartition,
    base: int,
) -> UpSets:
    """Assign each strictly-upper component of ``base`` to a class of the
    base component.

    Each connected piece of the subgraph induced by the strictly-upper
    vertices must have its neighborhood inside the base contained in exactly
    one class; anything else raises ClassAssignmentViolation, since that
    cannot happen for a correct engine.
    """
    comps = poset.components.components
    k = len(comps)
    if not 0 <= base < k:
        raise ValueError("component index out of range")
    up_star = frozenset(j for j in range(k) if poset.leq[base][j])
    strict = up_star - {base}
    base_vertices = comps[base]
    per: dict[int, set[int]] = {s: set() for s in partition.classes_within(base_vertices)}
    upper_vertices: set[int] = set()
    for j in strict:
        upper_vertices |= comps[j]
    assigned: set[int] = set()
    for piece in connected_components(induced_subgraph(graph, upper_vertices)):
        ps = frozenset(piece)
        touched = {partition.class_of[w] for w in neighbors(graph, ps) & base_vertices}
        if len(touched) != 1:
            raise ClassAssignmentViolation(
                f"upper piece {sorted(ps)} touches {len(touched)} classes of the base"
            )
        members = frozenset(j for j in strict if comps[j] <= ps)
        covered: set[int] = set()
        for j in members:
            covered |= comps[j]
        if covered != set(ps):
            raise ClassAssignmentViolation(
                f"upper piece {sorted(ps)} is not a union of whole components"
            )
        per[touched.pop()] |= members
        assigned |= members
    if assigned != set(strict):
        raise ClassAssignmentViolation("some strictly-upper component was never assigned")
    return UpSets(
        base,
        comps,
        partition,
        up_star,
        {s: frozenset(ms) for s, ms in per.items()},
    )
