"""Seeded random instances plus the conformance suite.

Every structural statement the package relies on is re-checked here on
concrete graphs, two-sided wherever the statement is an equivalence, against
exhaustive alternating-path searches and perfect-matching enumeration.
Checks whose hypotheses a graph does not meet (saturated-only statements on
an unsaturated graph, minimum-element statements on an antichain) are
reported as skipped and re-run on the graph's saturation closure.

A failing check ships a replayable counterexample: the graph is greedily
shrunk (edge removals, then vertex-pair removals) while the failure
persists, relabeled to dense ids, re-verified, and rendered as edge-list
text.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, replace
from itertools import combinations, product
from typing import Callable, Iterable

from .canonical import (
    CanonicalPartition,
    ComponentPoset,
    FactorComponents,
    UpSets,
    allowed_edges,
    canonical_partition,
    component_leq,
    component_poset,
    factor_components,
    minimum_component,
    up_sets,
)
from .construction import (
    CathedralTree,
    construct_tree,
    decompose,
    foundation_via_ge,
    is_saturated,
    saturate,
)
from .errors import (
    NotFactorizableError,
    SearchBudgetExceeded,
    StructureViolation,
)
from .gallai_edmonds import GEPartition, gallai_edmonds
from .graph import (
    Edge,
    Graph,
    add_edges,
    complement_pairs,
    connected_components,
    contract,
    delete_vertices,
    edge,
    induced_subgraph,
    neighbors,
    render_edge_list,
)
from .matching import (
    AlternatingReach,
    Matching,
    alternating_circuit_exists,
    alternating_path_exists,
    alternating_reachability,
    enumerate_perfect_matchings,
    is_factor_critical,
    is_factorizable,
    iter_saturated_paths,
    restrict_matching,
    PathKind,
)

_MASK64 = (1 << 64) - 1
# All perfect matchings are used by per-matching checks up to this order;
# larger graphs fall back to the first matching only.
_EXHAUSTIVE_ORDER = 9
_PATHS_PER_PAIR = 200


@dataclass(frozen=True)
class TrialConfig:
    """Knobs for the random-instance generator and the suite budgets."""

    seed: int
    trials: int = 100
    max_vertices: int = 8
    edge_probability: float = 0.3
    enumeration_cap: int = 64
    path_budget: int = 2_000_000

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.max_vertices < 2 or self.max_vertices % 2 != 0:
            raise ValueError("max_vertices must be even and at least 2")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise ValueError("edge_probability must lie in [0, 1]")
        if self.enumeration_cap < 1:
            raise ValueError("enumeration_cap must be at least 1")


def _mix(seed: int, trial: int) -> int:
    # splitmix64 over (seed, trial): every trial gets an independent,
    # platform-stable stream
    x = (seed * 0x9E3779B97F4A7C15 + trial) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def random_factorizable_graph(config: TrialConfig, trial: int) -> Graph:
    """Plant the matching (0,1), (2,3), ... then add every other pair
    independently with the configured probability."""
    rng = random.Random(_mix(config.seed, trial))
    n = 2 * rng.randint(1, config.max_vertices // 2)
    edges = {(2 * i, 2 * i + 1) for i in range(n // 2)}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < config.edge_probability:
                edges.add((u, v))
    return Graph(range(n), edges)


@dataclass(frozen=True)
class CheckResult:
    check: str
    status: str  # "pass" | "fail" | "skip"
    reason: str = ""
    counterexample: str = ""
    millis: float = 0.0


@dataclass(frozen=True)
class SuiteReport:
    graph_text: str
    config: TrialConfig
    results: tuple[CheckResult, ...]

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(r for r in self.results if r.status == "fail")

    @property
    def ok(self) -> bool:
        return not self.failures()


class _CheckFailed(Exception):
    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class _SkipCheck(Exception):
    def __init__(self, reason: str, rerun_on_closure: bool = True):
        super().__init__(reason)
        self.reason = reason
        self.rerun_on_closure = rerun_on_closure


def _fail(detail: str) -> None:
    raise _CheckFailed(detail)


def _graph_text(graph: Graph) -> str:
    return render_edge_list(_relabel_dense(graph))


def _relabel_dense(graph: Graph) -> Graph:
    remap = {v: i for i, v in enumerate(graph.vertices)}
    return Graph(range(graph.order), ((remap[u], remap[v]) for u, v in graph.edges))


class _TrialContext:
    """Shared, lazily computed artifacts for one graph under test."""

    def __init__(self, graph: Graph, config: TrialConfig):
        self.graph = graph
        self.config = config
        self._cache: dict[str, object] = {}
        self._reach: dict[int, AlternatingReach] = {}
        self._deleted: dict[int, tuple[Graph, Matching, int, AlternatingReach]] = {}
        self._upsets: dict[int, UpSets] = {}
        self._ge_deleted: dict[int, GEPartition] = {}

    def _memo(self, key: str, build: Callable[[], object]) -> object:
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def enumeration(self):
        return self._memo(
            "enumeration",
            lambda: enumerate_perfect_matchings(self.graph, self.config.enumeration_cap),
        )

    @property
    def matchings(self) -> tuple[Matching, ...]:
        return self.enumeration.matchings

    @property
    def matchings_checked(self) -> tuple[Matching, ...]:
        if self.graph.order <= _EXHAUSTIVE_ORDER:
            return self.matchings
        return self.matchings[:1]

    def require_complete_enumeration(self) -> None:
        if self.enumeration.truncated:
            raise _SkipCheck(
                f"more than {self.config.enumeration_cap} perfect matchings",
                rerun_on_closure=False,
            )

    @property
    def allowed(self) -> frozenset[Edge]:
        return self._memo("allowed", lambda: allowed_edges(self.graph))

    @property
    def allowed_union(self) -> frozenset[Edge]:
        def build() -> frozenset[Edge]:
            out: set[Edge] = set()
            for m in self.matchings:
                out |= m.edges
            return frozenset(out)

        return self._memo("allowed_union", build)

    @property
    def components(self) -> FactorComponents:
        return self._memo("components", lambda: factor_components(self.graph))

    @property
    def partition(self) -> CanonicalPartition:
        return self._memo(
            "partition", lambda: canonical_partition(self.graph, self.components)
        )

    @property
    def poset(self) -> ComponentPoset:
        return self._memo(
            "poset", lambda: component_poset(self.graph, self.components)
        )

    @property
    def minimum(self) -> int | None:
        return self._memo("minimum", lambda: minimum_component(self.poset))

    @property
    def saturated(self) -> bool:
        return self._memo("saturated", lambda: is_saturated(self.graph))

    @property
    def tree(self) -> CathedralTree:
        return self._memo("tree", lambda: decompose(self.graph))

    @property
    def rebuilt(self) -> Graph:
        return self._memo("rebuilt", lambda: construct_tree(self.tree))

    def reach(self, matching_index: int) -> AlternatingReach:
        if matching_index not in self._reach:
            self._reach[matching_index] = alternating_reachability(
                self.graph,
                self.matchings[matching_index],
                budget=self.config.path_budget,
            )
        return self._reach[matching_index]

    def upsets(self, base: int) -> UpSets:
        if base not in self._upsets:
            self._upsets[base] = up_sets(self.graph, self.poset, self.partition, base)
        return self._upsets[base]

    def ge_deleted(self, x: int) -> GEPartition:
        if x not in self._ge_deleted:
            self._ge_deleted[x] = gallai_edmonds(delete_vertices(self.graph, (x,)))
        return self._ge_deleted[x]

    def deleted_instance(self, x: int) -> tuple[Graph, Matching, int, AlternatingReach]:
        """The graph minus x, a maximum matching of it derived from the first
        perfect matching, the vertex that matching leaves exposed, and its
        reachability sweep."""
        if x not in self._deleted:
            m0 = self.matchings[0]
            partner = m0.partner[x]
            rest = delete_vertices(self.graph, (x,))
            m = Matching(rest, (e for e in m0.edges if x not in e))
            reach = alternating_reachability(rest, m, budget=self.config.path_budget)
            self._deleted[x] = (rest, m, partner, reach)
        return self._deleted[x]

    def require_saturated(self) -> None:
        if not self.saturated:
            raise _SkipCheck("graph is not saturated")

    def require_minimum(self) -> int:
        if self.minimum is None:
            raise _SkipCheck("component order has no minimum element")
        return self.minimum

    def foundation_pieces(self) -> tuple[frozenset[int], tuple[frozenset[int], ...]]:
        low = self.require_minimum()
        fv = self.components.components[low]
        pieces = tuple(
            frozenset(p)
            for p in connected_components(delete_vertices(self.graph, fv))
        )
        return fv, pieces


# --- individual checks ------------------------------------------------------


def _check_exposure_partition_paths(ctx: _TrialContext) -> None:
    """The three-way deletion partition matches balanced/exposed reachability
    from the exposed set, on the graph itself and on every single deletion."""
    instances = []
    if ctx.graph.order:
        instances.append((ctx.graph, ctx.matchings[0], ctx.reach(0)))
    for x in ctx.graph.vertices:
        rest, m, _, reach = ctx.deleted_instance(x)
        instances.append((rest, m, reach))
    for host, m, reach in instances:
        ge = gallai_edmonds(host)
        exposed = m.exposed
        for u in host.vertices:
            in_d = bool(reach.balanced[u] & exposed)
            in_a = not in_d and bool(reach.exposed[u] & exposed)
            in_c = not in_d and not in_a
            if (u in ge.d) != in_d or (u in ge.a) != in_a or (u in ge.c) != in_c:
                _fail(f"partition of {sorted(host.vertices)} disagrees with paths at {u}")


def _check_deleted_partition_paths(ctx: _TrialContext) -> None:
    """Membership in the deletion partition of G-x is equivalent to saturated
    and balanced reachability from x, for every perfect matching."""
    for mi, _ in enumerate(ctx.matchings_checked):
        reach = ctx.reach(mi)
        for x in ctx.graph.vertices:
            ge = ctx.ge_deleted(x)
            for u in ctx.graph.vertices:
                if u == x:
                    continue
                sat = u in reach.saturated[x]
                bal = u in reach.balanced[x]
                if (u in ge.d) != sat:
                    _fail(f"exposable part of G-{x} wrong at {u}")
                if (u in ge.a) != (not sat and bal):
                    _fail(f"neighbor part of G-{x} wrong at {u}")
                if (u in ge.c) != (not sat and not bal):
                    _fail(f"inner part of G-{x} wrong at {u}")


def _check_order_laws(ctx: _TrialContext) -> None:
    leq = ctx.poset.leq
    k = len(leq)
    for i in range(k):
        if not leq[i][i]:
            _fail(f"not reflexive at component {i}")
        for j in range(k):
            if i != j and leq[i][j] and leq[j][i]:
                _fail(f"not antisymmetric at {i}, {j}")
            for m in range(k):
                if leq[i][j] and leq[j][m] and not leq[i][m]:
                    _fail(f"not transitive at {i}, {j}, {m}")


def _check_partition_equivalence(ctx: _TrialContext) -> None:
    """Recompute the same-class relation definitionally and confirm it is an
    equivalence matching the computed classes."""
    comp_of = ctx.components.component_of
    rel: dict[tuple[int, int], bool] = {}
    for u in ctx.graph.vertices:
        for v in ctx.graph.vertices:
            if u == v:
                rel[u, v] = True
            elif comp_of[u] != comp_of[v]:
                rel[u, v] = False
            else:
                rel[u, v] = not is_factorizable(delete_vertices(ctx.graph, (u, v)))
    for u in ctx.graph.vertices:
        for v in ctx.graph.vertices:
            if rel[u, v] != rel[v, u]:
                _fail(f"relation not symmetric at {u}, {v}")
            for w in ctx.graph.vertices:
                if rel[u, v] and rel[v, w] and not rel[u, w]:
                    _fail(f"relation not transitive at {u}, {v}, {w}")
            same = ctx.partition.class_of[u] == ctx.partition.class_of[v]
            if rel[u, v] != same:
                _fail(f"classes disagree with the relation at {u}, {v}")


def _check_partition_refinement(ctx: _TrialContext) -> None:
    """Within each component, same class in the whole graph implies same
    class in the component's own partition."""
    for comp in ctx.components.components:
        sub = induced_subgraph(ctx.graph, comp)
        sub_part = canonical_partition(sub)
        for u, v in combinations(sorted(comp), 2):
            if ctx.partition.class_of[u] == ctx.partition.class_of[v]:
                if sub_part.class_of[u] != sub_part.class_of[v]:
                    _fail(f"refinement fails at {u}, {v} in component {sorted(comp)}")


def _check_same_class_no_saturated_path(ctx: _TrialContext) -> None:
    """Two vertices of one component share a class iff no saturated path
    joins them, for every perfect matching."""
    comp_of = ctx.components.component_of
    for mi, _ in enumerate(ctx.matchings_checked):
        reach = ctx.reach(mi)
        for u, v in combinations(ctx.graph.vertices, 2):
            if comp_of[u] != comp_of[v]:
                continue
            same = ctx.partition.class_of[u] == ctx.partition.class_of[v]
            if same == (v in reach.saturated[u]):
                _fail(f"saturated-path criterion disagrees at {u}, {v}")


def _check_upper_single_class(ctx: _TrialContext) -> None:
    """Every connected piece above a component attaches to exactly one of its
    classes, and the assignment covers the strict upper bounds."""
    for base in range(len(ctx.poset)):
        us = ctx.upsets(base)  # raises ClassAssignmentViolation on failure
        union: set[int] = set()
        for members in us.per_class.values():
            if union & members:
                _fail(f"class assignments overlap above component {base}")
            union |= members
        if frozenset(union) != us.strict_upper_components():
            _fail(f"class assignments miss components above component {base}")


def _check_ear_ends_share_class(ctx: _TrialContext) -> None:
    """Both end vertices of any matching-ear relative to a component share a
    canonical class."""
    for m in ctx.matchings_checked:
        for comp in ctx.components.components:
            outside_vertices = ctx.graph.vertex_set - comp
            if not outside_vertices:
                continue
            outside = induced_subgraph(ctx.graph, outside_vertices)
            m_out = restrict_matching(m, outside)
            reach = alternating_reachability(outside, m_out, budget=ctx.config.path_budget)
            for u, w in combinations(sorted(outside_vertices), 2):
                if w not in reach.saturated[u]:
                    continue
                count = 0
                for path in iter_saturated_paths(
                    outside, m_out, u, w, budget=ctx.config.path_budget
                ):
                    count += 1
                    if count > _PATHS_PER_PAIR:
                        raise _SkipCheck("too many interior paths", rerun_on_closure=False)
                    heads = neighbors(ctx.graph, (path[0],)) & comp
                    tails = neighbors(ctx.graph, (path[-1],)) & comp
                    for a in heads:
                        for b in tails:
                            if a != b and ctx.partition.class_of[a] != ctx.partition.class_of[b]:
                                _fail(
                                    f"ear through {list(path)} has ends {a}, {b} in different classes"
                                )


def _check_incomparable_edge_witness(ctx: _TrialContext) -> None:
    """For a minimal component and any component not above it, one or two
    complement edges between them keep the components intact and create the
    missing order relation."""
    leq = ctx.poset.leq
    comps = ctx.components.components
    k = len(comps)
    minimal = [i for i in range(k) if not any(j != i and leq[j][i] for j in range(k))]
    old_sets = set(comps)
    for i in minimal:
        for j in range(k):
            if i == j or leq[i][j]:
                continue
            cands = [
                edge(x, y)
                for x in sorted(comps[i])
                for y in sorted(comps[j])
                if not ctx.graph.has_edge(x, y)
            ]
            witness = None
            for e, f in product(cands, repeat=2):
                grown = add_edges(ctx.graph, (e,) if e == f else (e, f))
                grown_comps = factor_components(grown)
                if set(grown_comps.components) != old_sets:
                    continue
                gi = grown_comps.components.index(comps[i])
                gj = grown_comps.components.index(comps[j])
                if component_leq(grown, grown_comps, gi, gj):
                    witness = (e, f)
                    break
            if witness is None:
                _fail(
                    f"no edge pair relates component {sorted(comps[i])} below {sorted(comps[j])}"
                )


def _check_elementary_reachability(ctx: _TrialContext) -> None:
    """Inside one component, every ordered vertex pair is joined by a
    saturated path or by a balanced path."""
    for comp in ctx.components.components:
        sub = induced_subgraph(ctx.graph, comp)
        enum = enumerate_perfect_matchings(sub, ctx.config.enumeration_cap)
        matchings = enum.matchings
        if ctx.graph.order > _EXHAUSTIVE_ORDER:
            matchings = matchings[:1]
        for m in matchings:
            reach = alternating_reachability(sub, m, budget=ctx.config.path_budget)
            for u in sub.vertices:
                for v in sub.vertices:
                    if u == v:
                        continue
                    if v not in reach.saturated[u] and v not in reach.balanced[u]:
                        _fail(f"no saturated or balanced path from {u} to {v} in {sorted(comp)}")


def _upper_bound_instances(ctx: _TrialContext):
    """Common iteration for the upper-bound reachability checks: yields
    (matching index, reach, base component, its class indices, up-sets)."""
    for mi, _ in enumerate(ctx.matchings_checked):
        reach = ctx.reach(mi)
        for base in range(len(ctx.poset)):
            us = ctx.upsets(base)
            class_ids = ctx.partition.classes_within(ctx.components.components[base])
            yield mi, reach, base, class_ids, us


def _check_upward_reachability(ctx: _TrialContext) -> None:
    """Path structure between a class and the components assigned above it:
    balanced paths reach down into the class (inside the assigned region),
    saturated paths reach everything outside the class's closure, and
    nothing alternating goes from the class up."""
    for mi, reach, base, class_ids, us in _upper_bound_instances(ctx):
        m = ctx.matchings_checked[mi]
        for s in class_ids:
            cls = ctx.partition.classes[s]
            up_s = us.up_vertices(s)
            up_star_s = us.up_star_vertices(s)
            # same class: no saturated path, balanced both ways
            for u in cls:
                for v in cls:
                    if u != v and v in reach.saturated[u]:
                        _fail(f"saturated path inside class {sorted(cls)} at {u}, {v}")
                    if v not in reach.balanced[u]:
                        _fail(f"missing balanced path inside class {sorted(cls)} at {u}, {v}")
            # class to its assigned region: nothing
            for u in cls:
                for v in up_s:
                    if v in reach.saturated[u]:
                        _fail(f"saturated path from class vertex {u} up to {v}")
                    if v in reach.balanced[u]:
                        _fail(f"balanced path from class vertex {u} up to {v}")
            # region down into its class, confined to the region
            for u in up_star_s:
                if u in cls:
                    continue
                found = False
                for v in sorted(cls):
                    area = up_s | {v}
                    sub = induced_subgraph(ctx.graph, area | {u})
                    if alternating_path_exists(
                        sub,
                        restrict_matching(m, sub),
                        u,
                        v,
                        PathKind.BALANCED,
                        budget=ctx.config.path_budget,
                    ):
                        found = True
                        break
                if not found:
                    _fail(f"no confined balanced path from {u} down to class {sorted(cls)}")
            # class across to other classes' closures, avoiding this region
            for t in class_ids:
                if t == s:
                    continue
                avoid_region = us.upper_closure_vertices() - up_s
                sub = induced_subgraph(ctx.graph, avoid_region)
                sub_m = restrict_matching(m, sub)
                for u in sorted(cls):
                    for v in sorted(us.up_star_vertices(t)):
                        if not alternating_path_exists(
                            sub, sub_m, u, v, PathKind.SATURATED, budget=ctx.config.path_budget
                        ):
                            _fail(
                                f"no confined saturated path from {u} across to {v}"
                            )


def _check_combined_reachability(ctx: _TrialContext) -> None:
    """Consequences of the upward structure, stated over the whole graph:
    region and class both reach everything outside the class closure by
    saturated paths; region reaches its class only by balanced paths; the
    class reaches its region by neither."""
    for mi, reach, base, class_ids, us in _upper_bound_instances(ctx):
        closure = us.upper_closure_vertices()
        for s in class_ids:
            cls = ctx.partition.classes[s]
            up_s = us.up_vertices(s)
            rest = closure - us.up_star_vertices(s)
            for u in up_s:
                for v in rest:
                    if v not in reach.saturated[u]:
                        _fail(f"missing saturated path {u} to {v} outside the closure")
                for v in cls:
                    if v in reach.saturated[u]:
                        _fail(f"unexpected saturated path {u} to class vertex {v}")
                    if v not in reach.balanced[u]:
                        _fail(f"missing balanced path {u} down to class vertex {v}")
            for w in cls:
                for v in rest:
                    if v not in reach.saturated[w]:
                        _fail(f"missing saturated path {w} to {v} outside the closure")
                for v in cls:
                    if w != v and v in reach.saturated[w]:
                        _fail(f"unexpected saturated path inside class at {w}, {v}")
                    if v not in reach.balanced[w]:
                        _fail(f"missing balanced path inside class at {w}, {v}")
                for v in up_s:
                    if v in reach.saturated[w] or v in reach.balanced[w]:
                        _fail(f"unexpected alternating path from class vertex {w} up to {v}")


def _check_deleted_partition_vs_up_sets(ctx: _TrialContext) -> None:
    """With a minimum component, deleting a vertex of class S pins the
    deletion partition exactly to the up-set structure; deleting above S
    gives the three containments."""
    low = ctx.require_minimum()
    us = ctx.upsets(low)
    everything = us.upper_closure_vertices()
    for s in ctx.partition.classes_within(ctx.components.components[low]):
        cls = ctx.partition.classes[s]
        up_s = us.up_vertices(s)
        expected_d = everything - us.up_star_vertices(s)
        for x in sorted(cls):
            ge = ctx.ge_deleted(x)
            if ge.d != expected_d:
                _fail(f"exposable part of G-{x} differs from the up-set prediction")
            if (ge.a | {x}) != cls:
                _fail(f"neighbor part of G-{x} plus {x} is not its class")
            if ge.c != up_s:
                _fail(f"inner part of G-{x} is not the class's region")
        for x in sorted(up_s):
            ge = ctx.ge_deleted(x)
            if not expected_d <= ge.d:
                _fail(f"exposable part of G-{x} misses the predicted set")
            if not cls <= (ge.a | {x}):
                _fail(f"neighbor part of G-{x} plus {x} misses the class")
            if not ge.c <= up_s:
                _fail(f"inner part of G-{x} leaks outside the class's region")


def _check_foundation_equals_ge(ctx: _TrialContext) -> None:
    low = ctx.require_minimum()
    expected = ctx.components.components[low]
    if foundation_via_ge(ctx.graph) != expected:
        _fail("deletion-partition complement disagrees with the minimum component")


def _check_saturated_has_minimum(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    if ctx.graph.order and ctx.minimum is None:
        _fail("saturated graph with no minimum component")


def _check_saturated_partition_matches_parts(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    for comp in ctx.components.components:
        restricted = ctx.partition.restricted_to(comp)
        own = set(canonical_partition(induced_subgraph(ctx.graph, comp)).classes)
        if restricted != own:
            _fail(f"partition restricted to {sorted(comp)} differs from its own partition")


def _check_parts_saturated(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    fv, pieces = ctx.foundation_pieces()
    if not is_saturated(induced_subgraph(ctx.graph, fv)):
        _fail("foundation is not saturated")
    claimed: set[int] = set()
    for ps in pieces:
        touched = {ctx.partition.class_of[w] for w in neighbors(ctx.graph, ps)}
        if len(touched) != 1:
            _fail(f"tower {sorted(ps)} touches {len(touched)} classes")
        s = touched.pop()
        if s in claimed:
            _fail(f"two towers attach to class {sorted(ctx.partition.classes[s])}")
        claimed.add(s)
        if not is_saturated(induced_subgraph(ctx.graph, ps)):
            _fail(f"tower {sorted(ps)} is not saturated")


def _check_tower_join_complete(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    fv, pieces = ctx.foundation_pieces()
    for ps in pieces:
        touched = {ctx.partition.class_of[w] for w in neighbors(ctx.graph, ps)}
        if len(touched) != 1:
            _fail(f"tower {sorted(ps)} touches {len(touched)} classes")
        cls = ctx.partition.classes[touched.pop()]
        for s in cls:
            for t in ps:
                if not ctx.graph.has_edge(s, t):
                    _fail(f"class vertex {s} and tower vertex {t} are not adjacent")


def _check_foundation_contraction_critical(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    fv, _ = ctx.foundation_pieces()
    if not is_factor_critical(contract(ctx.graph, fv).graph):
        _fail("collapsing the foundation is not factor-critical")


def _check_same_class_implies_edge(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    for cls in ctx.partition.classes:
        for u, v in combinations(sorted(cls), 2):
            if not ctx.graph.has_edge(u, v):
                _fail(f"class vertices {u} and {v} are not adjacent")


def _check_saturated_connected(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    if ctx.graph.order and len(connected_components(ctx.graph)) != 1:
        _fail("saturated graph is disconnected")


def _check_allowed_from_parts(ctx: _TrialContext) -> None:
    """In a saturated graph the allowed edges are exactly the allowed edges
    of the foundation and of each tower."""
    ctx.require_saturated()
    fv, pieces = ctx.foundation_pieces()
    union: set[Edge] = set(allowed_edges(induced_subgraph(ctx.graph, fv)))
    for ps in pieces:
        union |= allowed_edges(induced_subgraph(ctx.graph, ps))
    if frozenset(union) != ctx.allowed:
        _fail("allowed edges differ from the union over foundation and towers")


def _check_matchings_product(ctx: _TrialContext) -> None:
    """Every perfect matching of a saturated graph is a disjoint union of
    perfect matchings of its foundation and towers, and conversely."""
    ctx.require_saturated()
    ctx.require_complete_enumeration()
    fv, pieces = ctx.foundation_pieces()
    parts = [induced_subgraph(ctx.graph, fv)] + [
        induced_subgraph(ctx.graph, ps) for ps in pieces
    ]
    per_part: list[tuple[frozenset[Edge], ...]] = []
    total = 1
    for part in parts:
        enum = enumerate_perfect_matchings(part, ctx.config.enumeration_cap)
        if enum.truncated:
            raise _SkipCheck("part enumeration exceeded the cap", rerun_on_closure=False)
        per_part.append(tuple(m.edges for m in enum.matchings))
        total *= max(len(enum.matchings), 1)
        if total > 4 * ctx.config.enumeration_cap:
            raise _SkipCheck("part product exceeds the cap", rerun_on_closure=False)
    combined = {
        frozenset().union(*combo) for combo in product(*per_part)
    }
    whole = {m.edges for m in ctx.matchings}
    if combined != whole:
        _fail("perfect matchings are not the products of the parts' matchings")


def _check_foundation_unique_via_ge(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    if ctx.graph.order == 0:
        return
    if ctx.tree.foundation_vertices != foundation_via_ge(ctx.graph):
        _fail("decomposition foundation differs from the deletion-partition complement")


def _check_round_trip(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    if ctx.rebuilt != ctx.graph:
        _fail("rebuilding the decomposition did not reproduce the graph")


def _check_construction_minimum(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    if ctx.graph.order == 0:
        return
    built = ctx.rebuilt
    comps = factor_components(built)
    if ctx.tree.foundation_vertices not in comps.components:
        _fail("foundation is not a component of the rebuilt graph")
    low = minimum_component(component_poset(built, comps))
    if low is None or comps.components[low] != ctx.tree.foundation_vertices:
        _fail("foundation is not the minimum component of the rebuilt graph")


def _check_construction_saturated(ctx: _TrialContext) -> None:
    ctx.require_saturated()
    if not is_saturated(ctx.rebuilt):
        _fail("rebuilt graph is not saturated")


def _check_factor_critical_balanced(ctx: _TrialContext) -> None:
    """A graph with a near-perfect matching is factor-critical iff every
    vertex has a balanced path to the exposed one."""
    for x in ctx.graph.vertices:
        rest, m, partner, reach = ctx.deleted_instance(x)
        critical = is_factor_critical(rest)
        reachable = all(partner in reach.balanced[u] for u in rest.vertices)
        if critical != reachable:
            _fail(f"factor-criticality of G-{x} disagrees with balanced reachability")


def _check_allowed_circuit_path(ctx: _TrialContext) -> None:
    """For an unmatched edge: allowed (by enumeration), on an alternating
    circuit, and joined by a saturated path are all equivalent."""
    ctx.require_complete_enumeration()
    for mi, m in enumerate(ctx.matchings_checked):
        reach = ctx.reach(mi)
        for e in sorted(ctx.graph.edges - m.edges):
            a = e in ctx.allowed_union
            b = e[1] in reach.saturated[e[0]]
            c = alternating_circuit_exists(ctx.graph, m, e, budget=ctx.config.path_budget)
            if not (a == b == c):
                _fail(f"allowed/circuit/path disagree at edge {e}: {a}, {b}, {c}")


def _check_saturated_path_deletion(ctx: _TrialContext) -> None:
    """A saturated path joins two vertices iff deleting both leaves the graph
    factorizable, independently of the matching."""
    for mi, _ in enumerate(ctx.matchings_checked):
        reach = ctx.reach(mi)
        for u, v in combinations(ctx.graph.vertices, 2):
            if (v in reach.saturated[u]) != is_factorizable(
                delete_vertices(ctx.graph, (u, v))
            ):
                _fail(f"saturated-path criterion disagrees with deletion at {u}, {v}")


def _check_path_separator_split(ctx: _TrialContext) -> None:
    """Splitting a saturated path at a separating set leaves saturated pieces
    inside the set and matching-ears between consecutive crossings."""
    separators = {comp for comp in ctx.components.components}
    whole = ctx.graph.vertex_set
    for comp in ctx.components.components:
        rest = whole - comp
        if rest:
            separators.add(rest)
    separators = {s for s in separators if s and s != whole}
    if not separators:
        raise _SkipCheck("graph has a single component", rerun_on_closure=False)
    for mi, m in enumerate(ctx.matchings_checked):
        reach = ctx.reach(mi)
        mate = m.partner
        for u, v in combinations(ctx.graph.vertices, 2):
            if v not in reach.saturated[u]:
                continue
            count = 0
            for path in iter_saturated_paths(
                ctx.graph, m, u, v, budget=ctx.config.path_budget
            ):
                count += 1
                if count > _PATHS_PER_PAIR:
                    raise _SkipCheck("too many saturated paths", rerun_on_closure=False)
                for sep in separators:
                    _assert_split_shape(ctx, path, sep, mate)


def _assert_split_shape(
    ctx: _TrialContext, path: tuple[int, ...], sep: frozenset[int], mate: dict[int, int]
) -> None:
    # runs inside the separator must be saturated subpaths
    i = 0
    while i < len(path):
        if path[i] not in sep:
            i += 1
            continue
        j = i
        while j + 1 < len(path) and path[j + 1] in sep:
            j += 1
        run = path[i : j + 1]
        if len(run) < 2:
            _fail(f"separator run {list(run)} of path {list(path)} is a single vertex")
        if mate.get(run[0]) != run[1] or mate.get(run[-1]) != run[-2]:
            _fail(f"separator run {list(run)} of path {list(path)} is not saturated")
        i = j + 1
    # pieces between in-separator edges that avoid the path ends are ears:
    # ends inside the separator, interior outside, interior saturated
    cut = [
        k
        for k in range(len(path) - 1)
        if path[k] in sep and path[k + 1] in sep
    ]
    bounds = [-1] + cut + [len(path) - 1]
    for a, b in zip(bounds, bounds[1:]):
        lo, hi = a + 1, b
        if lo == 0 or hi == len(path) - 1:
            continue  # contains a path end
        piece = path[lo : hi + 1]
        if len(piece) < 2:
            continue  # degenerate single vertex, cannot be an ear
        if piece[0] not in sep or piece[-1] not in sep:
            _fail(f"ear candidate {list(piece)} does not end in the separator")
        interior = piece[1:-1]
        if any(w in sep for w in interior):
            _fail(f"ear candidate {list(piece)} has interior vertices in the separator")
        if len(interior) < 2:
            _fail(f"ear candidate {list(piece)} has no saturated interior")
        if mate.get(interior[0]) != interior[1] or mate.get(interior[-1]) != interior[-2]:
            _fail(f"ear candidate {list(piece)} has a non-saturated interior")


def _check_new_matching_iff_path(ctx: _TrialContext) -> None:
    """Adding an absent pair creates a new perfect matching iff a saturated
    path already joins its endpoints."""
    ctx.require_complete_enumeration()
    base_count = len(ctx.matchings)
    for pair in complement_pairs(ctx.graph):
        grown = add_edges(ctx.graph, (pair,))
        enum = enumerate_perfect_matchings(grown, 2 * ctx.config.enumeration_cap)
        if enum.truncated:
            raise _SkipCheck("grown enumeration exceeded the cap", rerun_on_closure=False)
        creates = len(enum.matchings) > base_count
        for mi, _ in enumerate(ctx.matchings_checked):
            reach = ctx.reach(mi)
            if creates != (pair[1] in reach.saturated[pair[0]]):
                _fail(f"new-matching criterion disagrees at pair {pair}")


def _check_allowed_edges_agreement(ctx: _TrialContext) -> None:
    """Production allowed-edge computation equals the union of enumerated
    perfect matchings."""
    ctx.require_complete_enumeration()
    if ctx.allowed != ctx.allowed_union:
        _fail("allowed edges differ from the union of perfect matchings")


def _check_cross_matching_balanced(ctx: _TrialContext) -> None:
    """Informational: record whether balanced-path existence agrees across
    perfect matchings (never asserted)."""
    if len(ctx.matchings_checked) < 2:
        return
    base = ctx.reach(0)
    disagreements = []
    for mi in range(1, len(ctx.matchings_checked)):
        other = ctx.reach(mi)
        for u in ctx.graph.vertices:
            if base.balanced[u] != other.balanced[u]:
                disagreements.append((mi, u))
    if disagreements:
        raise _SkipCheck(
            f"balanced reach differs across matchings at {disagreements[:5]} (informational)",
            rerun_on_closure=False,
        )


def _check_closure_saturated_preserving(ctx: _TrialContext) -> None:
    """Both scan orders of the closure yield saturated graphs with exactly
    the input's perfect matchings; the added edges are recorded."""
    notes = []
    for descending in (False, True):
        closed, added = saturate(ctx.graph, descending=descending)
        notes.append(f"{'desc' if descending else 'asc'} adds {list(added)}")
        if not is_saturated(closed):
            _fail(f"closure ({notes[-1]}) is not saturated")
        if not ctx.enumeration.truncated:
            enum = enumerate_perfect_matchings(closed, 2 * ctx.config.enumeration_cap)
            if not enum.truncated and enum.edge_sets() != ctx.enumeration.edge_sets():
                _fail(f"closure ({notes[-1]}) changed the perfect matchings")


_CHECKS: tuple[tuple[str, Callable[[_TrialContext], None]], ...] = (
    ("exposure-partition-paths", _check_exposure_partition_paths),
    ("deleted-vertex-partition-paths", _check_deleted_partition_paths),
    ("component-order-laws", _check_order_laws),
    ("canonical-partition-equivalence", _check_partition_equivalence),
    ("partition-refines-subgraph-partition", _check_partition_refinement),
    ("same-class-iff-no-saturated-path", _check_same_class_no_saturated_path),
    ("upper-components-single-class", _check_upper_single_class),
    ("ear-ends-share-class", _check_ear_ends_share_class),
    ("incomparable-pair-edge-witness", _check_incomparable_edge_witness),
    ("elementary-pairwise-reachability", _check_elementary_reachability),
    ("upward-reachability", _check_upward_reachability),
    ("combined-reachability", _check_combined_reachability),
    ("deleted-partition-matches-up-sets", _check_deleted_partition_vs_up_sets),
    ("foundation-equals-ge-complement", _check_foundation_equals_ge),
    ("saturated-has-minimum", _check_saturated_has_minimum),
    ("saturated-partition-matches-parts", _check_saturated_partition_matches_parts),
    ("foundation-and-towers-saturated", _check_parts_saturated),
    ("tower-join-complete", _check_tower_join_complete),
    ("foundation-contraction-factor-critical", _check_foundation_contraction_critical),
    ("saturated-class-edges-present", _check_same_class_implies_edge),
    ("saturated-connected", _check_saturated_connected),
    ("allowed-edges-from-parts", _check_allowed_from_parts),
    ("matchings-product-of-parts", _check_matchings_product),
    ("foundation-unique-via-ge", _check_foundation_unique_via_ge),
    ("decomposition-round-trip", _check_round_trip),
    ("construction-foundation-minimum", _check_construction_minimum),
    ("construction-output-saturated", _check_construction_saturated),
    ("factor-critical-iff-balanced-to-exposed", _check_factor_critical_balanced),
    ("allowed-iff-circuit-iff-path", _check_allowed_circuit_path),
    ("saturated-path-iff-deletion-factorizable", _check_saturated_path_deletion),
    ("saturated-path-separator-split", _check_path_separator_split),
    ("complement-edge-new-matching-iff-path", _check_new_matching_iff_path),
    ("allowed-edges-enumeration-agreement", _check_allowed_edges_agreement),
    ("balanced-path-cross-matching-agreement", _check_cross_matching_balanced),
    ("closure-saturated-and-preserving", _check_closure_saturated_preserving),
)

CHECK_IDS: tuple[str, ...] = tuple(name for name, _ in _CHECKS)

# Subset exercised by the path-conformance acceptance criterion.
PATH_CHECK_IDS: tuple[str, ...] = (
    "exposure-partition-paths",
    "deleted-vertex-partition-paths",
    "partition-refines-subgraph-partition",
    "same-class-iff-no-saturated-path",
    "upper-components-single-class",
    "ear-ends-share-class",
    "elementary-pairwise-reachability",
    "upward-reachability",
    "combined-reachability",
    "deleted-partition-matches-up-sets",
    "factor-critical-iff-balanced-to-exposed",
    "allowed-iff-circuit-iff-path",
    "saturated-path-iff-deletion-factorizable",
    "saturated-path-separator-split",
    "complement-edge-new-matching-iff-path",
)


def _run_one(
    name: str, fn: Callable[[_TrialContext], None], ctx: _TrialContext
) -> tuple[CheckResult, bool]:
    """Run one check; the second component says whether a skip should be
    retried on the saturation closure."""
    start = time.perf_counter()

    def took() -> float:
        return (time.perf_counter() - start) * 1000.0

    try:
        fn(ctx)
    except _SkipCheck as skip:
        return CheckResult(name, "skip", skip.reason, millis=took()), skip.rerun_on_closure
    except SearchBudgetExceeded:
        return CheckResult(name, "skip", "search budget exceeded", millis=took()), False
    except _CheckFailed as failure:
        counterexample = _shrink(name, fn, ctx.graph, ctx.config)
        return CheckResult(name, "fail", failure.detail, counterexample, millis=took()), False
    except StructureViolation as violation:
        counterexample = _shrink(name, fn, ctx.graph, ctx.config)
        return CheckResult(name, "fail", str(violation), counterexample, millis=took()), False
    return CheckResult(name, "pass", millis=took()), False


def _fails(
    name: str, fn: Callable[[_TrialContext], None], graph: Graph, config: TrialConfig
) -> bool:
    if not is_factorizable(graph):
        return False
    try:
        fn(_TrialContext(graph, config))
    except (_CheckFailed, StructureViolation):
        return True
    except (_SkipCheck, SearchBudgetExceeded):
        return False
    return False


def _shrink(
    name: str,
    fn: Callable[[_TrialContext], None],
    graph: Graph,
    config: TrialConfig,
    attempt_limit: int = 400,
) -> str:
    """Greedy minimization preserving the failure, re-verified at each step."""
    current = graph
    attempts = 0
    changed = True
    while changed and attempts < attempt_limit:
        changed = False
        for e in current.sorted_edges():
            attempts += 1
            candidate = Graph(current.vertices, current.edges - {e})
            if _fails(name, fn, candidate, config):
                current = candidate
                changed = True
                break
            if attempts >= attempt_limit:
                break
        if changed or attempts >= attempt_limit:
            continue
        for pair in combinations(current.vertices, 2):
            attempts += 1
            candidate = delete_vertices(current, pair)
            if candidate.order and _fails(name, fn, candidate, config):
                current = candidate
                changed = True
                break
            if attempts >= attempt_limit:
                break
    dense = _relabel_dense(current)
    if not _fails(name, fn, dense, config):
        dense = _relabel_dense(graph)
    return render_edge_list(dense)


def run_suite(
    graph: Graph, config: TrialConfig, only: Iterable[str] | None = None
) -> SuiteReport:
    """Run every applicable check on one graph.

    Hypothesis-skipped checks are re-run on the graph's saturation closure
    (reported with an ``@closure`` suffix); ``only`` restricts the run to a
    subset of check ids.
    """
    if not is_factorizable(graph):
        raise NotFactorizableError("run_suite needs a graph with a perfect matching")
    wanted = set(CHECK_IDS if only is None else only)
    unknown = wanted - set(CHECK_IDS)
    if unknown:
        raise ValueError(f"unknown check ids: {sorted(unknown)}")
    ctx = _TrialContext(graph, config)
    results: list[CheckResult] = []
    closure_runs: list[tuple[str, Callable[[_TrialContext], None]]] = []
    for name, fn in _CHECKS:
        if name not in wanted:
            continue
        result, rerun = _run_one(name, fn, ctx)
        results.append(result)
        if rerun:
            closure_runs.append((name, fn))
    if closure_runs:
        closed, _ = saturate(graph)
        if closed != graph:
            closure_ctx = _TrialContext(closed, config)
            for name, fn in closure_runs:
                result, _ = _run_one(name, fn, closure_ctx)
                results.append(replace(result, check=f"{name}@closure"))
    return SuiteReport(_graph_text(graph), config, tuple(results))


def run_trials(
    config: TrialConfig, only: Iterable[str] | None = None
) -> list[SuiteReport]:
    """Generate and check ``config.trials`` random graphs.

    Each trial's randomness is derived from (seed, trial), so trials are
    independent and their results do not depend on execution order."""
    return [
        run_suite(random_factorizable_graph(config, t), config, only)
        for t in range(config.trials)
    ]
