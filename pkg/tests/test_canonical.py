import pytest
from hypothesis import given, settings

from cathedral.canonical import (
    allowed_edges,
    canonical_partition,
    component_leq,
    component_poset,
    factor_components,
    is_separating,
    minimum_component,
    same_class,
    up_sets,
)
from cathedral.errors import ComponentLimitError, NotFactorizableError
from cathedral.graph import Graph
from cathedral.matching import perfect_matching_union
from cathedral.serialize import hasse_dot

from helpers import C4, C5, K2, K4, P4, T, factorizable_graphs


def test_allowed_edges_fixtures():
    assert allowed_edges(P4) == frozenset({(0, 1), (2, 3)})
    assert allowed_edges(C4) == C4.edges
    assert allowed_edges(K2) == frozenset({(0, 1)})
    with pytest.raises(NotFactorizableError):
        allowed_edges(C5)


@given(factorizable_graphs())
@settings(max_examples=100)
def test_allowed_edges_equal_matching_union(g):
    assert allowed_edges(g) == perfect_matching_union(g)


def test_factor_components_fixtures():
    assert factor_components(P4).components == (frozenset({0, 1}), frozenset({2, 3}))
    assert factor_components(C4).components == (frozenset({0, 1, 2, 3}),)
    assert factor_components(T).components == (frozenset({0, 1}), frozenset({2, 3}))


@given(factorizable_graphs())
@settings(max_examples=60)
def test_components_partition_vertices_and_carry_allowed_edges(g):
    comps = factor_components(g)
    assert frozenset().union(*comps.components) == g.vertex_set if comps.components else not g.order
    for u, v in comps.allowed:
        assert comps.component_of[u] == comps.component_of[v]


def test_canonical_partition_fixtures():
    assert canonical_partition(C4).classes == (frozenset({0, 2}), frozenset({1, 3}))
    assert canonical_partition(K4).classes == tuple(frozenset({v}) for v in range(4))
    # deleting both endpoints of the only edge leaves the empty graph, which
    # is factorizable, so the two vertices land in distinct classes
    assert canonical_partition(K2).classes == (frozenset({0}), frozenset({1}))


@given(factorizable_graphs())
@settings(max_examples=60)
def test_partition_classes_match_pairwise_relation(g):
    comps = factor_components(g)
    part = canonical_partition(g, comps)
    for u in g.vertices:
        for v in g.vertices:
            assert (part.class_of[u] == part.class_of[v]) == same_class(g, comps, u, v)


def test_is_separating_cases():
    comps = factor_components(P4)
    assert is_separating(P4, comps, frozenset({0, 1}))
    assert not is_separating(P4, comps, frozenset({1, 2}))
    assert is_separating(P4, comps, frozenset())
    assert is_separating(P4, comps, P4.vertex_set)


def test_component_leq_fixtures():
    comps = factor_components(T)
    pendant = comps.components.index(frozenset({2, 3}))
    top = comps.components.index(frozenset({0, 1}))
    assert component_leq(T, comps, pendant, top)
    assert not component_leq(T, comps, top, pendant)
    p4_comps = factor_components(P4)
    assert not component_leq(P4, p4_comps, 0, 1)
    assert not component_leq(P4, p4_comps, 1, 0)


def test_component_poset_fixtures():
    poset = component_poset(T)
    assert minimum_component(poset) == 1
    assert poset.hasse == ((1, 0),)
    p4_poset = component_poset(P4)
    assert minimum_component(p4_poset) is None
    assert p4_poset.hasse == ()
    assert minimum_component(component_poset(C4)) == 0


def test_component_limit_guard():
    g = Graph(range(6), [(0, 1), (2, 3), (4, 5)])
    with pytest.raises(ComponentLimitError):
        component_poset(g, max_components=2)


def test_up_sets_fixtures():
    poset = component_poset(T)
    part = canonical_partition(T)
    us = up_sets(T, poset, part, 1)
    cls2, cls3 = part.class_of[2], part.class_of[3]
    assert us.up_components(cls2) == frozenset({0})
    assert us.up_components(cls3) == frozenset()
    assert us.up_vertices(cls2) == frozenset({0, 1})
    assert us.up_star_vertices(cls2) == frozenset({0, 1, 2})
    assert us.strict_upper_vertices() == frozenset({0, 1})
    assert us.upper_closure_vertices() == T.vertex_set

    p4_poset = component_poset(P4)
    p4_us = up_sets(P4, p4_poset, canonical_partition(P4), 0)
    assert p4_us.strict_upper_components() == frozenset()

    c4_poset = component_poset(C4)
    c4_us = up_sets(C4, c4_poset, canonical_partition(C4), 0)
    assert c4_us.strict_upper_vertices() == frozenset()


@given(factorizable_graphs())
@settings(max_examples=40)
def test_poset_laws_and_up_set_cover(g):
    comps = factor_components(g)
    poset = component_poset(g, comps)
    part = canonical_partition(g, comps)
    k = len(poset)
    for i in range(k):
        assert poset.leq[i][i]
        for j in range(k):
            if i != j:
                assert not (poset.leq[i][j] and poset.leq[j][i])
            for m in range(k):
                if poset.leq[i][j] and poset.leq[j][m]:
                    assert poset.leq[i][m]
    for base in range(k):
        us = up_sets(g, poset, part, base)
        combined: set[int] = set()
        for members in us.per_class.values():
            assert not (combined & members)
            combined |= members
        assert frozenset(combined) == us.strict_upper_components()


def test_hasse_dot_output():
    assert hasse_dot(component_poset(T)) == (
        'digraph component_order {\n'
        '  c0 [label="{0, 1}"];\n'
        '  c1 [label="{2, 3}"];\n'
        '  c1 -> c0;\n'
        '}\n'
    )
    assert "->" not in hasse_dot(component_poset(P4))
