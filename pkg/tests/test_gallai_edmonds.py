from hypothesis import given, settings

from cathedral.gallai_edmonds import gallai_edmonds
from cathedral.graph import delete_vertices
from cathedral.matching import matching_number

from helpers import C5, P4, T, factorizable_graphs, graphs
from oracles import brute_matching_number


def test_pendant_fixture_deletions():
    ge = gallai_edmonds(delete_vertices(T, {2}))
    assert (ge.d, ge.a, ge.c) == (frozenset({3}), frozenset(), frozenset({0, 1}))
    ge = gallai_edmonds(delete_vertices(T, {3}))
    assert (ge.d, ge.a, ge.c) == (frozenset({0, 1, 2}), frozenset(), frozenset())


def test_factorizable_graph_is_all_inner():
    ge = gallai_edmonds(P4)
    assert (ge.d, ge.a, ge.c) == (frozenset(), frozenset(), frozenset({0, 1, 2, 3}))


def test_odd_cycle_all_exposable():
    ge = gallai_edmonds(C5)
    assert ge.d == C5.vertex_set and not ge.a and not ge.c


@given(graphs())
@settings(max_examples=80)
def test_partition_and_definition(g):
    ge = gallai_edmonds(g)
    assert ge.d | ge.a | ge.c == g.vertex_set
    assert not (ge.d & ge.a) and not (ge.d & ge.c) and not (ge.a & ge.c)
    nu = brute_matching_number(g)
    for v in g.vertices:
        exposable = brute_matching_number(delete_vertices(g, (v,))) == nu
        assert (v in ge.d) == exposable


@given(factorizable_graphs())
@settings(max_examples=40)
def test_factorizable_deletion_never_isolates_matching_number(g):
    # deleting one vertex of a factorizable graph drops the matching number
    for v in g.vertices:
        assert matching_number(delete_vertices(g, (v,))) == g.order // 2 - 1
