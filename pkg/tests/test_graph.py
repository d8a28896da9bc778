"""Graph and matching primitives."""

from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import X, Y, biclique, graphs, lopsided_blocks, path4, twin_blocks
from satmatch.errors import InputError
from satmatch.graph import BipartiteGraph, Matching, Side, Vertex

PROPERTY_SETTINGS = settings(max_examples=200, deadline=None)


def test_side_opposite():
    assert Side.X.opposite is Side.Y
    assert Side.Y.opposite is Side.X


def test_vertex_repr_reads_like_a_name():
    assert repr(X(3)) == "x[3]"
    assert repr(Y(0)) == "y[0]"


def test_construction_sorts_and_freezes_adjacency():
    g = BipartiteGraph(2, 3, [(1, 2), (0, 1), (0, 0), (1, 0)])
    assert g.x_adj == ((0, 1), (0, 2))
    assert g.y_adj == ((0, 1), (0,), (1,))
    assert g.edge_count == 4
    assert list(g.edges()) == [(0, 0), (0, 1), (1, 0), (1, 2)]


@pytest.mark.parametrize(
    "x_count,y_count,edges",
    [
        (-1, 2, []),
        (2, -1, []),
        (2, 2, [(2, 0)]),
        (2, 2, [(0, 2)]),
        (2, 2, [(-1, 0)]),
        (2, 2, [(0, 0), (0, 0)]),
    ],
)
def test_construction_rejects_bad_input(x_count, y_count, edges):
    with pytest.raises(InputError):
        BipartiteGraph(x_count, y_count, edges)


def test_degree_and_neighborhood():
    g = path4()
    assert g.degree(X(0)) == 2
    assert g.degree(X(1)) == 1
    assert g.degree(Y(0)) == 1
    assert g.neighborhood(X(0)) == (Y(0), Y(1))
    assert g.neighborhood(Y(1)) == (X(0), X(1))


def test_neighborhood_of_set():
    g = path4()
    assert g.neighborhood_of_set([Y(0), Y(1)]) == (X(0), X(1))
    assert g.neighborhood_of_set([]) == ()
    with pytest.raises(InputError):
        g.neighborhood_of_set([X(0), Y(0)])


def test_check_vertex_bounds():
    g = path4()
    with pytest.raises(InputError):
        g.check_vertex(X(2))
    with pytest.raises(InputError):
        g.check_vertex(Y(-1))


def test_vertices_iterates_in_index_order():
    g = path4()
    assert list(g.vertices(Side.X)) == [X(0), X(1)]
    assert list(g.vertices(Side.Y)) == [Y(0), Y(1)]


def test_components_of_twin_blocks():
    pieces = twin_blocks().components()
    assert len(pieces) == 2
    assert pieces[0].x_vertices == (0, 1)
    assert pieces[0].y_vertices == (0, 1)
    assert pieces[1].x_vertices == (2, 3)
    assert pieces[1].y_vertices == (2, 3)
    for piece in pieces:
        assert piece.graph.is_biclique()
        assert piece.graph.x_count == piece.graph.y_count == 2


def test_components_pick_up_isolated_vertices():
    g = BipartiteGraph(2, 2, [(0, 0)])
    pieces = g.components()
    # x0-y0 edge, then isolated x1, then isolated y1
    assert [(p.x_vertices, p.y_vertices) for p in pieces] == [
        ((0,), (0,)),
        ((1,), ()),
        ((), (1,)),
    ]


def test_biclique_predicates():
    assert biclique(2, 3).is_biclique()
    assert not biclique(2, 3).is_balanced_biclique()
    assert biclique(3, 3).is_balanced_biclique()
    assert not path4().is_biclique()
    # an empty graph with no vertices is vacuously a biclique
    assert BipartiteGraph(0, 0, []).is_biclique()


def test_connectivity():
    assert path4().is_connected()
    assert not twin_blocks().is_connected()
    assert not lopsided_blocks().is_connected()
    assert not BipartiteGraph(0, 0, []).is_connected()
    assert not BipartiteGraph(1, 1, []).is_connected()


def test_graph_equality_ignores_edge_order():
    a = BipartiteGraph(2, 2, [(0, 0), (1, 1)])
    b = BipartiteGraph(2, 2, [(1, 1), (0, 0)])
    assert a == b
    assert hash(a) == hash(b)
    assert a != BipartiteGraph(2, 2, [(0, 0)])


def test_matching_from_pairs_and_accessors():
    g = path4()
    m = Matching.from_pairs(g, [(0, 0)])
    assert m.partner(X(0)) == Y(0)
    assert m.partner(Y(0)) == X(0)
    assert m.partner(X(1)) is None
    assert m.pairs() == [(0, 0)]
    assert m.size == 1
    assert m.matched_set(Side.X) == frozenset({0})
    assert m.matched_set(Side.Y) == frozenset({0})
    assert not m.is_perfect


def test_matching_rejects_bad_pairs():
    g = path4()
    with pytest.raises(InputError):
        Matching.from_pairs(g, [(1, 0)])  # not an edge
    with pytest.raises(InputError):
        Matching.from_pairs(g, [(0, 0), (0, 1)])  # x0 twice
    with pytest.raises(InputError):
        Matching.from_pairs(g, [(0, 1), (1, 1)])  # y1 twice


def test_matching_equality():
    g = biclique(2, 2)
    a = Matching.from_pairs(g, [(0, 0), (1, 1)])
    b = Matching.from_pairs(g, [(1, 1), (0, 0)])
    assert a == b
    assert hash(a) == hash(b)
    assert a != Matching.from_pairs(g, [(0, 1), (1, 0)])
    assert a.is_perfect


def test_empty_matching():
    g = path4()
    m = Matching.empty(g)
    assert m.size == 0
    assert m.pairs() == []
    assert m.matched_set(Side.X) == frozenset()


@given(graphs())
@PROPERTY_SETTINGS
def test_components_partition_the_graph(g: BipartiteGraph):
    pieces = g.components()
    seen_x = [i for p in pieces for i in p.x_vertices]
    seen_y = [j for p in pieces for j in p.y_vertices]
    assert sorted(seen_x) == list(range(g.x_count))
    assert sorted(seen_y) == list(range(g.y_count))
    assert sum(p.graph.edge_count for p in pieces) == g.edge_count


@given(graphs())
@PROPERTY_SETTINGS
def test_component_graphs_preserve_adjacency(g: BipartiteGraph):
    for piece in g.components():
        for xi_local, row in enumerate(piece.graph.x_adj):
            xi = piece.x_vertices[xi_local]
            mapped = tuple(piece.y_vertices[j] for j in row)
            assert mapped == g.x_adj[xi]
