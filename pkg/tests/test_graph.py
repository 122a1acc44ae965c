import json
from fractions import Fraction

import pytest

from curvachay.graph import find_isomorphism, graph_from_edges, is_isomorphism
from curvachay.raach import ball
from conftest import complete_graph, cycle_graph, raach


def test_basic_accessors():
    g = cycle_graph(5, weight=2)
    assert g.n == 5 and g.num_edges() == 5
    assert g.weighted_degree(0) == 4
    assert g.certified_radius(3) == float("inf")
    assert g.sphere(0, 2) == [2, 3]


def test_loops_and_bad_weights_rejected():
    with pytest.raises(ValueError):
        graph_from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        graph_from_edges(2, [(0, 1)], [0])


def test_certified_radius_in_ball():
    g = ball(raach("a:inf,b:2"), 3)
    for v in g.vertices():
        assert g.certified_radius(v) == 3 - g.dist[v]


def test_isomorphism_of_relabelled_cycle():
    g1 = cycle_graph(6)
    g2 = graph_from_edges(6, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 5), (5, 0)])
    m = find_isomorphism(g1, g2)
    assert m is not None and is_isomorphism(g1, g2, m)
    assert find_isomorphism(cycle_graph(6), complete_graph(6)) is None


def test_weights_matter_for_isomorphism():
    g1 = graph_from_edges(3, [(0, 1), (1, 2)], [1, 2])
    g2 = graph_from_edges(3, [(0, 1), (1, 2)], [2, 1])
    assert find_isomorphism(g1, g2, rooted=True) is None
    assert find_isomorphism(g1, g2, rooted=True, use_weights=False) is not None


def test_dot_and_json_dumps():
    g = ball(raach("a:3"), 1)
    dot = g.to_dot()
    assert dot.startswith("graph G {") and dot.count("--") == 3
    d = json.loads(g.to_json())
    assert d["radius"] == 1 and len(d["edges"]) == 3


def test_with_weights_symmetry_guard():
    g = ball(raach("a:inf"), 2)
    w = g.with_weights(lambda lab: 3)
    assert all(x == 3 for _, _, x in w.edges())
    with pytest.raises(ValueError, match="symmetric"):
        g.with_weights(lambda lab: 1 if lab[1] > 0 else 2)
    assert g.with_weights(m=[Fraction(2)] * g.n).m[0] == 2
