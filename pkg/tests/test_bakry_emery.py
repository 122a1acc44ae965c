from fractions import Fraction

import pytest

from curvachay.bakry_emery import (
    bakry_emery,
    curvature_matrix,
    curvature_matrix_closed_form,
)
from curvachay.graph import graph_from_edges
from curvachay.laplacian import NON_NORMALIZED, NORMALIZED, InsufficientRadius, gamma, gamma2
from curvachay.raach import ball
from conftest import complete_graph, cycle_graph, raach, tree, triangle_tree

F = Fraction


def test_k2():
    res = bakry_emery(complete_graph(2), 0)
    assert res.exact == 2


def test_k4_no_schur_step():
    g = complete_graph(4)
    cm = curvature_matrix(g, 0)
    assert cm.s2 == ()
    assert bakry_emery(g, 0).exact == 3


def test_hypercube_q3():
    g = ball(raach("a:2,b:2,c:2; commute (a,b),(b,c),(a,c)"), 3)
    assert bakry_emery(g, 0, NON_NORMALIZED).exact == 2


@pytest.mark.parametrize("d", range(2, 9))
def test_regular_tree_normalized(d):
    g = ball(tree(d), 2)
    res = bakry_emery(g, 0, NORMALIZED)
    assert res.exact == F(2, d) - 1


@pytest.mark.parametrize("d0", [2, 3, 4])
def test_triangle_tree_non_normalized(d0):
    g = ball(triangle_tree(d0), 2)
    assert bakry_emery(g, 0, NON_NORMALIZED).exact == F(5, 2) - 2 * d0
    assert bakry_emery(g, 0, NORMALIZED).exact == F(5, 4 * d0) - 1


def test_five_cycle_matches_integer_line():
    # the edge inside the 2-sphere never enters Γ₂, so C5 looks like Z at x
    g = cycle_graph(5)
    assert bakry_emery(g, 0).exact == 0
    f = {0: F(0), 1: F(1), 2: F(2), 3: F(-2), 4: F(-1)}
    assert gamma2(g, NON_NORMALIZED, f, f, 0) == 0 < gamma(g, NON_NORMALIZED, f, f, 0)


def test_closed_form_equals_schur_route():
    graphs = [ball(raach(t), 2) for t in ("a:3,b:2; commute (a,b)", "a:4,b:inf", "a:inf,b:inf; commute (a,b)",
                                            "a:2,b:2,c:3; commute (a,b),(b,c)")]
    graphs += [cycle_graph(5), complete_graph(5)]
    for g in graphs:
        assert (curvature_matrix(g, 0).a == curvature_matrix_closed_form(g, 0)).all()


def test_path_leaf_is_one_by_one():
    g = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    cm = curvature_matrix(g, 0)
    assert cm.a.shape == (1, 1)
    assert cm.a[0, 0] == curvature_matrix_closed_form(g, 0)[0, 0]


def test_witness_attains_and_random_functions_respect_bound():
    g = ball(raach("a:3,b:4; commute (a,b)"), 2)
    res = bakry_emery(g, 0, NORMALIZED, checks=100, seed=3)
    assert abs(res.checks["witness_gap"]) < 1e-9
    assert res.checks["random_min"] >= -1e-9


def test_needs_two_ball():
    g = ball(raach("a:inf"), 2)
    with pytest.raises(InsufficientRadius):
        bakry_emery(g, g.sphere(0, 1)[0])


def test_s2_block_is_positive_diagonal():
    g = ball(raach("a:3,b:inf; commute (a,b)"), 2)
    cm = curvature_matrix(g, 0, NORMALIZED)
    k = cm.n
    block = cm.gamma2[k:, k:]
    assert all(block[i, j] == 0 for i in range(len(cm.s2)) for j in range(len(cm.s2)) if i != j)
    assert all(block[i, i] > 0 for i in range(len(cm.s2)))


def test_json_shape():
    res = bakry_emery(complete_graph(3), 0)
    d = res.to_dict()
    assert d["value_rational"] == "5/2"
    assert set(d) == {"value_rational", "value_float", "witness"}
