import random

import pytest

from curvachay.graph import find_isomorphism, graph_from_edges, is_isomorphism
from curvachay.raach import BallTooLarge, GroupElement, RaachGroup, ball
from conftest import raach, triangle_tree


def test_inverse_of_order3_letter_is_square():
    grp = RaachGroup(raach("a:3"))
    assert grp.normal_form([(0, -1)]) == grp.normal_form([(0, 1), (0, 1)])
    assert grp.normal_form([(0, -1)]).syllables == ((0, 2),)


def test_commuting_letters_sort():
    grp = RaachGroup(raach("a:inf,b:inf; commute (a,b)"))
    assert grp.normal_form([(0, 1), (1, 1)]) == grp.normal_form([(1, 1), (0, 1)])
    assert grp.normal_form([(1, 1), (0, 1)]).syllables == ((0, 1), (1, 1))


def test_free_product_words_differ():
    grp = RaachGroup(raach("a:2,b:2"))
    ab3 = grp.normal_form([(0, 1), (1, 1)] * 3)
    ba3 = grp.normal_form([(1, 1), (0, 1)] * 3)
    assert ab3 != ba3
    assert grp.length(ab3) == 6


def test_identity_times_letter_and_involution():
    grp = RaachGroup(raach("s:2"))
    x = grp.multiply(grp.identity, (0, 1))
    assert x.syllables == ((0, 1),)
    assert grp.multiply(x, (0, 1)).is_identity()


def test_long_walk_in_z2_matches_integer_arithmetic():
    grp = RaachGroup(raach("a:inf,b:inf; commute (a,b)"))
    rng = random.Random(7)
    x = grp.identity
    pos = [0, 0]
    for _ in range(1000):
        g, e = rng.randrange(2), rng.choice((1, -1))
        x = grp.multiply(x, (g, e))
        pos[g] += e
    expect = tuple((g, k) for g, k in enumerate(pos) if k)
    assert x.syllables == expect
    assert grp.length(x) == abs(pos[0]) + abs(pos[1]) <= 1000


def test_exponent_representatives():
    grp = RaachGroup(raach("a:4"))
    assert grp.normal_form([(0, -1)]).syllables == ((0, 3),)
    assert grp.word_of(grp.normal_form([(0, -1)])) == ((0, -1),)
    assert grp.word_of(GroupElement(((0, 2),))) == ((0, 1), (0, 1))


def test_inverse_and_product():
    grp = RaachGroup(raach("a:3,b:inf,c:4; commute (a,c)"))
    rng = random.Random(1)
    for _ in range(50):
        w = [(rng.randrange(3), rng.choice((1, -1))) for _ in range(8)]
        x = grp.normal_form(w)
        assert grp.product(x, grp.inverse(x)).is_identity()


def test_path_ball_for_two_involutions():
    g = ball(raach("s1:2,s2:2"), 2)
    assert g.n == 5 and g.num_edges() == 4
    path = graph_from_edges(5, [(0, 1), (1, 2), (0, 3), (3, 4)])
    assert find_isomorphism(g, path, rooted=True) is not None


def test_order4_ball_is_square():
    g = ball(raach("a:4"), 2)
    assert g.n == 4 and g.num_edges() == 4


def test_triangle_tree_first_sphere():
    g = ball(triangle_tree(2), 1)
    assert g.n == 5
    s1 = g.adj[0]
    inner = [(u, v) for u in s1 for v in s1 if u < v and v in g.adj[u]]
    assert len(inner) == 2
    assert {g.labels[(0, u)][0] for u, _ in inner} == {0, 1}


def test_ball_is_closed_below_radius():
    h = raach("a:3,b:inf,c:2; commute (a,b)")
    g = ball(h, 3)
    letters = h.letters()
    for v in g.vertices():
        if g.dist[v] < 3:
            assert g.degree(v) == len(letters) - sum(1 for g_, e in letters if h.orders[g_] == 2 and e == -1)


def test_vertex_transitivity_of_ball():
    h = raach("a:3,b:4,c:2,d:inf; commute (a,b),(c,d)")
    g = ball(h, 4)
    rng = random.Random(3)
    inner = [v for v in g.vertices() if g.dist[v] <= 2]
    e2 = _rooted_ball(g, g.root, 2)
    for v in rng.sample(inner, 20):
        assert find_isomorphism(_rooted_ball(g, v, 2), e2, rooted=True) is not None


def _rooted_ball(g, x, r):
    keep = sorted(g.bfs(x, r))
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u, v, _ in g.edges() if u in pos and v in pos]
    return graph_from_edges(len(keep), edges, root=pos[x])


def test_ball_caps():
    with pytest.raises(ValueError, match="cap"):
        ball(raach("a:inf"), 6)
    with pytest.raises(BallTooLarge):
        ball(raach("a:inf,b:inf,c:inf"), 5, vertex_cap=100)


def test_word_to_reaches_vertex():
    h = raach("a:3,b:inf; commute (a,b)")
    g = ball(h, 3)
    grp = RaachGroup(h)
    for v in g.vertices():
        assert grp.normal_form(g.word_to(v)) == g.keys[v]
        assert len(g.word_to(v)) == g.dist[v]


def test_explicit_isomorphism_check_rejects_bad_map():
    g = ball(raach("a:4"), 2)
    assert is_isomorphism(g, g, list(range(4)))
    assert not is_isomorphism(g, g, [0, 3, 2, 1])
