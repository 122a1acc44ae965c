"""Invariants checked on generated inputs."""

import random
from collections import deque
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from curvachay.bakry_emery import bakry_emery
from curvachay.cosets import cayley_from_cosets, todd_coxeter
from curvachay.graph import graph_from_edges
from curvachay.laplacian import NON_NORMALIZED, NORMALIZED, WEIGHTED, gamma, gamma2, laplacian_matrix, random_walk
from curvachay.ollivier import kappa_p_pieces
from curvachay.presentation import INF, DefiningGraph, parse_presentation
from curvachay.raach import RaachGroup, ball
from curvachay.transport import wasserstein_w1

F = Fraction
ORDERS = (2, 3, 4, INF)


@st.composite
def defining_graphs(draw, max_gens=3):
    n = draw(st.integers(1, max_gens))
    orders = tuple(draw(st.sampled_from(ORDERS)) for _ in range(n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = tuple(p for p in pairs if draw(st.booleans()))
    return DefiningGraph(tuple("abc"[:n]), orders, edges)


@st.composite
def graphs_with_words(draw):
    h = draw(defining_graphs())
    letter = st.tuples(st.integers(0, len(h) - 1), st.sampled_from((1, -1)))
    return h, draw(st.lists(letter, max_size=14)), draw(st.lists(letter, max_size=14))


@st.composite
def connected_graphs(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    edges = [(draw(st.integers(0, i - 1)), i) for i in range(1, n)]
    extra = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges and (j, i) not in edges]
    edges += [e for e in extra if draw(st.booleans())]
    weights = [draw(st.integers(1, 4)) for _ in edges]
    return graph_from_edges(n, edges, weights)


def inverse_word(w):
    return [(g, -e) for g, e in reversed(w)]


def bfs_distances(g):
    out = {}
    for s in g.vertices():
        d = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            for v in g.adj[u]:
                if v not in d:
                    d[v] = d[u] + 1
                    q.append(v)
        out[s] = d
    return out


@given(graphs_with_words())
def test_normal_form_is_a_group_law(data):
    h, u, v = data
    grp = RaachGroup(h)
    x = grp.normal_form(u)
    assert grp.normal_form(grp.word_of(x)) == x
    assert grp.normal_form(u + inverse_word(u)) == grp.identity
    assert grp.normal_form(u + v) == grp.normal_form(list(grp.word_of(x)) + v)
    assert grp.length(x) <= len(u)


@given(connected_graphs(), st.sampled_from([NON_NORMALIZED, NORMALIZED, WEIGHTED, random_walk(F(1, 3))]))
def test_laplacian_rows_sum_to_zero(g, kind):
    m = laplacian_matrix(g, kind)
    assert all(sum(row) == 0 for row in m)


@st.composite
def measure_pairs(draw):
    g = draw(connected_graphs())
    def mu():
        raw = [draw(st.integers(0, 5)) for _ in range(g.n)]
        if not any(raw):
            raw[0] = 1
        total = sum(raw)
        return {v: F(r, total) for v, r in enumerate(raw) if r}
    return g, mu(), mu()


@given(measure_pairs())
def test_transport_primal_equals_dual(data):
    g, mu, nu = data
    dist = bfs_distances(g)
    res = wasserstein_w1(mu, nu, dist)
    assert res.value == res.dual_value == res.potential_value
    assert res.certified
    assert wasserstein_w1(nu, mu, dist).value == res.value


@settings(max_examples=30, deadline=None)
@given(defining_graphs(), st.randoms(use_true_random=False))
def test_bakry_emery_inequality_for_random_functions(h, rnd):
    g = ball(h, 2)
    k = bakry_emery(g, g.root, NON_NORMALIZED, checks=0).value
    for _ in range(5):
        f = {v: F(rnd.randint(-6, 6)) for v in g.vertices()}
        lhs = gamma2(g, NON_NORMALIZED, f, f, g.root)
        rhs = gamma(g, NON_NORMALIZED, f, f, g.root)
        assert float(lhs) >= k * float(rhs) - 1e-9


FINITE = [
    "group <a | a^5>",
    "group <a,b | a^2, b^2, (a b)^4>",
    "group <a,b | a^3, b^2, a^-1 b^-1 a b>",
    "group <a,b | a^4, b^2, b a b a>",
    "group <a,b | a^4, b^4, a^2 b^-2, b^-1 a b a>",
]


@settings(max_examples=len(FINITE), deadline=None)
@given(st.sampled_from(FINITE))
def test_cayley_graphs_have_constant_curvature(text):
    g = cayley_from_cosets(todd_coxeter(parse_presentation(text)))
    ks = [bakry_emery(g, x, NON_NORMALIZED, checks=0).value for x in g.vertices()]
    assert max(ks) - min(ks) <= 1e-9


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(defining_graphs(max_gens=2), st.integers(0, 10**6))
def test_kappa_p_is_concave_with_at_most_three_pieces(h, seed):
    g = ball(h, 5)
    rng = random.Random(seed)
    x = rng.choice([v for v in g.vertices() if g.dist[v] <= 1])
    y = rng.choice(sorted(g.adj[x]))
    lines, concave = kappa_p_pieces(g, x, y)
    assert concave
    assert len(lines) <= 3
