from fractions import Fraction

import pytest

from curvachay import ball, graph_from_edges, parse_presentation, parse_raach_body


@pytest.fixture
def k4_group():
    return parse_presentation("group <a,b | a^4, b^-1 a^2>")


def raach(text):
    return parse_raach_body(text).graph


def tree(d):
    return raach(",".join(f"s{i}:2" for i in range(1, d + 1)))


def triangle_tree(d0):
    return raach(",".join(f"s{i}:3" for i in range(1, d0 + 1)))


def cycle_graph(n, weight=1):
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)], [weight] * n)


def complete_graph(n):
    return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def root_edge(g, letter):
    """The ball vertex reached from the root along ``letter``."""
    return next(v for v in g.adj[g.root] if g.labels[(g.root, v)] == letter)


F = Fraction
