"""Finite rooted weighted graphs used as local pieces of Cayley graphs."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = ["LocalGraph", "graph_from_edges", "find_isomorphism", "is_isomorphism"]


@dataclass(frozen=True)
class LocalGraph:
    """A simple graph with vertex measure ``m`` and symmetric edge weights.

    ``radius`` is the ball radius certified around ``root``: every vertex at
    distance ``< radius`` from the root carries all of its neighbours. A
    ``radius`` of ``None`` marks a complete finite graph.

    ``labels[(u, v)]`` is the generator label of the directed edge ``u -> v``
    and ``parent``/``dist`` record the BFS tree from the root.
    """

    adj: tuple[dict, ...]
    m: tuple[Fraction, ...]
    root: int = 0
    radius: int | None = None
    labels: dict = field(default_factory=dict)
    keys: tuple = ()
    names: tuple[str, ...] = ()
    parent: tuple = ()
    dist: tuple = ()

    def __len__(self) -> int:
        return len(self.adj)

    @property
    def n(self) -> int:
        return len(self.adj)

    def vertices(self) -> range:
        return range(len(self.adj))

    def neighbours(self, x: int) -> list[int]:
        return list(self.adj[x])

    def weight(self, x: int, y: int) -> Fraction:
        return self.adj[x].get(y, Fraction(0))

    def degree(self, x: int) -> int:
        return len(self.adj[x])

    def weighted_degree(self, x: int) -> Fraction:
        return sum(self.adj[x].values(), Fraction(0))

    def edges(self):
        for u, nb in enumerate(self.adj):
            for v, w in nb.items():
                if u < v:
                    yield u, v, w

    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def has_unit_weights(self) -> bool:
        return all(w == 1 for _, _, w in self.edges()) and all(v == 1 for v in self.m)

    def certified_radius(self, x: int):
        """Radius of the ball around ``x`` that this graph holds exactly."""
        if self.radius is None:
            return float("inf")
        return self.radius - self.dist[x]

    def bfs(self, src: int, max_depth: int | None = None) -> dict[int, int]:
        d = {src: 0}
        q = deque([src])
        while q:
            u = q.popleft()
            if max_depth is not None and d[u] >= max_depth:
                continue
            for v in self.adj[u]:
                if v not in d:
                    d[v] = d[u] + 1
                    q.append(v)
        return d

    def sphere(self, x: int, k: int) -> list[int]:
        return sorted(v for v, dv in self.bfs(x, k).items() if dv == k)

    def word_to(self, v: int) -> list:
        """Edge labels along the BFS tree path from the root to ``v``."""
        out = []
        while v != self.root:
            p = self.parent[v]
            out.append(self.labels[(p, v)])
            v = p
        return out[::-1]

    def vertex_name(self, v: int) -> str:
        return self.names[v] if self.names else str(v)

    def with_weights(self, weight_of_label=None, m=None) -> "LocalGraph":
        """Copy with edge weights ``weight_of_label(label)`` and measure ``m``."""
        adj = []
        for u, nb in enumerate(self.adj):
            adj.append({v: (Fraction(weight_of_label(self.labels[(u, v)])) if weight_of_label else w)
                        for v, w in nb.items()})
        for u, nb in enumerate(adj):
            for v, w in nb.items():
                if adj[v][u] != w:
                    raise ValueError("edge weights are not symmetric")
        mm = tuple(Fraction(1) for _ in adj) if m is None else tuple(Fraction(x) for x in m)
        return LocalGraph(tuple(adj), mm, self.root, self.radius, self.labels, self.keys,
                          self.names, self.parent, self.dist)

    def to_dot(self, name: str = "G", label_name=str) -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices():
            attrs = [f'label="{self.vertex_name(v)}"']
            if v == self.root:
                attrs.append("shape=doublecircle")
            if self.m[v] != 1:
                attrs.append(f'measure="{self.m[v]}"')
            lines.append(f"  {v} [{', '.join(attrs)}];")
        for u, v, w in self.edges():
            lab = self.labels.get((u, v))
            attrs = []
            if lab is not None:
                attrs.append(f'label="{label_name(lab)}"')
            attrs.append(f'weight="{w}"')
            lines.append(f"  {u} -- {v} [{', '.join(attrs)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self, label_name=str) -> dict:
        return {
            "root": self.root,
            "radius": self.radius,
            "vertices": [self.vertex_name(v) for v in self.vertices()],
            "measure": [str(x) for x in self.m],
            "edges": [[u, v, str(w), label_name(self.labels[(u, v)]) if (u, v) in self.labels else None]
                      for u, v, w in self.edges()],
        }

    def to_json(self, label_name=str) -> str:
        return json.dumps(self.to_dict(label_name))


def graph_from_edges(n: int, edges, weights=None, m=None, root: int = 0, names=()) -> LocalGraph:
    """Complete finite graph on ``0..n-1``; BFS data computed from ``root``."""
    adj = [dict() for _ in range(n)]
    for k, (u, v) in enumerate(edges):
        if u == v:
            raise ValueError("loops are not allowed")
        w = Fraction(1) if weights is None else Fraction(weights[k])
        if w <= 0:
            raise ValueError("edge weights must be positive")
        adj[u][v] = w
        adj[v][u] = w
    parent = [None] * n
    dist = [None] * n
    dist[root] = 0
    q = deque([root])
    while q:
        u = q.popleft()
        for v in sorted(adj[u]):
            if dist[v] is None:
                dist[v] = dist[u] + 1
                parent[v] = u
                q.append(v)
    labels = {(u, v): None for u in range(n) for v in adj[u]}
    mm = tuple(Fraction(1) for _ in range(n)) if m is None else tuple(Fraction(x) for x in m)
    return LocalGraph(tuple(adj), mm, root, None, labels, tuple(range(n)), tuple(names), tuple(parent), tuple(dist))


# --------------------------------------------------------------------------
# isomorphism


def _refine(graphs, use_weights: bool, rooted: bool):
    """1-WL colour refinement run jointly on several graphs."""
    colours = []
    for g in graphs:
        dr = g.bfs(g.root) if rooted else {}
        colours.append([(g.degree(v), dr.get(v, -1), g.m[v]) for v in g.vertices()])
    previous = None
    while True:
        sigs = []
        for g, col in zip(graphs, colours):
            sigs.append([
                (col[v], tuple(sorted((col[u], g.weight(v, u) if use_weights else 1) for u in g.adj[v])))
                for v in g.vertices()
            ])
        palette = {s: i for i, s in enumerate(sorted({s for sg in sigs for s in sg}, key=repr))}
        new = [[palette[s] for s in sg] for sg in sigs]
        if len(palette) == previous:
            return new
        previous = len(palette)
        colours = new


def find_isomorphism(g1: LocalGraph, g2: LocalGraph, rooted: bool = True, use_weights: bool = True):
    """Backtracking search for a (root-preserving) isomorphism ``g1 -> g2``.

    Candidates are pruned by joint colour refinement; returns a list mapping
    vertices of ``g1`` to ``g2`` or ``None``.
    """
    if g1.n != g2.n or g1.num_edges() != g2.num_edges():
        return None
    c1, c2 = _refine([g1, g2], use_weights, rooted)
    if sorted(c1) != sorted(c2):
        return None
    by_colour: dict[int, list[int]] = {}
    for v, c in enumerate(c2):
        by_colour.setdefault(c, []).append(v)
    # connected search order starting at the root
    order, seen = [], set()
    for start in [g1.root] + list(g1.vertices()):
        if start in seen:
            continue
        seen.add(start)
        q = deque([start])
        while q:
            u = q.popleft()
            order.append(u)
            for v in sorted(g1.adj[u]):
                if v not in seen:
                    seen.add(v)
                    q.append(v)
    mapping = [-1] * g1.n
    used = [False] * g2.n

    def consistent(v: int, t: int) -> bool:
        for u, w in g1.adj[v].items():
            tu = mapping[u]
            if tu >= 0:
                if tu not in g2.adj[t]:
                    return False
                if use_weights and g2.adj[t][tu] != w:
                    return False
        mapped_nbrs = sum(1 for u in g1.adj[v] if mapping[u] >= 0)
        return mapped_nbrs == sum(1 for u in g2.adj[t] if used[u])

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        if rooted and v == g1.root:
            cands = [g2.root] if c2[g2.root] == c1[v] else []
        else:
            cands = by_colour.get(c1[v], [])
        for t in cands:
            if used[t] or (rooted and t == g2.root and v != g1.root) or not consistent(v, t):
                continue
            mapping[v] = t
            used[t] = True
            if extend(k + 1):
                return True
            mapping[v] = -1
            used[t] = False
        return False

    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, g1.n + 1000))
    try:
        ok = extend(0)
    finally:
        sys.setrecursionlimit(limit)
    return mapping if ok else None


def is_isomorphism(g1: LocalGraph, g2: LocalGraph, mapping, use_weights: bool = True) -> bool:
    """Check that ``mapping`` is a bijection preserving adjacency (and weights)."""
    if g1.n != g2.n or sorted(mapping) != list(range(g2.n)):
        return False
    if g1.num_edges() != g2.num_edges():
        return False
    for u, v, w in g1.edges():
        a, b = mapping[u], mapping[v]
        if b not in g2.adj[a]:
            return False
        if use_weights and g2.adj[a][b] != w:
            return False
    return True
