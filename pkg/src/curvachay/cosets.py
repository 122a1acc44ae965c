"""Coset enumeration for finite groups and the Cayley graphs it produces.

The enumerator follows the HLT strategy with lookahead. Cosets of the
trivial subgroup are group elements, so a closed table is the right regular
action of the whole group. Coset 0 is the identity; after completion cosets
are renumbered in BFS order over the columns ``s_0, s_0^-1, s_1, ...``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .graph import LocalGraph
from .presentation import Letter, Presentation

__all__ = [
    "CosetBudgetExceeded",
    "CosetTable",
    "todd_coxeter",
    "cayley_from_cosets",
    "generator_classes",
    "quotient_map",
    "VertexMap",
]


class CosetBudgetExceeded(RuntimeError):
    """Enumeration did not close within the coset budget."""


def _col(letter: Letter) -> int:
    g, e = letter
    return 2 * g + (0 if e > 0 else 1)


def _letter(col: int) -> Letter:
    return (col // 2, 1 if col % 2 == 0 else -1)


@dataclass(frozen=True)
class CosetTable:
    """Closed coset table; ``action[c][k]`` is coset ``k`` times column letter ``c``."""

    generators: tuple[str, ...]
    action: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.action[0]) if self.action else 1

    def __len__(self) -> int:
        return self.n

    def act(self, coset: int, letter: Letter) -> int:
        return self.action[_col(letter)][coset]

    def trace(self, coset: int, word) -> int:
        for letter in word:
            coset = self.act(coset, letter)
        return coset

    def columns(self) -> list[Letter]:
        return [_letter(c) for c in range(len(self.action))]

    def is_closed_under(self, relators) -> bool:
        return all(self.trace(c, r) == c for c in range(self.n) for r in relators)

    def to_dict(self) -> dict:
        cols = {}
        for c, row in enumerate(self.action):
            g, e = _letter(c)
            cols[self.generators[g] + ("" if e > 0 else "^-1")] = list(row)
        return {"generators": list(self.generators), "cosets": self.n, "action": cols}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class _Enumerator:
    def __init__(self, ngens: int, relators, max_cosets: int):
        self.ncols = 2 * ngens
        self.rels = [[_col(l) for l in r] for r in relators if r]
        self.max = max_cosets
        self.table = [[-1] * self.ncols]
        self.p = [0]
        self.live = 1

    class Full(Exception):
        pass

    def rep(self, c: int) -> int:
        p = self.p
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def define(self, c: int, x: int):
        if self.live >= self.max:
            raise self.Full
        n = len(self.table)
        self.table.append([-1] * self.ncols)
        self.p.append(n)
        self.live += 1
        self.table[c][x] = n
        self.table[n][x ^ 1] = c

    def _merge(self, k: int, l: int, queue: list):
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.p[l] = k
        self.live -= 1
        queue.append(l)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        t = self.table
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = t[e][x]
                if f < 0:
                    continue
                t[f][x ^ 1] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if t[e1][x] >= 0:
                    self._merge(f1, t[e1][x], queue)
                elif t[f1][x ^ 1] >= 0:
                    self._merge(e1, t[f1][x ^ 1], queue)
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1

    def scan(self, a: int, w, fill: bool):
        t = self.table
        f, i, b, j = a, 0, a, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] >= 0:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][w[j] ^ 1] >= 0:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, w[i])

    def lookahead(self):
        for c in range(len(self.table)):
            if self.p[c] != c:
                continue
            for r in self.rels:
                if self.p[c] != c:
                    break
                self.scan(c, r, fill=False)

    def run(self):
        alpha = 0
        while alpha < len(self.table):
            if self.p[alpha] == alpha:
                try:
                    for r in self.rels:
                        if self.p[alpha] != alpha:
                            break
                        self.scan(alpha, r, fill=True)
                    if self.p[alpha] == alpha:
                        for x in range(self.ncols):
                            if self.table[alpha][x] < 0:
                                self.define(alpha, x)
                except self.Full:
                    before = self.live
                    self.lookahead()
                    if self.live >= before and self.live >= self.max:
                        raise CosetBudgetExceeded(
                            f"coset enumeration exceeded {self.max} cosets; the group may be infinite or large")
                    continue
            alpha += 1

    def standardized(self) -> list[list[int]]:
        order = {0: 0}
        q = deque([0])
        while q:
            c = q.popleft()
            for x in range(self.ncols):
                d = self.rep(self.table[c][x])
                if d not in order:
                    order[d] = len(order)
                    q.append(d)
        action = [[0] * len(order) for _ in range(self.ncols)]
        for c, k in order.items():
            for x in range(self.ncols):
                action[x][k] = order[self.rep(self.table[c][x])]
        return action


def todd_coxeter(p: Presentation, max_cosets: int = 100_000) -> CosetTable:
    """Enumerate the elements of the finite group presented by ``p``.

    Raises :class:`CosetBudgetExceeded` if more than ``max_cosets`` live
    cosets would be needed.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    en = _Enumerator(len(p.generators), p.relators, max_cosets)
    en.run()
    action = en.standardized()
    table = CosetTable(tuple(p.generators), tuple(tuple(r) for r in action))
    if not table.is_closed_under(p.relators):
        raise AssertionError("coset table is not closed under the relators")
    return table


def generator_classes(t: CosetTable):
    """Group the letters of ``S*`` by the element they represent.

    Returns ``(classes, collapsed)``: ``classes`` is a list of tuples of
    letters acting identically and non-trivially; ``collapsed`` lists the
    letters acting as the identity.
    """
    ident = tuple(range(t.n))
    classes: dict[tuple, list[Letter]] = {}
    collapsed = []
    for c, row in enumerate(t.action):
        if row == ident:
            collapsed.append(_letter(c))
        else:
            classes.setdefault(row, []).append(_letter(c))
    return [tuple(v) for v in classes.values()], collapsed


def cayley_from_cosets(t: CosetTable, weights=None) -> LocalGraph:
    """Simple Cayley graph of the enumerated group.

    Collapsed letters give no edge; letters with equal action give one edge.
    The label of ``u -> v`` is the tuple of letters mapping ``u`` to ``v``, so
    its length is the merge multiplicity. ``weights`` maps such a tuple to
    an edge weight (default 1).
    """
    classes, _ = generator_classes(t)
    n = t.n
    adj = [dict() for _ in range(n)]
    labels = {}
    for cls in classes:
        w = Fraction(1) if weights is None else Fraction(weights(cls))
        row = t.action[_col(cls[0])]
        for u in range(n):
            v = row[u]
            if v in adj[u] and adj[u][v] != w:
                raise ValueError("weighting scheme is not inversion invariant")
            adj[u][v] = w
            adj[v][u] = w
            labels[(u, v)] = cls
    parent = [None] * n
    dist = [None] * n
    dist[0] = 0
    q = deque([0])
    while q:
        u = q.popleft()
        for v in sorted(adj[u]):
            if dist[v] is None:
                dist[v] = dist[u] + 1
                parent[v] = u
                q.append(v)
    return LocalGraph(tuple(adj), tuple(Fraction(1) for _ in range(n)), 0, None, labels,
                      tuple(range(n)), (), tuple(parent), tuple(dist))


@dataclass(frozen=True)
class VertexMap:
    """Vertex map of the canonical quotient, with its Lipschitz certificate."""

    images: tuple[int, ...]
    lipschitz: bool
    surjective: bool

    def __getitem__(self, v: int) -> int:
        return self.images[v]

    def __len__(self) -> int:
        return len(self.images)


def _first_letter(label):
    # coset-graph labels are tuples of letters, ball labels are letters
    return label[0] if isinstance(label[0], tuple) else label


def quotient_map(p: Presentation, p2: Presentation, domain, codomain: CosetTable) -> VertexMap:
    """The canonical map ``[w]_R -> [w]_R'`` on a finite domain.

    ``domain`` is a :class:`LocalGraph` with BFS labels (a ball or a coset
    Cayley graph) or a :class:`CosetTable`. The map is checked to be
    1-Lipschitz on every domain edge, which bounds all pairwise distances.
    """
    if tuple(p.generators) != tuple(p2.generators) or tuple(codomain.generators) != tuple(p.generators):
        raise ValueError("presentations must share the alphabet")
    if not p.relator_set() <= p2.relator_set():
        raise ValueError("relators of the source are not contained in the target's relators")
    if isinstance(domain, CosetTable):
        domain = cayley_from_cosets(domain)
    images = [0] * domain.n
    for v in sorted(domain.vertices(), key=lambda v: domain.dist[v]):
        if v == domain.root:
            continue
        par = domain.parent[v]
        images[v] = codomain.trace(images[par], [_first_letter(domain.labels[(par, v)])])
    cg = cayley_from_cosets(codomain)
    lip = all(images[u] == images[v] or images[v] in cg.adj[images[u]] for u, v, _ in domain.edges())
    return VertexMap(tuple(images), lip, set(images) == set(range(codomain.n)))
