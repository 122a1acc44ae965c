"""Normal forms for RAACH elements and balls in their Cayley graphs.

Elements are stored as syllable sequences ``((generator, exponent), ...)``.
Exponents of finite-order generators live in ``1..ord-1``. The stored
sequence is reduced (no two syllables of one generator can be shuffled
together) and lexicographically least among its shuffle-equivalent
rearrangements, so equal elements have equal syllable tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import LocalGraph
from .presentation import INF, DefiningGraph, Letter, Presentation, Word

__all__ = [
    "GroupElement",
    "RaachGroup",
    "BallTooLarge",
    "normal_form",
    "multiply",
    "ball",
    "DEFAULT_RADIUS_CAP",
    "DEFAULT_VERTEX_CAP",
]

DEFAULT_RADIUS_CAP = 5
DEFAULT_VERTEX_CAP = 2_000_000


class BallTooLarge(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class GroupElement:
    syllables: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables


class RaachGroup:
    """Word arithmetic in the RAACH with defining graph ``graph``."""

    def __init__(self, graph: DefiningGraph):
        self.graph = graph
        n = len(graph)
        self._commute = [[graph.commute(i, j) for j in range(n)] for i in range(n)]

    @classmethod
    def of(cls, p: Presentation | DefiningGraph) -> "RaachGroup":
        if isinstance(p, DefiningGraph):
            return cls(p)
        if p.graph is None:
            raise ValueError("normal forms need a raach presentation")
        return cls(p.graph)

    identity = GroupElement()

    def _reduce(self, g: int, e: int) -> int:
        o = self.graph.orders[g]
        return e if o == INF else e % o

    def _canonical(self, syl: list) -> GroupElement:
        out = []
        rest = list(syl)
        com = self._commute
        while rest:
            best = None
            for i, (gi, _) in enumerate(rest):
                if best is not None and gi >= rest[best][0]:
                    continue
                if all(com[gj][gi] for gj, _ in rest[:i]):
                    best = i
            out.append(rest.pop(best))
        return GroupElement(tuple(out))

    def multiply(self, x: GroupElement, letter: Letter) -> GroupElement:
        """Normal form of ``x * letter`` (letter exponent may be any integer)."""
        h, e = letter
        syl = list(x.syllables)
        com = self._commute
        for i in range(len(syl) - 1, -1, -1):
            gi, ei = syl[i]
            if gi == h:
                new = self._reduce(h, ei + e)
                if new == 0:
                    del syl[i]
                else:
                    syl[i] = (h, new)
                return self._canonical(syl)
            if not com[gi][h]:
                break
        new = self._reduce(h, e)
        if new != 0:
            syl.append((h, new))
        return self._canonical(syl)

    def normal_form(self, word) -> GroupElement:
        x = self.identity
        for letter in word:
            x = self.multiply(x, letter)
        return x

    def product(self, x: GroupElement, y: GroupElement) -> GroupElement:
        for g, e in y.syllables:
            x = self.multiply(x, (g, e))
        return x

    def inverse(self, x: GroupElement) -> GroupElement:
        return self.normal_form(self.word_of(x, inverse=True))

    def word_of(self, x: GroupElement, inverse: bool = False) -> Word:
        """A word of minimal letter count representing ``x`` (or its inverse)."""
        letters: list[Letter] = []
        syl = reversed(x.syllables) if inverse else x.syllables
        for g, e in syl:
            e = -e if inverse else e
            o = self.graph.orders[g]
            if o != INF:
                e %= o
                if e > o / 2:
                    e -= o
            letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return tuple(letters)

    def length(self, x: GroupElement) -> int:
        return len(self.word_of(x))

    def format(self, x: GroupElement) -> str:
        if x.is_identity():
            return "e"
        parts = []
        for g, e in x.syllables:
            nm = self.graph.generators[g]
            parts.append(nm if e == 1 else f"{nm}^{e}")
        return " ".join(parts)


def normal_form(p: Presentation, word) -> GroupElement:
    return RaachGroup.of(p).normal_form(word)


def multiply(p: Presentation, g: GroupElement, s: Letter) -> GroupElement:
    return RaachGroup.of(p).multiply(g, s)


def ball(p: Presentation | DefiningGraph, radius: int, radius_cap: int = DEFAULT_RADIUS_CAP,
         vertex_cap: int = DEFAULT_VERTEX_CAP) -> LocalGraph:
    """The ball ``B_radius(e)`` of the Cayley graph with unit weights.

    The induced subgraph on the ball, so edges inside the outer sphere are
    present too. Vertices are numbered in BFS order,
    ties broken by the lexicographic order of normal forms.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if radius > radius_cap:
        raise ValueError(f"radius {radius} exceeds the configured cap {radius_cap}")
    grp = RaachGroup.of(p)
    letters = grp.graph.letters()
    index = {grp.identity: 0}
    keys = [grp.identity]
    dist = [0]
    parent = [None]
    adj: list[dict] = [dict()]
    labels: dict = {}
    layer = [0]
    for r in range(radius + 1):
        found: dict[GroupElement, tuple[int, Letter]] = {}
        pending = []
        for u in layer:
            for s in letters:
                y = grp.multiply(keys[u], s)
                if y in index:
                    pending.append((u, index[y], s))
                elif r < radius:
                    if y not in found:
                        found[y] = (u, s)
                    pending.append((u, y, s))
        new_layer = []
        for y in sorted(found):
            if len(keys) >= vertex_cap:
                raise BallTooLarge(f"ball exceeds {vertex_cap} vertices")
            index[y] = len(keys)
            keys.append(y)
            dist.append(r + 1)
            parent.append(found[y][0])
            adj.append(dict())
            new_layer.append(index[y])
        for u, y, s in pending:
            v = y if isinstance(y, int) else index[y]
            if u == v:
                raise AssertionError("Cayley graph loop")
            adj[u][v] = Fraction(1)
            adj[v][u] = Fraction(1)
            labels[(u, v)] = s
            labels[(v, u)] = grp.graph.canonical_letter((s[0], -s[1]))
        layer = new_layer
    names = tuple(grp.format(k) for k in keys)
    return LocalGraph(tuple(adj), tuple(Fraction(1) for _ in keys), 0, radius, labels,
                      tuple(keys), names, tuple(parent), tuple(dist))
