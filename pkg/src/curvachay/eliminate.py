"""Trading an order-4 or infinite-order generator for two involutions.

Replacing ``s0`` of order 4 by two commuting involutions ``s', s''``, or
``s0`` of infinite order by two non-commuting ones, leaves the associated
pair and the Cayley graph unchanged up to isomorphism. The word maps here
realise the Cayley graph isomorphism letter by letter.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import INF, DefiningGraph, Letter, Word

__all__ = ["WordMap", "eliminate_r4", "eliminate_rinf", "eliminate", "letter_correspondence"]


@dataclass(frozen=True)
class WordMap:
    """Forward and inverse word rewriting between the old and new generators.

    ``s0`` indexes the eliminated generator in the source graph; in the
    target, ``s'`` sits at the same index and ``s''`` right after it.
    """

    source: DefiningGraph
    target: DefiningGraph
    s0: int
    kind: str

    @property
    def s1(self) -> int:
        return self.s0

    @property
    def s2(self) -> int:
        return self.s0 + 1

    def _shift(self, g: int) -> int:
        return g if g < self.s0 else g + 1

    def _unshift(self, g: int) -> int:
        return g if g < self.s0 else g - 1

    def phi(self, word) -> Word:
        out: list[Letter] = []
        if self.kind == "r4":
            count = 0
            for g, e in word:
                if g != self.s0:
                    out.append((self._shift(g), e))
                    continue
                # s0^-1 becomes s0 s0 s0, then s', s'' alternate
                for _ in range(e % 4):
                    out.append((self.s1 if count % 2 == 0 else self.s2, 1))
                    count += 1
            return tuple(out)
        prev = None  # (sign of previous s0 letter, image generator)
        for g, e in word:
            if g != self.s0:
                out.append((self._shift(g), e))
                continue
            if prev is None:
                img = self.s1 if e > 0 else self.s2
            elif prev[0] == e:
                img = self.s2 if prev[1] == self.s1 else self.s1
            else:
                img = prev[1]
            out.append((img, 1))
            prev = (e, img)
        return tuple(out)

    def phi_inv(self, word) -> Word:
        new = (self.s1, self.s2)
        # collapse each maximal run of s' (or s'') to its parity
        reduced: list[Letter] = []
        i = 0
        while i < len(word):
            g, e = word[i]
            if g not in new:
                reduced.append((self._unshift(g), e))
                i += 1
                continue
            j = i
            while j < len(word) and word[j][0] == g:
                j += 1
            if (j - i) % 2:
                reduced.append((g, None))
            i = j
        out: list[Letter] = []
        prev = None  # (new generator, sign emitted)
        for g, e in reduced:
            if e is not None:
                out.append((g, e))
                continue
            if prev is None:
                sign = 1 if g == self.s1 else -1
            elif prev[0] == g:
                sign = -prev[1]
            else:
                sign = prev[1]
            out.append((self.s0, sign))
            prev = (g, sign)
        return tuple(out)


def _split(h: DefiningGraph, s0: int, commuting: bool) -> DefiningGraph:
    name = h.generators[s0]
    names = list(h.generators[:s0]) + [name + "'", name + "''"] + list(h.generators[s0 + 1:])
    orders = list(h.orders[:s0]) + [2, 2] + list(h.orders[s0 + 1:])

    def sh(g):
        return g if g < s0 else g + 1

    edges = set()
    for i, j in h.edges:
        if s0 in (i, j):
            t = sh(j if i == s0 else i)
            edges.add((s0, t))
            edges.add((s0 + 1, t))
        else:
            edges.add((sh(i), sh(j)))
    if commuting:
        edges.add((s0, s0 + 1))
    while len(set(names)) != len(names):
        names[s0 + 1] += "_"
        names[s0] += "_"
    return DefiningGraph(tuple(names), tuple(orders), frozenset(edges))


def _resolve(h: DefiningGraph, s0) -> int:
    return h.index(s0) if isinstance(s0, str) else int(s0)


def eliminate_r4(h: DefiningGraph, s0) -> tuple[DefiningGraph, WordMap]:
    """Replace the order-4 generator ``s0`` by commuting involutions ``s0', s0''``."""
    i = _resolve(h, s0)
    if h.orders[i] != 4:
        raise ValueError(f"generator {h.generators[i]} does not have order 4")
    h2 = _split(h, i, commuting=True)
    return h2, WordMap(h, h2, i, "r4")


def eliminate_rinf(h: DefiningGraph, s0) -> tuple[DefiningGraph, WordMap]:
    """Replace the infinite-order generator ``s0`` by non-commuting involutions."""
    i = _resolve(h, s0)
    if h.orders[i] != INF:
        raise ValueError(f"generator {h.generators[i]} does not have infinite order")
    h2 = _split(h, i, commuting=False)
    return h2, WordMap(h, h2, i, "rinf")


def eliminate(h: DefiningGraph, s0) -> tuple[DefiningGraph, WordMap]:
    i = _resolve(h, s0)
    return eliminate_r4(h, i) if h.orders[i] == 4 else eliminate_rinf(h, i)


def letter_correspondence(wm: WordMap) -> dict[Letter, Letter]:
    """The map ``S* -> S'*`` with ``s0 -> s'`` and ``s0^-1 -> s''``."""
    out = {}
    for s in wm.source.letters():
        g, e = s
        if g == wm.s0:
            out[s] = (wm.s1, 1) if e > 0 else (wm.s2, 1)
        else:
            out[s] = wm.target.canonical_letter((wm._shift(g), e))
    return out
