"""Short cycles through the identity in RAACH Cayley graphs.

Every 3-, 4- and 5-cycle through ``e`` is found by exhaustive search in
the radius-3 ball and matched against the only shapes a RAACH allows:

* length 3: ``s, s, s`` with ``ord(s) = 3``;
* length 4: ``s, s, s, s`` with ``ord(s) = 4``, or ``s, t, s^-1, t^-1``
  for commuting ``s, t`` with ``t`` not in ``{s, s^-1}``;
* length 5: letters from ``{s^+-1, t^+-1}`` for commuting ``s, t`` where
  the generator used three times has order 3, and a cycle whose first and
  last letter agree starts with an order-3 letter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import DefiningGraph, Presentation
from .raach import ball

__all__ = ["CycleReport", "classify_short_cycles", "cycle_shape"]


@dataclass
class CycleReport:
    counts: dict = field(default_factory=lambda: {3: 0, 4: 0, 5: 0})
    cycles: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _cycles_through_root(g, lengths=(3, 4, 5)):
    """Simple cycles through the root, each reported once as a vertex list."""
    root = g.root
    maxlen = max(lengths)
    seen = set()
    out = []
    path = [root]
    on_path = {root}

    def dfs(u):
        for v in g.adj[u]:
            if v == root and len(path) >= 3 and len(path) in lengths:
                key = frozenset(frozenset(e) for e in zip(path, path[1:] + [root]))
                if key not in seen:
                    seen.add(key)
                    out.append(list(path))
            elif v not in on_path and len(path) < maxlen:
                path.append(v)
                on_path.add(v)
                dfs(v)
                path.pop()
                on_path.discard(v)

    dfs(root)
    return out


def cycle_shape(h: DefiningGraph, letters) -> str | None:
    """Name the allowed shape matched by the cycle word, or None."""
    inv = lambda s: h.canonical_letter((s[0], -s[1]))
    order = lambda s: h.orders[s[0]]
    k = len(letters)
    gens = sorted({s[0] for s in letters})
    if k == 3:
        if len(set(letters)) == 1 and order(letters[0]) == 3:
            return "s^3"
        return None
    if k == 4:
        if len(set(letters)) == 1 and order(letters[0]) == 4:
            return "s^4"
        s, t, s2, t2 = letters
        if (s[0] != t[0] and s2 == inv(s) and t2 == inv(t) and h.commute(s[0], t[0])):
            return "[s,t]"
        return None
    if k == 5:
        if len(gens) != 2 or not h.commute(*gens):
            return None
        counts = {g: sum(1 for s in letters if s[0] == g) for g in gens}
        t = next((g for g in gens if counts[g] == 3), None)
        if t is None or h.orders[t] != 3:
            return None
        if letters[0] == letters[-1] and order(letters[0]) != 3:
            return None
        return "s t^3 s^-1"
    return None


def classify_short_cycles(p: Presentation | DefiningGraph, radius: int = 3) -> CycleReport:
    h = p if isinstance(p, DefiningGraph) else p.graph
    if h is None:
        raise ValueError("cycle classification needs a raach presentation")
    g = ball(h, radius)
    report = CycleReport()
    for cyc in _cycles_through_root(g):
        loop = cyc + [g.root]
        letters = tuple(g.labels[(u, v)] for u, v in zip(loop, loop[1:]))
        report.counts[len(cyc)] += 1
        shape = cycle_shape(h, letters)
        names = [h.letter_name(s) for s in letters]
        report.cycles.append((names, shape))
        if shape is None:
            report.violations.append(names)
    return report
