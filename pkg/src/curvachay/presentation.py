"""Group presentations, RAACH defining graphs and their associated pairs.

A letter is a pair ``(generator_index, sign)`` with ``sign`` in ``{+1, -1}``;
a word is a tuple of letters. Two textual forms are understood::

    raach { a:2, b:3; commute (a,b); }
    group <a,b | a^4, b^-1 a^2>

Orders of RAACH generators are restricted to 2, 3, 4 and ``inf``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

INF = math.inf
RAACH_ORDERS = (2, 3, 4, INF)

Letter = tuple[int, int]
Word = tuple[Letter, ...]

__all__ = [
    "INF",
    "RAACH_ORDERS",
    "ParseError",
    "DefiningGraph",
    "Presentation",
    "AssociatedPair",
    "parse_presentation",
    "parse_raach_body",
    "parse_word",
    "format_word",
    "free_reduce",
    "associated_pair",
    "raach_product",
    "cyclic_normal_form",
]


class ParseError(ValueError):
    """Malformed presentation text; ``pos`` is the character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def free_reduce(word) -> Word:
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def invert_word(word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def cyclic_normal_form(word) -> Word:
    """Canonical representative of a relator up to rotation and inversion."""
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == (w[-1][0], -w[-1][1]):
        w = w[1:-1]
    if not w:
        return ()
    cands = []
    for base in (tuple(w), invert_word(w)):
        cands.extend(base[i:] + base[:i] for i in range(len(base)))
    return min(cands)


def format_word(word, names) -> str:
    """Render a word with powers, e.g. ``b^-1 a^2``; the empty word is ``1``."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        g, e = word[i]
        j = i
        while j < len(word) and word[j] == (g, e):
            j += 1
        k = (j - i) * e
        parts.append(names[g] if k == 1 else f"{names[g]}^{k}")
        i = j
    return " ".join(parts)


def _format_order(o) -> str:
    return "inf" if o == INF else str(o)


@dataclass(frozen=True)
class DefiningGraph:
    """Defining graph ``(H, m)`` of a RAACH.

    ``edges`` holds index pairs ``(i, j)`` with ``i < j``; an edge means the
    two generators commute.
    """

    generators: tuple[str, ...]
    orders: tuple
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator name")
        if len(self.orders) != len(self.generators):
            raise ValueError("one order per generator required")
        for o in self.orders:
            if o not in RAACH_ORDERS:
                raise ValueError(f"RAACH order {o!r} outside {{2,3,4,inf}}")
        n = len(self.generators)
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError("self-loop in defining graph")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError("edge names unknown generator")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_names(cls, orders: dict, edges=()) -> "DefiningGraph":
        gens = tuple(orders)
        idx = {s: i for i, s in enumerate(gens)}
        return cls(gens, tuple(orders[s] for s in gens), frozenset((idx[a], idx[b]) for a, b in edges))

    def __len__(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def commute(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def neighbours(self, i: int) -> list[int]:
        return [j for j in range(len(self.generators)) if j != i and self.commute(i, j)]

    def order(self, i: int):
        return self.orders[i]

    def letters(self) -> list[Letter]:
        """Symmetrized generators ``S*``: base then inverse, one letter for order 2."""
        out = []
        for i, o in enumerate(self.orders):
            out.append((i, 1))
            if o != 2:
                out.append((i, -1))
        return out

    def canonical_letter(self, letter: Letter) -> Letter:
        g, e = letter
        if not 0 <= g < len(self.orders) or e not in (1, -1):
            raise ValueError(f"{letter!r} is not a letter of this graph")
        return (g, 1) if self.orders[g] == 2 else (g, e)

    def letter_name(self, letter: Letter) -> str:
        g, e = self.canonical_letter(letter)
        return self.generators[g] if e == 1 else f"{self.generators[g]}^-1"

    def relators(self) -> tuple[Word, ...]:
        rels = []
        for i, o in enumerate(self.orders):
            if o != INF:
                rels.append(((i, 1),) * o)
        for i, j in sorted(self.edges):
            rels.append(((i, -1), (j, -1), (i, 1), (j, 1)))
        return tuple(rels)

    def body_text(self) -> str:
        gens = ", ".join(f"{s}:{_format_order(o)}" for s, o in zip(self.generators, self.orders))
        if not self.edges:
            return gens
        pairs = ", ".join(f"({self.generators[i]},{self.generators[j]})" for i, j in sorted(self.edges))
        return f"{gens}; commute {pairs}"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    graph: DefiningGraph | None = None

    @property
    def kind(self) -> str:
        return "raach" if self.graph is not None else "general"

    @classmethod
    def from_graph(cls, graph: DefiningGraph) -> "Presentation":
        return cls(graph.generators, graph.relators(), graph)

    @classmethod
    def general(cls, generators, relators) -> "Presentation":
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator name")
        rels = []
        for r in relators:
            r = free_reduce(r)
            if any(not 0 <= g < len(gens) for g, _ in r):
                raise ValueError("relator uses unknown generator")
            if r:
                rels.append(r)
        return cls(gens, tuple(rels), None)

    def with_relators(self, extra) -> "Presentation":
        """General presentation with ``extra`` relators appended."""
        return Presentation.general(self.generators, list(self.relators) + [tuple(r) for r in extra])

    def relator_set(self) -> frozenset:
        return frozenset(cyclic_normal_form(r) for r in self.relators)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def to_text(self) -> str:
        if self.graph is not None:
            return f"raach {{ {self.graph.body_text()}; }}"
        rels = ", ".join(format_word(r, self.generators) for r in self.relators)
        return f"group <{','.join(self.generators)} | {rels}>"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "generators": list(self.generators)}
        if self.graph is not None:
            d["orders"] = [_format_order(o) for o in self.graph.orders]
            d["commute"] = [[self.generators[i], self.generators[j]] for i, j in sorted(self.graph.edges)]
        else:
            d["relators"] = [format_word(r, self.generators) for r in self.relators]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Presentation":
        gens = tuple(d["generators"])
        if d["kind"] == "raach":
            orders = {s: (INF if o == "inf" else int(o)) for s, o in zip(gens, d["orders"])}
            return cls.from_graph(DefiningGraph.from_names(orders, [tuple(e) for e in d["commute"]]))
        return cls.general(gens, [parse_word(r, gens) for r in d["relators"]])

    @classmethod
    def from_json(cls, text: str) -> "Presentation":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        return self.to_text()


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>-?\d+)|(?P<punct>[{}<>|,;:^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        toks.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg):
        raise ParseError(msg, self.tok[2])

    def accept(self, value) -> bool:
        if self.tok[1] == value and self.tok[0] != "end":
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            self.error(f"expected {value!r}, found {self.tok[1] or 'end of input'!r}")

    def name(self) -> tuple[str, int]:
        kind, val, pos = self.tok
        if kind != "name":
            self.error(f"expected a name, found {val or 'end of input'!r}")
        self.i += 1
        return val, pos

    def integer(self) -> int:
        kind, val, _ = self.tok
        if kind != "int":
            self.error(f"expected an integer, found {val or 'end of input'!r}")
        self.i += 1
        return int(val)

    def at_end(self):
        if self.tok[0] != "end":
            self.error(f"trailing input {self.tok[1]!r}")

    # raach body: gen_list [";" "commute" pair_list] [";"]
    def raach_body(self, closing: str | None) -> DefiningGraph:
        orders: dict[str, object] = {}
        while True:
            nm, pos = self.name()
            if nm in orders:
                raise ParseError(f"duplicate generator {nm!r}", pos)
            self.expect(":")
            kind, val, opos = self.tok
            if kind == "name" and val == "inf":
                o = INF
            elif kind == "int":
                o = int(val)
            else:
                self.error("expected an order (2, 3, 4 or inf)")
            if o not in RAACH_ORDERS:
                raise ParseError(f"RAACH order {val} outside {{2,3,4,inf}}", opos)
            self.i += 1
            orders[nm] = o
            if not self.accept(","):
                break
        edges = []
        if self.accept(";"):
            if self.tok[1] == "commute":
                self.i += 1
                while True:
                    self.expect("(")
                    a, apos = self.name()
                    self.expect(",")
                    b, bpos = self.name()
                    self.expect(")")
                    for nm, p in ((a, apos), (b, bpos)):
                        if nm not in orders:
                            raise ParseError(f"commutation edge names unknown generator {nm!r}", p)
                    if a == b:
                        raise ParseError("commutation edge is a self-loop", apos)
                    edges.append((a, b))
                    if not self.accept(","):
                        break
                self.accept(";")
        if closing is not None:
            self.expect(closing)
        return DefiningGraph.from_names(orders, edges)

    def group_body(self) -> Presentation:
        gens = []
        while True:
            nm, pos = self.name()
            if nm in gens:
                raise ParseError(f"duplicate generator {nm!r}", pos)
            gens.append(nm)
            if not self.accept(","):
                break
        rels = []
        if self.accept("|"):
            if self.tok[1] != ">":
                while True:
                    rels.append(self.word(gens, stop={",", ">"}))
                    if not self.accept(","):
                        break
        self.expect(">")
        return Presentation.general(gens, rels)

    def word(self, gens, stop) -> list[Letter]:
        letters: list[Letter] = []
        started = False
        while self.tok[1] not in stop and self.tok[0] != "end":
            kind, val, pos = self.tok
            if val == "(":
                self.i += 1
                inner = self.word(gens, stop={")"})
                self.expect(")")
            elif kind == "int" and val == "1":
                self.i += 1
                inner = []
            elif kind == "name":
                self.i += 1
                inner = [(g, 1) for g in _split_name(val, gens, pos)]
            else:
                self.error(f"unexpected {val!r} in word")
            k = 1
            if self.accept("^"):
                k = self.integer()
            if k >= 0:
                letters.extend(inner * k)
            else:
                letters.extend(list(invert_word(inner)) * (-k))
            started = True
        if not started:
            self.error("empty word")
        return letters


def _split_name(token: str, gens, pos: int) -> list[int]:
    if token in gens:
        return [gens.index(token)]
    # juxtaposition of single-character generators, e.g. "ab"
    if all(ch in gens for ch in token):
        return [gens.index(ch) for ch in token]
    raise ParseError(f"unknown generator {token!r}", pos)


def parse_presentation(text: str) -> Presentation:
    """Parse ``raach {...}``, ``group <...>`` or a bare ``<...>``."""
    p = _Parser(text)
    if p.accept("raach"):
        p.expect("{")
        pres = Presentation.from_graph(p.raach_body("}"))
    elif p.accept("group"):
        p.expect("<")
        pres = p.group_body()
    elif p.accept("<"):
        pres = p.group_body()
    else:
        p.error("expected 'raach' or 'group'")
    p.at_end()
    return pres


def parse_raach_body(text: str) -> Presentation:
    """Parse the inside of a raach block, e.g. ``a:2,b:2; commute (a,b)``."""
    text = text.strip()
    if text.startswith("raach"):
        return parse_presentation(text)
    p = _Parser(text)
    graph = p.raach_body(None)
    p.at_end()
    return Presentation.from_graph(graph)


def parse_word(text: str, generators) -> Word:
    p = _Parser(text)
    if p.tok[0] == "end":
        return ()
    w = p.word(list(generators), stop=set())
    p.at_end()
    return tuple(w)


# --------------------------------------------------------------------------
# associated pair


@dataclass(frozen=True)
class AssociatedPair:
    """Weighted graph ``(H*, w)`` on the symmetrized generators."""

    graph: DefiningGraph
    letters: tuple[Letter, ...]
    weights: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.letters)

    def index(self, letter: Letter) -> int:
        return self.letters.index(self.graph.canonical_letter(letter))

    def names(self) -> list[str]:
        return [self.graph.letter_name(s) for s in self.letters]

    def w(self, s: Letter, t: Letter) -> int:
        return self.weights[self.index(s)][self.index(t)]

    def degree(self, s: Letter) -> int:
        """Weighted degree: a weight-2 edge counts twice."""
        return sum(self.weights[self.index(s)])

    def combinatorial_degree(self, s: Letter) -> int:
        return sum(1 for v in self.weights[self.index(s)] if v)

    def weight_matrix(self) -> np.ndarray:
        return np.array(self.weights, dtype=int).reshape(len(self), len(self))

    def laplacian(self, order=None) -> np.ndarray:
        """Exact Laplacian matrix (``m = 1``): off-diagonal ``w``, rows sum to 0."""
        letters = list(self.letters) if order is None else [self.graph.canonical_letter(s) for s in order]
        n = len(letters)
        out = np.empty((n, n), dtype=object)
        for i, s in enumerate(letters):
            for j, t in enumerate(letters):
                out[i, j] = Fraction(self.w(s, t)) if i != j else Fraction(0)
            out[i, i] = -sum(out[i, j] for j in range(n) if j != i)
        return out

    def reordered(self, order) -> "AssociatedPair":
        order = [self.graph.canonical_letter(s) for s in order]
        if sorted(order) != sorted(self.letters):
            raise ValueError("order must be a permutation of S*")
        return AssociatedPair(self.graph, tuple(order), tuple(tuple(self.w(s, t) for t in order) for s in order))

    def ord3_first(self) -> "AssociatedPair":
        """Order-3 letters first, then the rest; declaration order inside each class."""
        o3 = [s for s in self.letters if self.graph.orders[s[0]] == 3]
        rest = [s for s in self.letters if self.graph.orders[s[0]] != 3]
        return self.reordered(o3 + rest)

    def to_dict(self) -> dict:
        names = self.names()
        edges = [[names[i], names[j], self.weights[i][j]]
                 for i, j in combinations(range(len(self)), 2) if self.weights[i][j]]
        return {"vertices": names, "edges": edges}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def associated_pair(graph: DefiningGraph) -> AssociatedPair:
    letters = graph.letters()

    def weight(s: Letter, t: Letter) -> int:
        (gs, es), (gt, et) = s, t
        if gs == gt:
            if es == et:
                return 0
            o = graph.orders[gs]
            return {4: 1, 3: 2}.get(o, 0)
        return 1 if graph.commute(gs, gt) else 0

    w = tuple(tuple(weight(s, t) for t in letters) for s in letters)
    return AssociatedPair(graph, tuple(letters), w)


def raach_product(h1: DefiningGraph, h2: DefiningGraph) -> DefiningGraph:
    """Defining graph of the direct product: disjoint union plus all cross edges."""
    names = list(h1.generators)
    for s in h2.generators:
        new = s
        while new in names:
            new = new + "_2"
        names.append(new)
    n1 = len(h1)
    edges = set(h1.edges)
    edges |= {(i + n1, j + n1) for i, j in h2.edges}
    edges |= {(i, n1 + j) for i in range(n1) for j in range(len(h2))}
    return DefiningGraph(tuple(names), tuple(h1.orders) + tuple(h2.orders), frozenset(edges))
