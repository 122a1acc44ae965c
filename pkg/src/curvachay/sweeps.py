"""Theorem harness sweeps over presentation families.

Every sweep yields :class:`~curvachay.theorems.Record` objects, one per
presentation and generator, vertex or edge. Sweeps are deterministic: the
family is enumerated in a fixed order and any randomness is seeded.
"""

from __future__ import annotations

import itertools
import json
import random
from importlib import resources
from fractions import Fraction
from typing import Iterator

from . import linalg
from .cycles import classify_short_cycles
from .eliminate import eliminate_r4, eliminate_rinf, letter_correspondence
from .graph import find_isomorphism, is_isomorphism
from .ollivier import kappa_lly_transport
from .presentation import INF, DefiningGraph, Presentation, associated_pair, parse_presentation
from .raach import RaachGroup, ball
from .theorems import (
    Record,
    be_matrix_from_ball,
    lambda2_bound_check,
    lap_identity_check,
    monotonicity_check,
    thm_be_raach,
    thm_or_raach,
)

__all__ = [
    "ORDERS",
    "raach_family",
    "sweep_or",
    "sweep_be",
    "sweep_laplacian_identity",
    "sweep_cycles",
    "sweep_eliminations",
    "explicit_ball_map",
    "sweep_monotonicity",
    "MONOTONICITY_PAIRS",
    "builtin_library",
    "builtin_presentation",
    "monotonicity_pairs",
    "summarize",
    "write_jsonl",
]

ORDERS = (2, 3, 4, INF)
_NAMES = "abcdefgh"


def raach_family(max_gens: int = 3, orders=ORDERS) -> Iterator[DefiningGraph]:
    """Every labelled defining graph with 1..max_gens generators.

    Orders range over ``orders`` and edges over all subsets of pairs, so
    there are ``Σ_n |orders|^n 2^(n(n-1)/2)`` graphs in total.
    """
    for n in range(1, max_gens + 1):
        names = _NAMES[:n]
        pairs = list(itertools.combinations(range(n), 2))
        for ords in itertools.product(orders, repeat=n):
            for mask in range(1 << len(pairs)):
                edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
                yield DefiningGraph(tuple(names), tuple(ords), tuple(edges))


def _ref(h: DefiningGraph) -> str:
    return Presentation.from_graph(h).to_text()


def _q(v) -> str:
    if isinstance(v, Fraction):
        return linalg.format_fraction(v)
    return repr(v)


def sweep_or(family) -> Iterator[Record]:
    """Closed-form ``κ_LLY(s)`` against exact transport on the 4-ball, per generator."""
    for h in family:
        g = ball(h, 4)
        by_letter = {g.labels[(g.root, v)]: v for v in g.adj[g.root]}
        for s in associated_pair(h).letters:
            lhs = thm_or_raach(h, s)
            rhs = kappa_lly_transport(g, g.root, by_letter[s])
            yield Record("thm_or_raach", _q(lhs), _q(rhs), "ok" if lhs == rhs else "violated",
                         f"{_ref(h)} s={h.letter_name(s)}")


def sweep_be(family, tol: float = 1e-8) -> Iterator[Record]:
    """Closed-form ``A(e)`` against the Schur complement, and ``K(e)`` in the covered cases."""
    for h in family:
        closed = thm_be_raach(h)
        schur, _ = be_matrix_from_ball(h)
        same = bool((closed.a == schur).all())
        ref = _ref(h)
        yield Record("thm_be_raach matrix", "closed form", "schur complement", "ok" if same else "violated", ref)
        if closed.k_formula is not None:
            ok = abs(closed.k_formula - closed.k_numeric) <= tol
            yield Record(f"thm_be_raach K ({closed.case})", repr(closed.k_formula), repr(closed.k_numeric),
                         "ok" if ok else "violated", ref)
            bound = lambda2_bound_check(h)
            yield Record("lambda2 bound", "lambda2", str(len(closed.letters)),
                         "ok" if bound else "violated", ref)


def sweep_laplacian_identity(family) -> Iterator[Record]:
    for h in family:
        ok = lap_identity_check(h)
        yield Record("laplacian identity", "Delta_H*", "2 Delta_S1 + 2 Delta_S1'", "ok" if ok else "violated", _ref(h))


def sweep_cycles(family, radius: int = 3) -> Iterator[Record]:
    for h in family:
        rep = classify_short_cycles(h, radius)
        counts = ",".join(f"{k}:{v}" for k, v in sorted(rep.counts.items()))
        yield Record("short cycle shapes", counts, str(len(rep.violations)),
                     "ok" if rep.ok else "violated", _ref(h))


def _elimination_cases(family):
    for h in family:
        for i, o in enumerate(h.orders):
            if o == 4:
                yield h, i, eliminate_r4
            elif o == INF:
                yield h, i, eliminate_rinf


def _random_word(rng, h: DefiningGraph, length: int):
    letters = [(g, e) for g in range(len(h)) for e in (1, -1)]
    return tuple(rng.choice(letters) for _ in range(length))


def sweep_eliminations(family, words: int = 1000, seed: int = 0, max_cases: int | None = None) -> Iterator[Record]:
    """Associated pairs, 2-balls and word maps of each elimination."""
    rng = random.Random(seed)
    for k, (h, i, fn) in enumerate(_elimination_cases(family)):
        if max_cases is not None and k >= max_cases:
            return
        h2, wm = fn(h, i)
        ref = f"{_ref(h)} eliminate {h.generators[i]}"
        p1, p2 = associated_pair(h), associated_pair(h2)
        corr = letter_correspondence(wm)
        pair_ok = all(p1.w(s, t) == p2.w(corr[s], corr[t]) for s in p1.letters for t in p1.letters)
        pair_ok = pair_ok and sorted(corr.values()) == sorted(p2.letters)
        yield Record("elimination associated pair", "H*", "H'*", "ok" if pair_ok else "violated", ref)

        g1, g2 = ball(h, 2), ball(h2, 2)
        explicit = explicit_ball_map(g1, g2, wm)
        iso = find_isomorphism(g1, g2, rooted=True)
        ok = explicit is not None and is_isomorphism(g1, g2, explicit) and iso is not None
        yield Record("elimination 2-ball", str(g1.n), str(g2.n), "ok" if ok else "violated", ref)

        grp1, grp2 = RaachGroup(h), RaachGroup(h2)
        bad = 0
        for _ in range(words):
            w = _random_word(rng, h, rng.randint(0, 12))
            if grp1.normal_form(wm.phi_inv(wm.phi(w))) != grp1.normal_form(w):
                bad += 1
            w2 = _random_word(rng, h2, rng.randint(0, 12))
            if grp2.normal_form(wm.phi(wm.phi_inv(w2))) != grp2.normal_form(w2):
                bad += 1
        yield Record("elimination word round trip", str(2 * words), str(bad), "ok" if bad == 0 else "violated", ref)


def explicit_ball_map(g1, g2, wm) -> list[int] | None:
    """Vertex map of the balls induced by the forward word map."""
    grp2 = RaachGroup(wm.target)
    index = {k: i for i, k in enumerate(g2.keys)}
    out = []
    for v in g1.vertices():
        img = index.get(grp2.normal_form(wm.phi(g1.word_to(v))))
        if img is None:
            return None
        out.append(img)
    return out


def builtin_library() -> dict:
    """The shipped presentations and quotient pairs."""
    text = resources.files("curvachay").joinpath("data/builtin.json").read_text(encoding="utf-8")
    return json.loads(text)


def builtin_presentation(name: str) -> Presentation:
    lib = builtin_library()["presentations"]
    if name not in lib:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(sorted(lib))}")
    return parse_presentation(lib[name]["text"])


MONOTONICITY_PAIRS = [(d["name"], d["source"], d["added"]) for d in builtin_library()["pairs"]]


def monotonicity_pairs(pairs=None):
    """``(name, Γ, Γ')`` with ``Γ'`` obtained by adding the listed relators."""
    out = []
    for name, text, extra in (MONOTONICITY_PAIRS if pairs is None else pairs):
        p = parse_presentation(text)
        rels = [p.word(r) for r in extra.split(",") if r.strip()]
        out.append((name, p, p.with_relators(rels)))
    return out


def sweep_monotonicity(pairs=None) -> Iterator[Record]:
    for name, p, p2 in monotonicity_pairs(pairs):
        rep = monotonicity_check(p, p2, name=name)
        for r in rep.records:
            yield Record(r.claim, r.lhs, r.rhs, r.status, f"{name}: {r.witness_ref}")


def summarize(records) -> dict:
    """Counts per claim and status."""
    out: dict = {}
    for r in records:
        c = out.setdefault(r.claim, {})
        c[r.status] = c.get(r.status, 0) + 1
    return out


def write_jsonl(records, fh) -> int:
    """Write records as JSON lines and return the number of violations."""
    bad = 0
    for r in records:
        fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
        bad += r.status == "violated"
    return bad
