"""Closed-form curvature of RAACH Cayley graphs and the checks behind them.

Each formula is paired with a brute-force counterpart: closed forms for
``κ_LLY`` and the curvature matrix ``A(e)`` are compared against exact
transport and Schur complement computations on balls, and curvature
monotonicity under added relators is tested on finite quotients with the
adapted edge weights.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .bakry_emery import bakry_emery, curvature_matrix, spheres
from .cosets import CosetTable, cayley_from_cosets, generator_classes, quotient_map, todd_coxeter
from .graph import graph_from_edges
from .laplacian import NON_NORMALIZED, WEIGHTED, laplacian_apply
from .ollivier import kappa_lly_laplacian
from .presentation import INF, AssociatedPair, DefiningGraph, Letter, Presentation, associated_pair
from .raach import ball

__all__ = [
    "thm_or_raach",
    "thm_or_raach_combinatorial",
    "BEClosedForm",
    "thm_be_raach",
    "SpectralSummary",
    "spectral_summary",
    "lap_identity_check",
    "lambda2_bound_check",
    "edge_configuration_kappa",
    "edge_configuration_graph",
    "WeightingScheme",
    "unit_weights",
    "adapted_weights",
    "raach_classes",
    "monotonicity_check_raach",
    "Record",
    "MonotonicityReport",
    "monotonicity_check",
    "lipschitz_quotient_check",
    "ball_letter_order",
]


def thm_or_raach(h: DefiningGraph, s: Letter) -> Fraction:
    """``κ_LLY(s) = (a + 2 deg_{H*}(s)) / D - 2`` with the weighted degree."""
    pair = associated_pair(h)
    s = h.canonical_letter(s)
    if s not in pair.letters:
        raise ValueError(f"{s!r} is not a letter of S*")
    a = 3 if h.orders[s[0]] == 3 else 4
    return Fraction(a + 2 * pair.degree(s), len(pair)) - 2


def thm_or_raach_combinatorial(h: DefiningGraph, s: Letter) -> Fraction:
    """The same formula read with the unweighted degree of ``H*``."""
    pair = associated_pair(h)
    s = h.canonical_letter(s)
    a = 3 if h.orders[s[0]] == 3 else 4
    return Fraction(a + 2 * pair.combinatorial_degree(s), len(pair)) - 2


@dataclass(frozen=True)
class SpectralSummary:
    spectrum: tuple[float, ...]
    letters: tuple[str, ...]

    @property
    def lambda2(self) -> float:
        return self.spectrum[1] if len(self.spectrum) > 1 else 0.0


def spectral_summary(h: DefiningGraph) -> SpectralSummary:
    """Eigenvalues of ``-Δ_{H*}`` in ascending order."""
    pair = associated_pair(h)
    vals, _ = linalg.jacobi_eigh(-linalg.to_float(pair.laplacian()))
    return SpectralSummary(tuple(float(v) for v in vals), tuple(pair.names()))


@dataclass(frozen=True)
class BEClosedForm:
    """``A(e)`` from the associated pair with the order-3 letters first."""

    letters: tuple[Letter, ...]
    a: np.ndarray
    k_formula: float | None
    case: str | None
    k_numeric: float


def thm_be_raach(h: DefiningGraph) -> BEClosedForm:
    pair = associated_pair(h).ord3_first()
    d = len(pair)
    lap = pair.laplacian()
    a = linalg.zeros(d)
    for i, s in enumerate(pair.letters):
        for j in range(d):
            a[i, j] = (2 - d if i == j else 0) + 1 - lap[i, j]
        if h.orders[s[0]] == 3:
            a[i, i] += Fraction(1, 2)
    k_num = linalg.min_eigenvalue(linalg.to_float(a))[0]
    r3 = [o == 3 for o in h.orders]
    lam2 = spectral_summary(h).lambda2
    k, case = None, None
    if not any(r3) and d >= 2:
        k, case = 2 - d + lam2, "R3 empty"
    elif r3 and all(r3) and d >= 4:
        k, case = 2.5 - d + lam2, "R3 = S"
    return BEClosedForm(pair.letters, a, k, case, k_num)


def ball_letter_order(g, h: DefiningGraph, letters) -> list[int]:
    """Ball vertices of ``S₁(e)`` listed in the given letter order."""
    by_letter = {h.canonical_letter(g.labels[(g.root, v)]): v for v in g.adj[g.root]}
    return [by_letter[h.canonical_letter(s)] for s in letters]


def _permute(a: np.ndarray, from_order, to_order) -> np.ndarray:
    pos = {v: i for i, v in enumerate(from_order)}
    idx = [pos[v] for v in to_order]
    return a[np.ix_(idx, idx)]


def be_matrix_from_ball(h: DefiningGraph, g=None) -> tuple[np.ndarray, tuple[Letter, ...]]:
    """Schur complement ``A(e)`` of ``ball(h, 2)`` in order-3-first letter order."""
    g = ball(h, 2) if g is None else g
    letters = associated_pair(h).ord3_first().letters
    cm = curvature_matrix(g, g.root, NON_NORMALIZED)
    return _permute(cm.a, cm.s1, ball_letter_order(g, h, letters)), letters


def _s1_laplacians(g, x: int, order):
    """Exact ``Δ_{S₁(x)}`` and ``Δ_{S₁'(x)}`` in the vertex order ``order``."""
    s1, s2 = spheres(g, x)
    s1set, s2set = set(s1), set(s2)
    indeg = {z: sum(1 for y in g.adj[z] if y in s1set) for z in s2}
    n = len(order)
    l1, l2 = linalg.zeros(n), linalg.zeros(n)
    for i, yi in enumerate(order):
        for j, yj in enumerate(order):
            if i == j:
                continue
            w1 = Fraction(1) if yj in g.adj[yi] else Fraction(0)
            w2 = sum((Fraction(1, indeg[z]) for z in g.adj[yi] if z in s2set and z in g.adj[yj]), Fraction(0))
            l1[i, j], l2[i, j] = w1, w2
            l1[i, i] -= w1
            l2[i, i] -= w2
    return l1, l2


def lap_identity_check(h: DefiningGraph, g=None) -> bool:
    """``Δ_{H*} = 2Δ_{S₁(e)} + 2Δ_{S₁'(e)}`` with the right side read off the 2-ball."""
    g = ball(h, 2) if g is None else g
    pair = associated_pair(h)
    order = ball_letter_order(g, h, pair.letters)
    l1, l2 = _s1_laplacians(g, g.root, order)
    return bool((pair.laplacian() == 2 * l1 + 2 * l2).all())


def lambda2_bound_check(h: DefiningGraph) -> bool | None:
    """``λ₂(-Δ_{H*}) <= |S*|`` where the hypotheses hold; None when they do not."""
    d = len(associated_pair(h))
    r3 = [o == 3 for o in h.orders]
    if not ((not any(r3) and d >= 2) or (all(r3) and d >= 4)):
        return None
    return spectral_summary(h).lambda2 <= d + 1e-9


# ---------------------------------------------------------------------------
# two-vertex neighbourhood configuration


def edge_configuration_kappa(n: int, l: int, with_z: bool) -> Fraction:
    """``κ_LLY(x,y)`` for an edge with ``n`` 4-cycles, ``l`` leaf pairs and an optional triangle."""
    if n < 0 or l < 0 or n + l < 1:
        raise ValueError("need non-negative n, l with n + l >= 1")
    if with_z:
        return Fraction(3 - 2 * l, n + l + 2)
    return Fraction(2 - 2 * l, n + l + 1)


def edge_configuration_graph(n: int, l: int, with_z: bool):
    """A finite graph with the neighbourhood structure of the configuration.

    Vertex 0 is ``x`` and 1 is ``y``; ``x`` has private neighbours
    ``x_1..x_l`` and ``u_1..u_n``, ``y`` has ``y_1..y_l`` and ``v_1..v_n``,
    ``u_j ~ v_j``, and optionally a common neighbour ``z``. Nothing else
    is joined, so the required distance-3 pairs are at distance 3.
    """
    names = ["x", "y"]
    edges = [(0, 1)]

    def add(name, nbrs):
        names.append(name)
        k = len(names) - 1
        edges.extend((k, v) for v in nbrs)
        return k

    for i in range(l):
        add(f"x{i + 1}", [0])
        add(f"y{i + 1}", [1])
    for j in range(n):
        u = add(f"u{j + 1}", [0])
        add(f"v{j + 1}", [1, u])
    if with_z:
        add("z", [0, 1])
    return graph_from_edges(len(names), edges, names=names)


# ---------------------------------------------------------------------------
# weighting schemes and monotonicity


@dataclass(frozen=True)
class WeightingScheme:
    """Edge weights ``w₀`` on the non-trivial generator classes of a group.

    ``weights`` maps every letter of a non-collapsed class to the weight of
    its class; vertex measures are 1.
    """

    weights: dict

    def __post_init__(self):
        for (g, e), w in self.weights.items():
            if Fraction(w) <= 0:
                raise ValueError("weights must be positive")
            inv = (g, -e)
            if inv in self.weights and self.weights[inv] != w:
                raise ValueError("weights must be invariant under inversion")

    def __call__(self, cls) -> Fraction:
        ws = {self.weights[s] for s in cls}
        if len(ws) != 1:
            raise ValueError("letters of one class carry different weights")
        return Fraction(ws.pop())

    def to_dict(self, names) -> dict:
        return {f"{names[g]}{'' if e > 0 else '^-1'}": str(w) for (g, e), w in sorted(self.weights.items())}


def unit_weights(t: CosetTable) -> WeightingScheme:
    classes, _ = generator_classes(t)
    return WeightingScheme({s: Fraction(1) for cls in classes for s in cls})


def raach_classes(h: DefiningGraph) -> list[tuple]:
    """Letters of ``S*`` grouped by element: ``s`` and ``s^-1`` coincide only for involutions."""
    out = []
    for g, o in enumerate(h.orders):
        out += [((g, 1), (g, -1))] if o == 2 else [((g, 1),), ((g, -1),)]
    return out


def adapted_weights(p: Presentation, p2: Presentation, w0: WeightingScheme | None = None,
                    t: CosetTable | None = None, t2: CosetTable | None = None) -> WeightingScheme:
    """Sum ``w₀`` over the source classes merged into each target class.

    Source classes that collapse in the target are dropped.
    """
    if not p.relator_set() <= p2.relator_set():
        raise ValueError("relators of the source are not contained in the target's relators")
    if t is None and p.kind == "raach":
        src_classes = raach_classes(p.graph)
    else:
        t = todd_coxeter(p) if t is None else t
        src_classes, _ = generator_classes(t)
    t2 = todd_coxeter(p2) if t2 is None else t2
    if w0 is None:
        w0 = WeightingScheme({s: Fraction(1) for cls in src_classes for s in cls})
    dst_classes, _ = generator_classes(t2)
    owner = {s: k for k, cls in enumerate(dst_classes) for s in cls}
    total = [Fraction(0)] * len(dst_classes)
    for cls in src_classes:
        k = owner.get(cls[0])
        if k is not None:
            total[k] += w0(cls)
    return WeightingScheme({s: total[k] for k, cls in enumerate(dst_classes) for s in cls})


@dataclass(frozen=True)
class Record:
    claim: str
    lhs: str
    rhs: str
    status: str
    witness_ref: str

    def to_dict(self) -> dict:
        return {"claim": self.claim, "lhs": self.lhs, "rhs": self.rhs, "status": self.status,
                "witness_ref": self.witness_ref}


@dataclass
class MonotonicityReport:
    name: str
    records: list = field(default_factory=list)
    unweighted_decrease: bool = False
    weights: dict = field(default_factory=dict)
    sizes: tuple = ()

    @property
    def hypotheses_ok(self) -> bool:
        return all(r.status != "violated" for r in self.records if r.claim.startswith("hypothesis"))

    @property
    def ok(self) -> bool:
        return all(r.status != "violated" for r in self.records)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return f"{linalg.format_fraction(v)} ({float(v):.12g})"
    return f"{v:.12g}"


def _be_values(g) -> list[float]:
    if g.n == 1:
        raise ValueError("the quotient is trivial, so curvature is undefined")
    return [bakry_emery(g, x, WEIGHTED, checks=0).value for x in g.vertices()]


def _kappa_values(g) -> dict:
    out = {}
    for u, v, _ in g.edges():
        out[(u, v)] = out[(v, u)] = kappa_lly_laplacian(g, u, v, WEIGHTED).exact
    return out


def monotonicity_check(p: Presentation, p2: Presentation, w0: WeightingScheme | None = None,
                       name: str = "", max_cosets: int = 100_000, tol: float = 1e-9) -> MonotonicityReport:
    """Compare weighted curvatures of ``Cay(Γ)`` and ``Cay(Γ')`` under ``Φ``.

    Checks the weight relations first; then ``K' >= K - tol`` at every
    vertex and ``κ' >= κ - tol`` on every edge that is not collapsed. The
    unweighted comparison is also run and its outcome recorded.
    """
    t, t2 = todd_coxeter(p, max_cosets), todd_coxeter(p2, max_cosets)
    w0 = unit_weights(t) if w0 is None else w0
    w0p = adapted_weights(p, p2, w0, t, t2)
    g = cayley_from_cosets(t, w0)
    g2 = cayley_from_cosets(t2, w0p)
    phi = quotient_map(p, p2, t, t2)
    rep = MonotonicityReport(name or f"{p} -> {p2}", weights=w0p.to_dict(p2.generators), sizes=(g.n, g2.n))
    rec = rep.records.append
    rec(Record("hypothesis: surjective 1-Lipschitz", str(phi.lipschitz), str(phi.surjective),
               "ok" if phi.lipschitz and phi.surjective else "violated", "map"))
    bad = lipschitz_quotient_conditions(g, g2, phi.images)
    rec(Record("hypothesis: weight relations", str(len(bad)), "0", "ok" if not bad else "violated",
               "; ".join(bad[:3]) or "all vertices"))

    k1, k2 = _be_values(g), _be_values(g2)
    for x in g.vertices():
        lhs, rhs = k2[phi[x]], k1[x]
        rec(Record("BE monotone", _fmt(lhs), _fmt(rhs), "ok" if lhs >= rhs - tol else "violated", f"vertex {x}"))
    c1, c2 = _kappa_values(g), _kappa_values(g2)
    for u, v, _ in g.edges():
        a, b = phi[u], phi[v]
        if a == b:
            continue
        lhs, rhs = c2[(a, b)], c1[(u, v)]
        rec(Record("OR monotone", _fmt(lhs), _fmt(rhs), "ok" if lhs >= rhs - tol else "violated", f"edge {u}-{v}"))

    # the same comparison without adapted weights
    g2u = cayley_from_cosets(t2)
    gu = cayley_from_cosets(t)
    ku1, ku2 = _be_values(gu), _be_values(g2u)
    cu1, cu2 = _kappa_values(gu), _kappa_values(g2u)
    drop_k = any(ku2[phi[x]] < ku1[x] - tol for x in gu.vertices())
    drop_c = any(cu2[(phi[u], phi[v])] < cu1[(u, v)] - tol for u, v, _ in gu.edges() if phi[u] != phi[v])
    rep.unweighted_decrease = drop_k or drop_c
    rec(Record("unweighted comparison", f"K {_fmt(ku2[0])} kappa {_fmt(min(cu2.values()))}",
               f"K {_fmt(ku1[0])} kappa {_fmt(min(cu1.values()))}",
               "decrease" if rep.unweighted_decrease else "no decrease", "identity"))
    return rep


def lipschitz_quotient_conditions(g, g2, images) -> list[str]:
    """Violations of the measure and weight relations between ``g`` and ``g2``."""
    bad = []
    for x in g.vertices():
        xp = images[x]
        if g.m[x] != g2.m[xp]:
            bad.append(f"measure at {x}")
        sums = {}
        for y, w in g.adj[x].items():
            sums[images[y]] = sums.get(images[y], Fraction(0)) + w
        for yp, wp in g2.adj[xp].items():
            if sums.get(yp, Fraction(0)) != wp:
                bad.append(f"weight {x}->{yp}")
    return bad


def lipschitz_quotient_check(g, g2, images, trials: int = 100, seed: int = 0) -> dict:
    """Test ``Δ(f'∘Φ)(x) = (Δ'f')(Φx)`` exactly for random ``f'`` at every vertex."""
    bad = lipschitz_quotient_conditions(g, g2, images)
    rng = random.Random(seed)
    failures = 0
    for _ in range(trials):
        fp = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(g2.n)]
        f = [fp[images[x]] for x in g.vertices()]
        for x in g.vertices():
            if laplacian_apply(g, WEIGHTED, f, x) != laplacian_apply(g2, WEIGHTED, fp, images[x]):
                failures += 1
    return {"conditions": bad, "failures": failures, "holds": not bad and failures == 0}


def monotonicity_check_raach(h: DefiningGraph, extra, name: str = "", max_cosets: int = 100_000,
                             tol: float = 1e-9) -> MonotonicityReport:
    """Monotonicity from a RAACH to a finite quotient, source curvature by closed form.

    The source Cayley graph has unit weights, so its weighted curvatures
    are the non-normalized ones: ``K(e) = λ_min(A(e))`` and
    ``κ(s) = D κ_LLY(s)`` from the normalized closed form.
    """
    p = Presentation.from_graph(h)
    p2 = p.with_relators(extra)
    t2 = todd_coxeter(p2, max_cosets)
    w0p = adapted_weights(p, p2, None, None, t2)
    g2 = cayley_from_cosets(t2, w0p)
    d = len(associated_pair(h))
    rep = MonotonicityReport(name or f"{p} -> {p2}", weights=w0p.to_dict(p2.generators), sizes=(None, g2.n))
    rec = rep.records.append
    k_src = thm_be_raach(h).k_numeric
    for x, k in enumerate(_be_values(g2)):
        rec(Record("BE monotone", _fmt(k), _fmt(k_src), "ok" if k >= k_src - tol else "violated", f"vertex {x}"))
    c2 = _kappa_values(g2)
    for s in associated_pair(h).letters:
        v = t2.act(0, s)
        if v == 0:
            continue
        lhs, rhs = c2[(0, v)], d * thm_or_raach(h, s)
        rec(Record("OR monotone", _fmt(lhs), _fmt(rhs), "ok" if lhs >= rhs - tol else "violated",
                   f"letter {h.letter_name(s)}"))
    return rep
