"""Ollivier-Ricci and Lin-Lu-Yau curvature on edges of local graphs.

Two independent routes to the Lin-Lu-Yau curvature are provided. The
transport route evaluates ``κ_p = 1 - W₁(μ_x^p, μ_y^p)`` at the idleness
``p = 1/(max(deg x, deg y) + 1)`` where ``κ_LLY = κ_p / (1 - p)`` holds
exactly. The Laplacian route solves the linear program

    inf { Δf(x) - Δf(y) : f 1-Lipschitz, f(y) - f(x) = 1 }

over the values of ``f`` on ``B₁(x) ∪ B₁(y)``; any 1-Lipschitz function on
that set extends to the whole graph, so the restriction loses nothing.
"""

from __future__ import annotations

from fractions import Fraction

from .bakry_emery import CurvatureResult
from .laplacian import NORMALIZED, InsufficientRadius, LaplacianKind, coefficients
from .simplex import solve_lp
from .transport import wasserstein_w1

__all__ = [
    "local_distances",
    "measure",
    "kappa_p",
    "kappa_lly_transport",
    "kappa_lly_laplacian",
    "lly_idleness",
    "kappa_p_curve",
    "kappa_p_pieces",
]

MIN_RADIUS = 4


def _check_edge(g, x: int, y: int):
    if y not in g.adj[x]:
        raise ValueError(f"vertices {x} and {y} are not adjacent")


def local_distances(g, x: int, y: int) -> dict[int, dict[int, int]]:
    """Exact graph distances between all vertices of ``B₁(x) ∪ B₁(y)``.

    All these distances are at most 3 and every geodesic realising them
    stays inside ``B₃`` of an endpoint, so a certified 4-ball around ``x``
    (or ``y``) determines them.
    """
    _check_edge(g, x, y)
    if max(g.certified_radius(x), g.certified_radius(y)) < MIN_RADIUS:
        raise InsufficientRadius(f"edge ({x},{y}) needs a certified {MIN_RADIUS}-ball around an endpoint")
    verts = sorted({x, y} | set(g.adj[x]) | set(g.adj[y]))
    return {u: {v: d for v, d in g.bfs(u, 3).items() if v in verts} for u in verts}


def measure(g, x: int, p, use_weights: bool = False) -> dict[int, Fraction]:
    """``μ_x^p``: mass ``p`` at ``x``, the rest spread over the neighbours."""
    p = Fraction(p)
    nb = g.adj[x]
    if use_weights:
        total = sum(nb.values(), Fraction(0))
        mu = {y: (1 - p) * w / total for y, w in nb.items()}
    else:
        mu = {y: (1 - p) / len(nb) for y in nb}
    mu[x] = p
    return mu


def kappa_p(g, x: int, y: int, p, dist=None, use_weights: bool = False, full: bool = False):
    """``κ_p(x, y) = 1 - W₁(μ_x^p, μ_y^p)`` as an exact rational."""
    _check_edge(g, x, y)
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("idleness p must lie in [0, 1]")
    if dist is None:
        dist = local_distances(g, x, y)
    res = wasserstein_w1(measure(g, x, p, use_weights), measure(g, y, p, use_weights), dist)
    k = 1 - res.value
    return (k, res) if full else k


def lly_idleness(g, x: int, y: int) -> Fraction:
    return Fraction(1, max(g.degree(x), g.degree(y)) + 1)


def kappa_lly_transport(g, x: int, y: int, dist=None, use_weights: bool = False, full: bool = False):
    """Lin-Lu-Yau curvature of the edge ``xy`` through one exact transport problem."""
    p = lly_idleness(g, x, y)
    k, res = kappa_p(g, x, y, p, dist, use_weights, full=True)
    val = k / (1 - p)
    return (val, res) if full else val


def kappa_p_curve(g, x: int, y: int, ps, dist=None) -> list[Fraction]:
    if dist is None:
        dist = local_distances(g, x, y)
    return [kappa_p(g, x, y, p, dist) for p in ps]


def kappa_lly_laplacian(g, x: int, y: int, kind: LaplacianKind = NORMALIZED, dist=None) -> CurvatureResult:
    """Curvature of ``xy`` as the optimum of the Lipschitz linear program.

    The witness is the optimal ``f`` on ``B₁(x) ∪ B₁(y)``.
    """
    if dist is None:
        dist = local_distances(g, x, y)
    verts = sorted(dist)
    free = [v for v in verts if v not in (x, y)]
    col = {v: i for i, v in enumerate(free)}
    # g_v = f_v + 2 >= 0 since |f_v - f_x| <= d(v, x) <= 2
    shift = Fraction(2)
    fixed = {x: Fraction(0), y: Fraction(1)}
    ax, ay = coefficients(g, kind, x), coefficients(g, kind, y)

    # objective Δf(x) - Δf(y) = Σ a_xz f_z - Σ a_xz f_x - Σ a_yz f_z + Σ a_yz f_y
    lin = {}
    const = Fraction(0)
    for z, a in ax.items():
        lin[z] = lin.get(z, 0) + a
        const -= a * fixed[x]
    for z, a in ay.items():
        lin[z] = lin.get(z, 0) - a
        const += a * fixed[y]
    c = [Fraction(0)] * len(free)
    for z, a in lin.items():
        if z in fixed:
            const += a * fixed[z]
        else:
            c[col[z]] += a
            const -= a * shift

    rows, rhs = [], []
    for u in verts:
        for v in verts:
            if u == v or (u in fixed and v in fixed):
                continue
            d = dist[u][v]
            # skip constraints implied through an intermediate vertex
            if any(dist[u][w] + dist[w][v] == d for w in verts if w not in (u, v)):
                continue
            # f_u - f_v <= d
            row = [Fraction(0)] * len(free)
            bound = Fraction(d)
            if u in fixed:
                bound -= fixed[u]
            else:
                row[col[u]] += 1
                bound += shift
            if v in fixed:
                bound += fixed[v]
            else:
                row[col[v]] -= 1
                bound -= shift
            rows.append(row)
            rhs.append(bound)
    if fixed[y] - fixed[x] > dist[x][y]:
        raise AssertionError("x and y are not adjacent in the distance table")
    lp = solve_lp(c, rows, rhs)
    f = dict(fixed)
    for v in free:
        f[v] = lp.x[col[v]] - shift
    value = lp.value + const
    res = CurvatureResult(float(value), value)
    res.witness = {"f": {str(g.vertex_name(v)): str(f[v]) for v in verts}}
    res.checks["pivots"] = lp.pivots
    res.checks["constraints"] = len(rows)
    return res


def kappa_p_pieces(g, x: int, y: int, dist=None, depth: int = 12):
    """Linear pieces of ``p ↦ κ_p(x, y)`` on ``[0, 1]``.

    Returns ``(lines, concave)`` where ``lines`` lists ``(slope, intercept)``
    left to right. An interval whose midpoint value equals the chord is a
    single piece, since a concave function touching a chord inside an
    interval is linear on all of it; otherwise the interval is halved, down
    to ``2^-depth``. Intervals left unresolved hold a kink, and the lines on
    either side must meet inside them.
    """
    if dist is None:
        dist = local_distances(g, x, y)
    cache = {}

    def f(p):
        if p not in cache:
            cache[p] = kappa_p(g, x, y, p, dist)
        return cache[p]

    linear, gaps = [], []

    def walk(a, b, level):
        mid = (a + b) / 2
        if 2 * f(mid) == f(a) + f(b):
            linear.append((a, b))
        elif level >= depth:
            gaps.append((a, b))
        else:
            walk(a, mid, level + 1)
            walk(mid, b, level + 1)

    walk(Fraction(0), Fraction(1), 0)
    lines = []
    for a, b in sorted(linear):
        slope = (f(b) - f(a)) / (b - a)
        line = (slope, f(a) - slope * a)
        if not lines or lines[-1] != line:
            lines.append(line)
    concave = all(s1 > s2 for (s1, _), (s2, _) in zip(lines, lines[1:]))
    # a kink hidden in a gap: neighbouring lines must cross inside it
    for a, b in gaps:
        left = next((ln for ln in lines if ln[0] * a + ln[1] == f(a)), None)
        right = next((ln for ln in reversed(lines) if ln[0] * b + ln[1] == f(b)), None)
        if left is None or right is None or left == right:
            concave = False
            continue
        cross = (right[1] - left[1]) / (left[0] - right[0])
        if not a <= cross <= b:
            concave = False
    return lines, concave
