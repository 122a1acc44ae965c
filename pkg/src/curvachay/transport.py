"""Exact Wasserstein-1 distance between finitely supported measures.

The transport problem is solved by successive shortest paths on the
bipartite support graph with exact rational flows. Shortest paths use
Bellman-Ford because residual arcs carry negative costs. When the flow is
complete, node potentials of the residual graph give an optimal dual, and
from it a 1-Lipschitz Kantorovich potential is built and checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["TransportResult", "wasserstein_w1", "MassMismatch"]


class MassMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TransportResult:
    """Optimal plan, dual certificate and Kantorovich potential."""

    value: Fraction
    plan: dict
    dual_source: dict
    dual_target: dict
    potential: dict
    dual_value: Fraction
    potential_value: Fraction

    @property
    def certified(self) -> bool:
        return self.value == self.dual_value == self.potential_value

    def __iter__(self):
        # lets callers unpack ``value, plan = wasserstein_w1(...)``
        yield self.value
        yield self.plan


def _clean(mu) -> dict:
    out = {}
    for v, m in dict(mu).items():
        m = Fraction(m)
        if m < 0:
            raise ValueError("measures must be non-negative")
        if m:
            out[v] = m
    return out


def _distance(dist, u, v):
    if u == v:
        return 0
    return dist(u, v) if callable(dist) else dist[u][v]


def wasserstein_w1(mu1, mu2, dist) -> TransportResult:
    """``W₁(μ₁, μ₂)`` for measures given as ``{vertex: mass}``.

    ``dist`` is a callable ``d(u, v)`` or a nested mapping ``d[u][v]``
    covering both supports.
    """
    a, b = _clean(mu1), _clean(mu2)
    if sum(a.values()) != sum(b.values()):
        raise MassMismatch(f"total masses differ: {sum(a.values())} vs {sum(b.values())}")
    src = sorted(a, key=repr)
    dst = sorted(b, key=repr)
    ns, nt = len(src), len(dst)
    # nodes: 0 = super source, 1..ns sources, ns+1..ns+nt targets, last = sink
    sink = ns + nt + 1
    n = sink + 1
    cost = {}
    cap = {}
    adj = [[] for _ in range(n)]

    def arc(u, v, c, k):
        cost[(u, v)] = c
        cost[(v, u)] = -c
        cap[(u, v)] = k
        cap[(v, u)] = Fraction(0)
        adj[u].append(v)
        adj[v].append(u)

    inf_cap = sum(a.values()) + 1
    for i, u in enumerate(src):
        arc(0, 1 + i, 0, a[u])
        for j, v in enumerate(dst):
            arc(1 + i, 1 + ns + j, Fraction(_distance(dist, u, v)), inf_cap)
    for j, v in enumerate(dst):
        arc(1 + ns + j, sink, 0, b[v])

    def bellman_ford(sources):
        d = [None] * n
        pred = [None] * n
        for s in sources:
            d[s] = Fraction(0)
        for _ in range(n):
            changed = False
            for u in range(n):
                if d[u] is None:
                    continue
                for v in adj[u]:
                    if cap[(u, v)] > 0:
                        nd = d[u] + cost[(u, v)]
                        if d[v] is None or nd < d[v]:
                            d[v] = nd
                            pred[v] = u
                            changed = True
            if not changed:
                return d, pred
        raise AssertionError("negative cycle in residual graph")

    remaining = sum(a.values())
    while remaining > 0:
        d, pred = bellman_ford([0])
        if d[sink] is None:
            raise AssertionError("transport problem infeasible")
        path = [sink]
        while path[-1] != 0:
            path.append(pred[path[-1]])
        path.reverse()
        push = min(cap[(u, v)] for u, v in zip(path, path[1:]))
        for u, v in zip(path, path[1:]):
            cap[(u, v)] -= push
            cap[(v, u)] += push
        remaining -= push

    plan = {}
    value = Fraction(0)
    for i, u in enumerate(src):
        for j, v in enumerate(dst):
            f = cap[(1 + ns + j, 1 + i)]
            if f:
                plan[(u, v)] = f
                value += f * Fraction(_distance(dist, u, v))

    # potentials from all nodes at once: feasible for every residual arc
    pot, _ = bellman_ford(range(n))
    alpha = {u: -pot[1 + i] for i, u in enumerate(src)}
    beta = {v: pot[1 + ns + j] for j, v in enumerate(dst)}
    for (u, v), f in plan.items():
        if alpha[u] + beta[v] != Fraction(_distance(dist, u, v)):
            raise AssertionError("complementary slackness fails")
    dual_value = sum((alpha[u] * a[u] for u in src), Fraction(0)) + sum((beta[v] * b[v] for v in dst), Fraction(0))

    support = list(dict.fromkeys(src + dst))
    phi = {z: min(Fraction(_distance(dist, z, v)) - beta[v] for v in dst) for z in support}
    for z in support:
        for z2 in support:
            if abs(phi[z] - phi[z2]) > _distance(dist, z, z2):
                raise AssertionError("Kantorovich potential is not 1-Lipschitz")
    pvalue = sum((phi[z] * (a.get(z, 0) - b.get(z, 0)) for z in support), Fraction(0))
    res = TransportResult(value, plan, alpha, beta, phi, dual_value, pvalue)
    if not res.certified:
        raise AssertionError(f"duality gap: primal {value}, dual {dual_value}, potential {pvalue}")
    return res
