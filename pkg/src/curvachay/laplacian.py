"""Weighted graph Laplacians and the Bakry-Emery Gamma operators.

Every Laplacian used here has the shape ``Δf(x) = Σ_y a(x,y) (f(y) - f(x))``
and only the coefficients ``a(x,y)`` depend on the kind:

``non_normalized``  ``a = 1`` on neighbours
``normalized``      ``a = 1 / deg(x)``
``weighted``        ``a = w(x,y) / m(x)``
``random_walk(p)``  ``a = (1 - p) w(x,y) / Σ_z w(x,z)``

The Gamma functions below evaluate the operators straight from their
definition by products of functions, which makes them a slow but
independent reference for the matrix assembly in :mod:`bakry_emery`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "LaplacianKind",
    "NON_NORMALIZED",
    "NORMALIZED",
    "WEIGHTED",
    "random_walk",
    "parse_kind",
    "InsufficientRadius",
    "coefficients",
    "laplacian_apply",
    "laplacian_matrix",
    "gamma",
    "gamma2",
]


class InsufficientRadius(ValueError):
    """The local graph does not hold a large enough ball around the vertex."""


@dataclass(frozen=True)
class LaplacianKind:
    name: str
    p: Fraction | None = None

    def __post_init__(self):
        if self.name not in ("non_normalized", "normalized", "weighted", "random_walk"):
            raise ValueError(f"unknown Laplacian kind {self.name!r}")
        if self.name == "random_walk":
            if self.p is None or not 0 <= Fraction(self.p) <= 1:
                raise ValueError("random_walk needs an idleness p in [0, 1]")
            object.__setattr__(self, "p", Fraction(self.p))

    def __str__(self) -> str:
        return f"random_walk({self.p})" if self.name == "random_walk" else self.name


NON_NORMALIZED = LaplacianKind("non_normalized")
NORMALIZED = LaplacianKind("normalized")
WEIGHTED = LaplacianKind("weighted")


def random_walk(p) -> LaplacianKind:
    return LaplacianKind("random_walk", Fraction(p))


_ALIASES = {
    "nonnorm": NON_NORMALIZED,
    "non_normalized": NON_NORMALIZED,
    "norm": NORMALIZED,
    "normalized": NORMALIZED,
    "weighted": WEIGHTED,
}


def parse_kind(text: str | LaplacianKind) -> LaplacianKind:
    if isinstance(text, LaplacianKind):
        return text
    t = text.strip().lower()
    if t in _ALIASES:
        return _ALIASES[t]
    if t.startswith("random_walk(") and t.endswith(")"):
        return random_walk(Fraction(t[len("random_walk("):-1]))
    raise ValueError(f"unknown Laplacian kind {text!r}")


def coefficients(g, kind: LaplacianKind, x: int) -> dict[int, Fraction]:
    """The coefficients ``a(x, y)`` of ``Δ`` at ``x`` for every neighbour ``y``."""
    nb = g.adj[x]
    if not nb:
        raise ValueError(f"vertex {x} is isolated")
    if kind.name == "non_normalized":
        return {y: Fraction(1) for y in nb}
    if kind.name == "normalized":
        d = Fraction(1, len(nb))
        return {y: d for y in nb}
    if kind.name == "weighted":
        mx = g.m[x]
        return {y: w / mx for y, w in nb.items()}
    # the idle mass p plays the role of the laziness, so m is not consulted
    total = sum(nb.values(), Fraction(0))
    return {y: (1 - kind.p) * w / total for y, w in nb.items()}


def _require(g, x: int, r: int):
    if g.certified_radius(x) < r:
        raise InsufficientRadius(f"vertex {x} needs a certified {r}-ball, graph holds {g.certified_radius(x)}")


def laplacian_apply(g, kind: LaplacianKind, f, x: int) -> Fraction:
    """``Δf(x)`` exactly; ``f`` maps vertices to numbers (dict or sequence)."""
    _require(g, x, 1)
    fx = f[x]
    try:
        return sum((a * (f[y] - fx) for y, a in coefficients(g, kind, x).items()), Fraction(0))
    except (KeyError, IndexError) as exc:
        raise ValueError(f"f is undefined at a neighbour of {x}") from exc


def laplacian_matrix(g, kind: LaplacianKind, vertices=None) -> np.ndarray:
    """Exact matrix of ``Δ`` restricted to ``vertices`` (all vertices by default)."""
    vs = list(g.vertices()) if vertices is None else list(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    out = np.empty((n, n), dtype=object)
    out[...] = Fraction(0)
    for v in vs:
        for y, a in coefficients(g, kind, v).items():
            if y in pos:
                out[pos[v], pos[y]] += a
            out[pos[v], pos[v]] -= a
    return out


class _Fn:
    """Lazy pointwise function algebra on the local graph."""

    def __init__(self, fn):
        self.fn = fn

    def __getitem__(self, v):
        return self.fn(v)


def _as_fn(f):
    return f if isinstance(f, _Fn) else _Fn(lambda v, f=f: f[v])


def _lap(g, kind, f) -> _Fn:
    f = _as_fn(f)
    return _Fn(lambda v: sum((a * (f[y] - f[v]) for y, a in coefficients(g, kind, v).items()), Fraction(0)))


def _gamma_fn(g, kind, f, h) -> _Fn:
    f, h = _as_fn(f), _as_fn(h)
    fh = _Fn(lambda v: f[v] * h[v])
    lf, lh, lfh = _lap(g, kind, f), _lap(g, kind, h), _lap(g, kind, fh)
    return _Fn(lambda v: (lfh[v] - f[v] * lh[v] - h[v] * lf[v]) / 2)


def gamma(g, kind: LaplacianKind, f, h, x: int) -> Fraction:
    """``Γ(f,h)(x) = ½(Δ(fh) - fΔh - hΔf)(x)`` evaluated literally."""
    _require(g, x, 1)
    return _gamma_fn(g, kind, f, h)[x]


def gamma2(g, kind: LaplacianKind, f, h, x: int) -> Fraction:
    """``Γ₂(f,h)(x) = ½(ΔΓ(f,h) - Γ(f,Δh) - Γ(h,Δf))(x)`` evaluated literally."""
    _require(g, x, 2)
    gfh = _gamma_fn(g, kind, f, h)
    lf, lh = _lap(g, kind, f), _lap(g, kind, h)
    return (_lap(g, kind, gfh)[x] - _gamma_fn(g, kind, f, lh)[x] - _gamma_fn(g, kind, h, lf)[x]) / 2
