"""Bakry-Emery curvature (dimension infinity) through the curvature matrix.

With ``f(x) = 0`` the forms ``Γf(x)`` and ``Γ₂f(x)`` are quadratic in the
values of ``f`` on the spheres ``S₁(x)`` and ``S₂(x)``. Writing ``a(u,v)``
for the Laplacian coefficients, ``Γ(x)`` is the diagonal ``½ a(x,y)`` and

    Γ₂(x) = ½ Σ_y a(x,y) (Γ(y) - Γ(x)) - ½ Σ_y a(x,y) sym((e_y - e_x)(L_y - L_x)ᵀ)

where ``L_v`` is the row of the Laplacian at ``v``. Eliminating the
``S₂`` block by a Schur complement leaves ``Q(x)`` on ``S₁`` and
``K(x) = λ_min(Γ(x)^{-½} Q(x) Γ(x)^{-½})``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .laplacian import NON_NORMALIZED, InsufficientRadius, LaplacianKind, coefficients, gamma, gamma2

__all__ = [
    "CurvatureMatrix",
    "CurvatureResult",
    "SingularSchurBlock",
    "gamma2_matrix",
    "curvature_matrix",
    "curvature_matrix_closed_form",
    "bakry_emery",
    "spheres",
]


class SingularSchurBlock(np.linalg.LinAlgError):
    """The ``S₂ × S₂`` block of ``Γ₂(x)`` is singular."""


@dataclass(frozen=True)
class CurvatureMatrix:
    """Curvature matrix data at one vertex.

    ``a`` is the exact symmetric curvature matrix when every entry is
    rational and ``None`` otherwise; ``a_float`` is always available.
    """

    vertex: int
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    gamma2: np.ndarray
    q: np.ndarray
    gamma_diag: tuple[Fraction, ...]
    a: np.ndarray | None
    a_float: np.ndarray

    @property
    def n(self) -> int:
        return len(self.s1)


@dataclass
class CurvatureResult:
    """A curvature value with the data that certifies it."""

    value: float
    exact: Fraction | None = None
    witness: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value_rational": None if self.exact is None else linalg.format_fraction(self.exact),
            "value_float": self.value,
            "witness": self.witness,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def spheres(g, x: int) -> tuple[list[int], list[int]]:
    """``S₁(x)`` in adjacency order and ``S₂(x)`` in order of first discovery."""
    s1 = sorted(g.adj[x])
    seen = set(s1) | {x}
    s2 = []
    for y in s1:
        for z in sorted(g.adj[y]):
            if z not in seen:
                seen.add(z)
                s2.append(z)
    return s1, s2


def gamma2_matrix(g, x: int, kind: LaplacianKind = NON_NORMALIZED):
    """Exact matrices of ``Γ(x)`` (on ``S₁``) and ``Γ₂(x)`` (on ``S₁ ∪ S₂``)."""
    if g.certified_radius(x) < 2:
        raise InsufficientRadius(f"vertex {x} needs a certified 2-ball")
    s1, s2 = spheres(g, x)
    order = [x] + s1 + s2
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    big = linalg.zeros(n)

    def lap_row(v):
        row = {}
        for u, a in coefficients(g, kind, v).items():
            row[u] = row.get(u, Fraction(0)) + a
            row[v] = row.get(v, Fraction(0)) - a
        return row

    def gamma_form(v, coeff, into):
        # adds coeff * Γ(v) with Γf(v) = ½ Σ a(v,u) (f(u) - f(v))²
        for u, a in coefficients(g, kind, v).items():
            c = coeff * a / 2
            i, j = pos[u], pos[v]
            into[i, i] += c
            into[j, j] += c
            into[i, j] -= c
            into[j, i] -= c

    ax = coefficients(g, kind, x)
    lx = lap_row(x)
    for y, a in ax.items():
        gamma_form(y, a / 2, big)
        gamma_form(x, -a / 2, big)
        ly = lap_row(y)
        diff = {v: ly.get(v, 0) - lx.get(v, 0) for v in set(ly) | set(lx)}
        iy, ix = pos[y], pos[x]
        for v, c in diff.items():
            if c == 0:
                continue
            k = pos[v]
            t = a * c / 4
            # -½ a sym((e_y - e_x) diffᵀ)
            big[iy, k] -= t
            big[k, iy] -= t
            big[ix, k] += t
            big[k, ix] += t
    g2 = big[1:, 1:]
    gam = tuple(ax[y] / 2 for y in s1)
    return s1, s2, gam, g2


def _conjugate(q: np.ndarray, gam) -> tuple[np.ndarray | None, np.ndarray]:
    n = q.shape[0]
    af = np.empty((n, n))
    exact = linalg.zeros(n)
    rational = True
    for i in range(n):
        for j in range(n):
            prod = gam[i] * gam[j]
            af[i, j] = float(q[i, j]) / float(prod) ** 0.5
            if rational:
                r = linalg.rational_sqrt(prod)
                if r is None:
                    rational = False
                else:
                    exact[i, j] = q[i, j] / r
    return (exact if rational else None), af


def curvature_matrix(g, x: int, kind: LaplacianKind = NON_NORMALIZED) -> CurvatureMatrix:
    """Schur-complement curvature matrix at ``x`` (``S₁`` in adjacency order)."""
    s1, s2, gam, g2 = gamma2_matrix(g, x, kind)
    k = len(s1)
    try:
        q = linalg.schur_complement(g2, k)
    except np.linalg.LinAlgError as exc:
        raise SingularSchurBlock(f"Γ₂ block on S₂({x}) is singular") from exc
    a, af = _conjugate(q, gam)
    return CurvatureMatrix(x, tuple(s1), tuple(s2), g2, q, gam, a, af)


def curvature_matrix_closed_form(g, x: int) -> np.ndarray:
    """The Laplacian description of the unit-weight, non-normalized matrix.

    ``A = -2Δ_{S₁} - 2Δ_{S₁'} + J + (3-D)/2 Id - ½ diag(d⁺)`` with ``S₁'``
    weights ``Σ_z 1/d⁻(z)`` over common neighbours ``z`` in ``S₂``.
    """
    if g.certified_radius(x) < 2:
        raise InsufficientRadius(f"vertex {x} needs a certified 2-ball")
    if not all(w == 1 for w in g.adj[x].values()) or not all(
            w == 1 for y in g.adj[x] for w in g.adj[y].values()):
        raise ValueError("closed form needs unit edge weights")
    s1, s2 = spheres(g, x)
    d = len(s1)
    in_s1 = set(s1)
    s2set = set(s2)
    indeg = {z: sum(1 for y in g.adj[z] if y in in_s1) for z in s2}
    out = linalg.zeros(d)
    for i, yi in enumerate(s1):
        total = Fraction(0)
        for j, yj in enumerate(s1):
            if i == j:
                continue
            w1 = Fraction(1) if yj in g.adj[yi] else Fraction(0)
            w2 = sum((Fraction(1, indeg[z]) for z in g.adj[yi] if z in s2set and z in g.adj[yj]), Fraction(0))
            out[i, j] = 1 - 2 * (w1 + w2)
            total += w1 + w2
        dplus = sum(1 for z in g.adj[yi] if z in s2set)
        out[i, i] = 2 * total + 1 + Fraction(3 - d, 2) - Fraction(dplus, 2)
    return out


def _witness_function(cm: CurvatureMatrix, vec: np.ndarray) -> dict[int, float]:
    """Lift an eigenvector of ``A`` to the minimising ``f`` on ``B₂(x)``."""
    k = cm.n
    f1 = np.array([vec[i] / float(cm.gamma_diag[i]) ** 0.5 for i in range(k)])
    m22 = linalg.to_float(cm.gamma2[k:, k:])
    m21 = linalg.to_float(cm.gamma2[k:, :k])
    f2 = -np.linalg.solve(m22, m21 @ f1) if len(cm.s2) else np.zeros(0)
    f = {cm.vertex: 0.0}
    f.update({v: float(t) for v, t in zip(cm.s1, f1)})
    f.update({v: float(t) for v, t in zip(cm.s2, f2)})
    return f


def _local_function(g, x, values: dict):
    """Extend ``values`` by zero so definitional evaluation sees every vertex."""
    return {v: values.get(v, 0) for v in g.bfs(x, 3)}


def bakry_emery(g, x: int, kind: LaplacianKind = NON_NORMALIZED, checks: int = 100,
                seed: int = 0, exact: bool = True) -> CurvatureResult:
    """``K(x)`` as the minimum eigenvalue of the curvature matrix.

    The Jacobi eigenvalue is certified twice through the definitional
    operators: the lifted eigenvector attains ``Γ₂f - KΓf ≈ 0`` and
    ``checks`` random integer functions satisfy ``Γ₂f - KΓf ≥ -1e-9``.
    An exact rational ``K`` is reported when one can be proven.
    """
    cm = curvature_matrix(g, x, kind)
    vals, vecs = linalg.jacobi_eigh(cm.a_float)
    k = float(vals[0])
    vec = vecs[:, 0]
    exact_k = None
    if exact and cm.a is not None:
        exact_k = linalg.exact_min_eigenvalue(cm.a, k)
        if exact_k is not None:
            k = float(exact_k)
    res = CurvatureResult(k, exact_k)
    fw = _witness_function(cm, vec)
    fl = _local_function(g, x, fw)
    g1 = float(gamma(g, kind, fl, fl, x))
    g2 = float(gamma2(g, kind, fl, fl, x))
    res.witness = {
        "eigenvector": [float(t) for t in vec],
        "s1": [g.vertex_name(v) for v in cm.s1],
        "gamma": g1,
        "gamma2": g2,
    }
    res.checks["witness_gap"] = g2 - k * g1
    if checks:
        rng = random.Random(seed)
        worst = float("inf")
        ball2 = [v for v in g.bfs(x, 2) if v != x]
        for _ in range(checks):
            f = {v: Fraction(rng.randint(-6, 6)) for v in ball2}
            f[x] = Fraction(0)
            fl = _local_function(g, x, f)
            val = float(gamma2(g, kind, fl, fl, x)) - k * float(gamma(g, kind, fl, fl, x))
            worst = min(worst, val)
        res.checks["random_min"] = worst
        res.checks["random_count"] = checks
    return res
