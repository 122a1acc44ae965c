"""Exact rational matrices and a cyclic Jacobi eigensolver.

Exact matrices are numpy object arrays holding :class:`fractions.Fraction`
entries; numpy's ``@`` works on them and keeps everything exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = [
    "frac_matrix",
    "identity",
    "is_symmetric",
    "solve",
    "inverse",
    "schur_complement",
    "rational_sqrt",
    "to_float",
    "is_psd",
    "is_singular",
    "jacobi_eigh",
    "min_eigenvalue",
    "matrix_to_csv",
    "format_fraction",
]


def frac_matrix(rows) -> np.ndarray:
    """Build an exact object array from nested sequences of numbers."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else np.zeros((0, 0), dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = Fraction(v)
    return out


def identity(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    out[...] = Fraction(0)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def zeros(n: int, m: int | None = None) -> np.ndarray:
    out = np.empty((n, n if m is None else m), dtype=object)
    out[...] = Fraction(0)
    return out


def is_symmetric(a: np.ndarray) -> bool:
    n = a.shape[0]
    return all(a[i, j] == a[j, i] for i in range(n) for j in range(i + 1, n))


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ x = b`` exactly by Gauss-Jordan elimination.

    Raises ``np.linalg.LinAlgError`` if ``a`` is singular.
    """
    n = a.shape[0]
    b2 = b.reshape(n, -1)
    aug = np.empty((n, n + b2.shape[1]), dtype=object)
    aug[:, :n] = a
    aug[:, n:] = b2
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r, col] != 0), None)
        if piv is None:
            raise np.linalg.LinAlgError("singular matrix")
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        pv = aug[col, col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r, col] != 0:
                factor = aug[r, col]
                aug[r] = [u - factor * v for u, v in zip(aug[r], aug[col])]
    x = aug[:, n:]
    return x.reshape(b.shape) if b.ndim == 1 else x


def inverse(a: np.ndarray) -> np.ndarray:
    return solve(a, identity(a.shape[0]))


def schur_complement(m: np.ndarray, k: int) -> np.ndarray:
    """Return ``M/M22 = M11 - M12 M22^{-1} M21`` for the split after row ``k``."""
    m11, m12 = m[:k, :k], m[:k, k:]
    m21, m22 = m[k:, :k], m[k:, k:]
    if m22.shape[0] == 0:
        return m11.copy()
    diag = all(m22[i, j] == 0 for i in range(m22.shape[0]) for j in range(m22.shape[0]) if i != j)
    if diag:
        if any(m22[i, i] == 0 for i in range(m22.shape[0])):
            raise np.linalg.LinAlgError("singular matrix")
        x = np.empty(m21.shape, dtype=object)
        for i in range(m21.shape[0]):
            for j in range(m21.shape[1]):
                x[i, j] = m21[i, j] / m22[i, i]
    else:
        x = solve(m22, m21)
    return m11 - m12 @ x


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def to_float(a: np.ndarray) -> np.ndarray:
    return np.array([[float(v) for v in row] for row in a], dtype=float).reshape(a.shape)


def _ldl_psd(a: np.ndarray) -> tuple[bool, bool]:
    """Exact symmetric elimination; returns (is_psd, is_singular)."""
    a = a.copy()
    n = a.shape[0]
    singular = False
    for k in range(n):
        p = a[k, k]
        if p < 0:
            return False, singular
        if p == 0:
            if any(a[k, j] != 0 for j in range(k + 1, n)):
                return False, singular
            singular = True
            continue
        for i in range(k + 1, n):
            if a[i, k] == 0:
                continue
            f = a[i, k] / p
            for j in range(k + 1, n):
                a[i, j] -= f * a[k, j]
    return True, singular


def is_psd(a: np.ndarray) -> bool:
    return _ldl_psd(a)[0]


def is_singular(a: np.ndarray) -> bool:
    try:
        solve(a, identity(a.shape[0]))
    except np.linalg.LinAlgError:
        return True
    return False


def jacobi_eigh(a, tol: float = 1e-12, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm drops below ``tol`` (scaled
    by the matrix norm when that exceeds 1). Returns ascending eigenvalues and
    the matching eigenvectors as columns.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    v = np.eye(n)
    if n == 0:
        return np.zeros(0), v
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.tril(a, -1) ** 2)) * 2)
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def min_eigenvalue(a) -> tuple[float, np.ndarray]:
    w, v = jacobi_eigh(a)
    return float(w[0]), v[:, 0]


def exact_min_eigenvalue(a: np.ndarray, approx: float, max_den: int = 10**4) -> Fraction | None:
    """Certify ``approx`` as an exact rational minimum eigenvalue of ``a``.

    Succeeds when a nearby rational ``c`` makes ``a - c I`` positive
    semidefinite and singular.
    """
    c = Fraction(approx).limit_denominator(max_den)
    if abs(float(c) - approx) > 1e-7:
        return None
    psd, singular = _ldl_psd(a - c * identity(a.shape[0]))
    return c if psd and singular else None


def format_fraction(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def matrix_to_csv(a: np.ndarray) -> str:
    """CSV with exact ``p/q`` cells, one row per line."""
    return "\n".join(",".join(format_fraction(v) for v in row) for row in a) + "\n"
