"""Factor analysis of citation profiles and rank correlation.

Principal components are extracted from a correlation matrix with a cyclic
Jacobi eigensolver, optionally rotated by varimax with Kaiser
normalization (the SPSS default), and reported as a :class:`LoadingsMatrix`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateVariableError

__all__ = [
    "LoadingsMatrix",
    "pearson_correlation_matrix",
    "jacobi_eigh",
    "principal_components",
    "varimax",
    "varimax_criterion",
    "rankdata",
    "spearman_rho",
]


@dataclass(frozen=True, eq=False)
class LoadingsMatrix:
    """Variables x components loadings.

    ``eigenvalues`` holds the full spectrum in descending order while
    ``loadings`` only has the retained components. After rotation,
    ``rotation`` is the orthogonal matrix with ``loadings = unrotated @ rotation``
    (before column reordering and sign fixing, which are folded in as well).
    """

    variables: tuple
    loadings: np.ndarray
    eigenvalues: np.ndarray
    rotated: bool = False
    iterations_used: int = 0
    converged: bool = True
    rotation: np.ndarray | None = None
    criterion_history: tuple[float, ...] = field(default=())

    @property
    def n_components(self) -> int:
        return self.loadings.shape[1]

    @property
    def communalities(self) -> np.ndarray:
        return (self.loadings ** 2).sum(axis=1)


def pearson_correlation_matrix(vectors, names=None) -> np.ndarray:
    """Correlation between each pair of equal-length vectors (one variable per vector)."""
    x = np.asarray(vectors, dtype=float)
    if x.ndim != 2 or x.shape[0] < 2:
        raise ValueError("need at least two equal-length vectors")
    names = list(names) if names is not None else list(range(x.shape[0]))
    centered = x - x.mean(axis=1, keepdims=True)
    norms = np.sqrt((centered ** 2).sum(axis=1))
    for name, norm in zip(names, norms):
        if norm == 0.0:
            raise DegenerateVariableError(f"variable {name!r} has zero variance", variable=name)
    z = centered / norms[:, None]
    corr = z @ z.T
    corr = (corr + corr.T) / 2
    np.fill_diagonal(corr, 1.0)
    return np.clip(corr, -1.0, 1.0)


def _off_norm(a):
    off = a - np.diag(np.diag(a))
    return math.sqrt(float((off ** 2).sum()))


def jacobi_eigh(a, tol=1e-12, max_sweeps=100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps continue until the Frobenius norm of the off-diagonal part drops
    below ``tol``. Returns ``(eigenvalues, eigenvectors)`` sorted by
    descending eigenvalue, eigenvectors in columns.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if not np.allclose(a, a.T, atol=1e-12, rtol=0):
        raise ValueError("matrix is not symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    for _ in range(max_sweeps):
        if _off_norm(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
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
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def principal_components(corr, retain="kaiser", variables=None) -> LoadingsMatrix:
    """Unrotated component loadings of a correlation matrix.

    ``retain`` is ``"kaiser"`` (eigenvalue > 1) or a fixed component count.
    Loadings are eigenvectors scaled by the square root of their eigenvalue,
    each column signed so its column sum is nonnegative.
    """
    corr = np.asarray(corr, dtype=float)
    if corr.ndim != 2 or corr.shape[0] != corr.shape[1]:
        raise ValueError(f"correlation matrix must be square, got shape {corr.shape}")
    if not np.allclose(np.diag(corr), 1.0, atol=1e-9):
        raise ValueError("correlation matrix must have a unit diagonal")
    eigenvalues, vectors = jacobi_eigh(corr)
    if retain == "kaiser":
        k = int((eigenvalues > 1.0).sum())
    else:
        k = int(retain)
        if not 0 <= k <= len(eigenvalues):
            raise ValueError(f"cannot retain {k} of {len(eigenvalues)} components")
    vecs = vectors[:, :k]
    signs = np.where(vecs.sum(axis=0) < 0, -1.0, 1.0)
    loadings = vecs * signs * np.sqrt(np.clip(eigenvalues[:k], 0.0, None))
    variables = tuple(variables) if variables is not None else tuple(range(corr.shape[0]))
    return LoadingsMatrix(variables, loadings, eigenvalues)


def varimax_criterion(loadings) -> float:
    """Sum over components of the variance of squared loadings."""
    sq = np.asarray(loadings, dtype=float) ** 2
    p = sq.shape[0]
    return float(((sq ** 2).sum(axis=0) / p - (sq.sum(axis=0) / p) ** 2).sum())


def varimax(lm: LoadingsMatrix, kaiser_normalize=True, tol=1e-6, max_iter=100) -> LoadingsMatrix:
    """Orthogonal varimax rotation by sweeps of pairwise planar rotations.

    Sweeping stops when the relative gain of the criterion falls below
    ``tol``. Components are then ordered by descending sum of squared
    loadings and signed so each column's largest-magnitude loading is
    positive.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.array(lm.loadings, dtype=float)
    p, k = a.shape
    h = np.sqrt((a ** 2).sum(axis=1))
    if kaiser_normalize:
        scale = np.where(h > 0, h, 1.0)
        a = a / scale[:, None]
    rot = np.eye(k)
    history = [varimax_criterion(a)]
    converged = k < 2
    sweeps = 0
    while not converged and sweeps < max_iter:
        sweeps += 1
        for i in range(k - 1):
            for j in range(i + 1, k):
                x, y = a[:, i], a[:, j]
                u = x * x - y * y
                v = 2.0 * x * y
                num = 2.0 * (p * float(u @ v) - u.sum() * v.sum())
                den = p * float(u @ u - v @ v) - (u.sum() ** 2 - v.sum() ** 2)
                phi = math.atan2(num, den) / 4.0
                c, s = math.cos(phi), math.sin(phi)
                planar = np.array([[c, -s], [s, c]])
                a[:, [i, j]] = a[:, [i, j]] @ planar
                rot[:, [i, j]] = rot[:, [i, j]] @ planar
        history.append(varimax_criterion(a))
        gain = history[-1] - history[-2]
        converged = gain <= tol * max(abs(history[-2]), 1e-300)
    if kaiser_normalize:
        a = a * scale[:, None]
    if k:
        order = np.argsort(-(a ** 2).sum(axis=0), kind="stable")
        a = a[:, order]
        rot = rot[:, order]
        peak = a[np.argmax(np.abs(a), axis=0), np.arange(k)]
        signs = np.where(peak < 0, -1.0, 1.0)
        a = a * signs
        rot = rot * signs
    return LoadingsMatrix(
        lm.variables,
        a,
        lm.eigenvalues,
        rotated=True,
        iterations_used=sweeps,
        converged=converged,
        rotation=rot,
        criterion_history=tuple(history),
    )


def rankdata(values) -> np.ndarray:
    """1-based ranks with ties sharing their average rank."""
    x = np.asarray(values, dtype=float)
    order = np.argsort(x, kind="stable")
    ranks = np.empty(len(x))
    i = 0
    while i < len(x):
        j = i
        while j + 1 < len(x) and x[order[j + 1]] == x[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman_rho(x, y) -> float:
    """Spearman rank correlation: Pearson correlation of average ranks."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError(f"inputs must be 1-d and of equal length, got {x.shape} and {y.shape}")
    if len(x) < 2:
        raise ValueError("need at least two observations")
    rx = rankdata(x) - (len(x) + 1) / 2.0
    ry = rankdata(y) - (len(y) + 1) / 2.0
    denom = math.sqrt(float(rx @ rx) * float(ry @ ry))
    if denom == 0.0:
        return float("nan")
    return max(-1.0, min(1.0, float(rx @ ry) / denom))
