"""Cosine similarity between the citation profiles of environment journals."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .environment import Direction, Environment

__all__ = ["SimilarityMatrix", "profile_vectors", "cosine", "suppress", "similarity_matrix"]

DEFAULT_CUTOFF = 0.2


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Symmetric cosine values with a zero diagonal and sub-cutoff entries zeroed."""

    journals: tuple[str, ...]
    values: np.ndarray
    cutoff: float = DEFAULT_CUTOFF

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] != len(self.journals):
            raise ValueError(
                f"similarity values of shape {values.shape} do not match {len(self.journals)} journals"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "journals", tuple(self.journals))

    def __len__(self):
        return len(self.journals)

    def edges(self):
        """Yield ``(i, j, value)`` for every nonzero upper-triangle entry."""
        n = len(self.journals)
        for i in range(n):
            for j in range(i + 1, n):
                if self.values[i, j] > 0:
                    yield i, j, float(self.values[i, j])


def profile_vectors(env: Environment, direction=None) -> list[np.ndarray]:
    """Citation profile of each journal, diagonal included.

    Being-cited profiles are the matrix columns, citing profiles the rows.
    ``direction`` defaults to the environment's own.
    """
    direction = env.direction if direction is None else Direction.coerce(direction)
    m = env.matrix if direction is Direction.CITING else env.matrix.T
    return [np.array(row, dtype=np.int64) for row in m]


def cosine(u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError(f"vectors must be 1-d and of equal length, got shapes {u.shape} and {v.shape}")
    nu = math.sqrt(float(u @ u))
    nv = math.sqrt(float(v @ v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return min(1.0, float(u @ v) / (nu * nv))


def suppress(values, cutoff):
    """Zero every entry below ``cutoff`` and the diagonal."""
    values = np.array(values, dtype=float)
    values[values < cutoff] = 0.0
    np.fill_diagonal(values, 0.0)
    return values


def similarity_matrix(env: Environment, direction=None, cutoff=DEFAULT_CUTOFF) -> SimilarityMatrix:
    cutoff = float(cutoff)
    if not 0 <= cutoff < 1:
        raise ValueError(f"cutoff must lie in [0, 1), got {cutoff}")
    vectors = profile_vectors(env, direction)
    n = len(vectors)
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            values[i, j] = values[j, i] = cosine(vectors[i], vectors[j])
    return SimilarityMatrix(env.journals, suppress(values, cutoff), cutoff)
