"""Argument checks shared by the estimators and the CLI."""

import numpy as np
from sklearn.utils.validation import check_array

from .environment import Direction
from .environment import _check_threshold as check_threshold_pct


def check_direction(direction) -> Direction:
    return Direction.coerce(direction)


def check_cutoff(value) -> float:
    value = float(value)
    if not 0 <= value < 1:
        raise ValueError(f"cosine cutoff must lie in [0, 1), got {value}")
    return value


def check_count_matrix(X, square=False):
    """2-d array of nonnegative integer counts (float input must be integral)."""
    X = check_array(X, dtype=None, ensure_min_samples=1, ensure_min_features=1)
    if not np.issubdtype(X.dtype, np.number):
        raise ValueError(f"count matrix must be numeric, got dtype {X.dtype}")
    if np.any(X < 0):
        raise ValueError("count matrix has negative entries")
    if not np.issubdtype(X.dtype, np.integer):
        if np.any(X != np.round(X)):
            raise ValueError("count matrix has non-integer entries")
        X = X.astype(np.int64)
    if square and X.shape[0] != X.shape[1]:
        raise ValueError(f"count matrix must be square, got shape {X.shape}")
    return X


def check_size_overrides(overrides) -> dict:
    out = {}
    for journal, pair in (overrides or {}).items():
        x, y = (float(v) for v in pair)
        if x < 0 or y < 0:
            raise ValueError(f"size override for {journal!r} must be nonnegative")
        out[journal] = (x, y)
    return out
