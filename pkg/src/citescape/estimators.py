"""scikit-learn style estimators over the functional core.

:class:`CitationEnvironmentMap` fits a citation graph to the map of one
seed journal; :class:`CosineSimilarity` is a stateless transformer for
plain count matrices; :class:`VarimaxPCA` is principal-component factor
analysis with varimax rotation.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import (
    check_count_matrix,
    check_cutoff,
    check_direction,
    check_size_overrides,
    check_threshold_pct,
)
from .environment import Direction, apply_exclusions, environment_of
from .graph_metrics import SimilarityGraph
from .impact import impact_report
from .ingest import CitationGraph, SourceIndex
from .pajek import Shape, build_document, write_map
from .similarity import cosine, similarity_matrix, suppress
from .statistics import pearson_correlation_matrix, principal_components, varimax

__all__ = ["CitationEnvironmentMap", "CosineSimilarity", "VarimaxPCA"]


class CitationEnvironmentMap(BaseEstimator):
    """Citation-environment map of one seed journal.

    Parameters
    ----------
    seed : str
        Canonical name of the seed journal.
    direction : {"cited", "citing"}
    threshold_pct : float
        Minimum share (percent, strict) of the seed's global total a
        journal must contribute to enter the environment.
    cosine_min : float
        Cosines below this value are suppressed.
    exclude : iterable of str
        Journals removed from the environment after selection.
    size_overrides : dict
        ``journal -> (x_fact, y_fact)`` replacing the computed factors.
    diamond_sci : bool
        Draw journals whose source index is SCI as diamonds.

    Attributes
    ----------
    environment_, similarity_, impact_, document_, graph_
    """

    def __init__(self, seed=None, direction="cited", threshold_pct=1.0, cosine_min=0.2, exclude=(),
                 size_overrides=None, diamond_sci=True):
        self.seed = seed
        self.direction = direction
        self.threshold_pct = threshold_pct
        self.cosine_min = cosine_min
        self.exclude = exclude
        self.size_overrides = size_overrides
        self.diamond_sci = diamond_sci

    def fit(self, X: CitationGraph, y=None):
        if not isinstance(X, CitationGraph):
            raise TypeError(f"expected a CitationGraph, got {type(X).__name__}")
        if self.seed is None:
            raise ValueError("seed journal is not set")
        direction = check_direction(self.direction)
        env = environment_of(X, self.seed, direction, check_threshold_pct(self.threshold_pct))
        env = apply_exclusions(env, self.exclude or ())
        sim = similarity_matrix(env, direction, check_cutoff(self.cosine_min))
        report = impact_report(env, direction)
        shapes = {}
        if self.diamond_sci:
            shapes = {j: Shape.DIAMOND for j in env.journals if X.meta[j].source_index is SourceIndex.SCI}
        self.environment_ = env
        self.similarity_ = sim
        self.impact_ = report
        self.document_ = build_document(env, sim, report, shapes, check_size_overrides(self.size_overrides))
        self.graph_ = SimilarityGraph.from_similarity(sim)
        return self

    def transform(self, X=None):
        """Suppressed similarity values of the fitted environment."""
        check_is_fitted(self, "document_")
        return np.array(self.similarity_.values)

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform()

    def to_pajek(self) -> str:
        check_is_fitted(self, "document_")
        return write_map(self.document_)


class CosineSimilarity(TransformerMixin, BaseEstimator):
    """Pairwise cosine between the columns (or rows) of a count matrix.

    Columns are being-cited profiles when rows are citing journals, which
    is the ``"cited"`` direction; ``direction="citing"`` compares rows.
    """

    def __init__(self, cutoff=0.2, direction="cited"):
        self.cutoff = cutoff
        self.direction = direction

    def fit(self, X, y=None):
        X = check_count_matrix(X)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_count_matrix(X)
        vectors = X.T if check_direction(self.direction) is Direction.CITED else X
        n = len(vectors)
        out = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                out[i, j] = out[j, i] = cosine(vectors[i], vectors[j])
        return suppress(out, check_cutoff(self.cutoff))


class VarimaxPCA(TransformerMixin, BaseEstimator):
    """Principal-component extraction from the correlation matrix, then varimax.

    ``X`` has one row per observation and one column per variable; for a
    citation environment in the cited direction that is the environment
    matrix itself (columns are the journals' being-cited profiles).

    Attributes
    ----------
    correlation_ : ndarray (n_features, n_features)
    eigenvalues_ : ndarray (n_features,), descending
    loadings_ : ndarray (n_features, n_components_)
    components_ : ndarray (n_components_, n_features), ``loadings_.T``
    rotation_ : ndarray or None
    n_iter_, converged_, result_
    """

    def __init__(self, n_components="kaiser", rotation="varimax", kaiser_normalize=True, tol=1e-6, max_iter=100):
        self.n_components = n_components
        self.rotation = rotation
        self.kaiser_normalize = kaiser_normalize
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y=None, variable_names=None):
        X = check_array(X, dtype=float, ensure_min_samples=2, ensure_min_features=2)
        names = list(variable_names) if variable_names is not None else list(range(X.shape[1]))
        if len(names) != X.shape[1]:
            raise ValueError(f"{len(names)} variable names for {X.shape[1]} columns")
        self.correlation_ = pearson_correlation_matrix(X.T, names)
        result = principal_components(self.correlation_, self.n_components, names)
        if self.rotation == "varimax":
            result = varimax(result, self.kaiser_normalize, self.tol, self.max_iter)
        elif self.rotation is not None:
            raise ValueError(f"unknown rotation {self.rotation!r}")
        self.result_ = result
        self.mean_ = X.mean(axis=0)
        self.scale_ = X.std(axis=0, ddof=1)
        self.eigenvalues_ = result.eigenvalues
        self.loadings_ = result.loadings
        self.components_ = result.loadings.T
        self.rotation_ = result.rotation
        self.n_components_ = result.n_components
        self.n_iter_ = result.iterations_used
        self.converged_ = result.converged
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        """Regression-method component scores."""
        check_is_fitted(self, "loadings_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        z = (X - self.mean_) / self.scale_
        return z @ np.linalg.pinv(self.correlation_) @ self.loadings_
