"""Citation environments: the journals around a seed and their dense citation matrix."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from ._labels import make_label
from .errors import JournalNotFoundError, TotalsFallbackWarning
from .ingest import CitationGraph

__all__ = [
    "Direction",
    "Environment",
    "select_environment",
    "build_environment_matrix",
    "environment_of",
    "apply_exclusions",
]


class Direction(enum.Enum):
    CITED = "cited"
    CITING = "citing"

    @classmethod
    def coerce(cls, value) -> "Direction":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"direction must be 'cited' or 'citing', got {value!r}") from None


def _check_threshold(threshold_pct):
    threshold_pct = float(threshold_pct)
    if not 0 < threshold_pct <= 100:
        raise ValueError(f"threshold_pct must lie in (0, 100], got {threshold_pct}")
    return threshold_pct


@dataclass(frozen=True, eq=False)
class Environment:
    """Dense sub-matrix among the journals of one citation environment.

    ``matrix[i, j]`` counts citations from ``journals[i]`` to ``journals[j]``.
    Journals are ordered by Pajek label so that the matrix rows line up with
    the vertices of the exported map.
    """

    seed: str
    direction: Direction
    threshold_pct: float
    journals: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.int64)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "journals", tuple(self.journals))

    @property
    def grandsum(self) -> int:
        return int(self.matrix.sum())

    @property
    def seed_index(self) -> int:
        return self.journals.index(self.seed)

    def __len__(self):
        return len(self.journals)

    def __eq__(self, other):
        if not isinstance(other, Environment):
            return NotImplemented
        return (
            self.seed == other.seed
            and self.direction is other.direction
            and self.threshold_pct == other.threshold_pct
            and self.journals == other.journals
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None


def _denominator(graph, seed, direction):
    meta = graph.get_meta(seed)
    total = meta.total_cited if direction is Direction.CITED else meta.total_citing
    if not total:
        total = graph.in_sum(seed) if direction is Direction.CITED else graph.out_sum(seed)
        warnings.warn(
            f"no {direction.value} total for {seed!r}; using the in-graph sum {total}",
            TotalsFallbackWarning,
            stacklevel=3,
        )
    return total


def select_environment(graph: CitationGraph, seed: str, direction=Direction.CITED, threshold_pct=1.0) -> set[str]:
    """Journals linked to ``seed`` by more than ``threshold_pct`` percent of its total.

    For the cited direction the candidates are the journals citing the
    seed and the base is the seed's global ``total_cited``; for citing, the
    journals the seed cites, against ``total_citing``. The comparison is
    strict and the seed is always a member.
    """
    direction = Direction.coerce(direction)
    threshold_pct = _check_threshold(threshold_pct)
    if seed not in graph:
        raise JournalNotFoundError(f"seed journal {seed!r} is not in the graph")
    cutoff = threshold_pct / 100.0 * _denominator(graph, seed, direction)
    selected = {seed}
    for (a, b), w in graph.edges.items():
        if direction is Direction.CITED and b == seed and w > cutoff:
            selected.add(a)
        elif direction is Direction.CITING and a == seed and w > cutoff:
            selected.add(b)
    return selected


def _ordered(journals):
    return sorted(journals, key=lambda j: (make_label(j).encode("ascii"), j))


def build_environment_matrix(graph: CitationGraph, journals, seed, direction=Direction.CITED,
                             threshold_pct=1.0) -> Environment:
    direction = Direction.coerce(direction)
    journals = set(journals)
    missing = sorted(j for j in journals | {seed} if j not in graph)
    if missing:
        raise JournalNotFoundError(f"journals not in graph: {missing}")
    if seed not in journals:
        raise ValueError(f"seed {seed!r} must belong to its environment")
    order = _ordered(journals)
    pos = {j: i for i, j in enumerate(order)}
    matrix = np.zeros((len(order), len(order)), dtype=np.int64)
    for (a, b), w in graph.edges.items():
        if a in pos and b in pos:
            matrix[pos[a], pos[b]] = w
    return Environment(seed, direction, _check_threshold(threshold_pct), tuple(order), matrix)


def environment_of(graph: CitationGraph, seed: str, direction=Direction.CITED, threshold_pct=1.0) -> Environment:
    """Select and materialize the environment of ``seed`` in one call."""
    journals = select_environment(graph, seed, direction, threshold_pct)
    return build_environment_matrix(graph, journals, seed, direction, threshold_pct)


def apply_exclusions(env: Environment, excluded) -> Environment:
    excluded = set(excluded)
    if env.seed in excluded:
        raise ValueError(f"cannot exclude the seed journal {env.seed!r}")
    keep = [i for i, j in enumerate(env.journals) if j not in excluded]
    return Environment(
        env.seed,
        env.direction,
        env.threshold_pct,
        tuple(env.journals[i] for i in keep),
        env.matrix[np.ix_(keep, keep)],
    )
