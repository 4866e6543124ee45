"""Local impact: each journal's share of the environment grandsum, with and without self-citations."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .environment import Direction, Environment
from .errors import DegenerateEnvironmentError

__all__ = ["LocalImpact", "local_impact", "impact_report", "write_impact_report"]


@dataclass(frozen=True)
class LocalImpact:
    journal: str
    raw_total: int
    raw_self: int
    pct_with_self: float
    pct_without_self: float

    @property
    def y_fact(self) -> float:
        return self.pct_with_self

    @property
    def x_fact(self) -> float:
        return self.pct_without_self


def local_impact(env: Environment, k: int, direction=None) -> LocalImpact:
    """Impact of ``env.journals[k]``.

    The total is the journal's column sum for the cited direction and its
    row sum for citing; the self-citation count is the diagonal cell.
    """
    direction = env.direction if direction is None else Direction.coerce(direction)
    grandsum = env.grandsum
    if grandsum <= 0:
        raise DegenerateEnvironmentError(f"environment of {env.seed!r} has no citations")
    if direction is Direction.CITED:
        total = int(env.matrix[:, k].sum())
    else:
        total = int(env.matrix[k, :].sum())
    own = int(env.matrix[k, k])
    return LocalImpact(
        env.journals[k],
        total,
        own,
        100.0 * total / grandsum,
        100.0 * (total - own) / grandsum,
    )


def impact_report(env: Environment, direction=None) -> list[LocalImpact]:
    return [local_impact(env, k, direction) for k in range(len(env.journals))]


def write_impact_report(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["journal", "raw_total", "raw_self", "pct_with_self", "pct_without_self"])
    for row in report:
        w.writerow([row.journal, row.raw_total, row.raw_self, f"{row.pct_with_self:.6f}",
                    f"{row.pct_without_self:.6f}"])
    return buf.getvalue()
