"""Reference data shipped as ingestable test fixtures.

See ``PROVENANCE.md`` in this directory for where every number comes from
and which ones are derived rather than taken from the source data.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from importlib import resources

from ..errors import FixtureNotFoundError
from ..ingest import CitationGraph, parse_edge_list, parse_metadata

__all__ = ["Fixture", "FIXTURES", "load_fixture", "fixture_path", "read_text"]

FIXTURES = {
    "table1_env": {"edges": "table1_edges.csv", "meta": "table1_meta.csv"},
    "table2_golden": {"expected": "table2.net"},
    "table3_loadings": {"expected": "table3_loadings.csv"},
    "table4_meta": {"meta": "table4_meta.csv"},
    "citing_env": {"edges": "citing_edges.csv", "meta": "table1_meta.csv"},
}


@dataclass(frozen=True)
class Fixture:
    name: str
    files: dict
    provenance: str
    graph: CitationGraph | None = None
    meta: dict = field(default_factory=dict)
    expected: object = None


def fixture_path(filename: str):
    return resources.files(__name__).joinpath(filename)


def read_text(filename: str) -> str:
    return fixture_path(filename).read_text(encoding="utf-8")


def _loadings(text):
    rows = list(csv.reader(text.splitlines()))
    out = {}
    for row in rows[1:]:
        out[row[0]] = [float(x) if x else None for x in row[1:]]
    return out


def load_fixture(name: str) -> Fixture:
    """Parse the named fixture.

    ``graph`` carries edges and metadata when the fixture has them;
    ``expected`` is the golden Pajek text for ``table2_golden`` and a
    ``{variable: [loading or None, ...]}`` dict for ``table3_loadings``.
    """
    try:
        files = FIXTURES[name]
    except KeyError:
        raise FixtureNotFoundError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}") from None
    provenance = read_text("PROVENANCE.md")
    meta = parse_metadata(read_text(files["meta"])) if "meta" in files else {}
    graph = None
    if "edges" in files:
        graph = parse_edge_list(read_text(files["edges"])).with_meta(meta)
    elif meta:
        graph = CitationGraph({}, meta)
    expected = None
    if "expected" in files:
        text = read_text(files["expected"])
        expected = _loadings(text) if files["expected"].endswith(".csv") else text
    return Fixture(name, dict(files), provenance, graph, meta, expected)
