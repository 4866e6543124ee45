"""Reading citation edge lists and journal metadata into a :class:`CitationGraph`.

Edge lists are ``citing,cited,count`` records; metadata files are
``journal,total_cited,total_citing,impact_factor,source_index`` records.
Both accept an optional header line, surrounding whitespace and quoted
fields.
"""

from __future__ import annotations

import csv
import enum
import io
import warnings
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    DuplicateEntryError,
    InvalidValueError,
    JournalNotFoundError,
    MergeConflictWarning,
    ParseError,
)

__all__ = [
    "SourceIndex",
    "JournalMeta",
    "CitationGraph",
    "journal_id",
    "parse_edge_list",
    "parse_metadata",
    "merge_graphs",
    "write_edge_list",
    "write_metadata",
    "read_graph",
]


def journal_id(name: str) -> str:
    """Canonical journal identifier: the name with surrounding whitespace trimmed."""
    if not isinstance(name, str):
        raise TypeError(f"journal name must be str, got {type(name).__name__}")
    name = name.strip()
    if not name:
        raise ValueError("journal name is empty")
    return name


class SourceIndex(enum.Enum):
    SSCI = "SSCI"
    SCI = "SCI"
    OTHER = "OTHER"


@dataclass(frozen=True)
class JournalMeta:
    journal: str
    total_cited: int = 0
    total_citing: int = 0
    impact_factor: float | None = None
    source_index: SourceIndex = SourceIndex.SSCI

    def __post_init__(self):
        object.__setattr__(self, "journal", journal_id(self.journal))
        if self.total_cited < 0 or self.total_citing < 0:
            raise InvalidValueError(f"negative totals for {self.journal!r}")
        if self.impact_factor is not None and self.impact_factor < 0:
            raise InvalidValueError(f"negative impact factor for {self.journal!r}")


@dataclass(frozen=True)
class CitationGraph:
    """Directed weighted journal-to-journal citation counts.

    ``edges[(a, b)]`` is the number of citations from journal ``a`` to
    journal ``b``; ``(a, a)`` holds within-journal citations. Every edge
    endpoint has a ``meta`` entry (zero totals when none was supplied).
    """

    edges: Mapping[tuple[str, str], int] = field(default_factory=dict)
    meta: Mapping[str, JournalMeta] = field(default_factory=dict)

    def __post_init__(self):
        edges = {}
        for (a, b), w in self.edges.items():
            if not isinstance(w, int) or isinstance(w, bool) or w <= 0:
                raise InvalidValueError(f"edge {a!r} -> {b!r} must have a positive integer count, got {w!r}")
            edges[journal_id(a), journal_id(b)] = w
        meta = dict(self.meta)
        for a, b in edges:
            for j in (a, b):
                if j not in meta:
                    meta[j] = JournalMeta(j)
        object.__setattr__(self, "edges", MappingProxyType(edges))
        object.__setattr__(self, "meta", MappingProxyType(meta))

    def __eq__(self, other):
        if not isinstance(other, CitationGraph):
            return NotImplemented
        return dict(self.edges) == dict(other.edges) and dict(self.meta) == dict(other.meta)

    __hash__ = None

    @property
    def journals(self) -> list[str]:
        return sorted(self.meta)

    def __contains__(self, journal) -> bool:
        return journal in self.meta

    def __len__(self) -> int:
        return len(self.meta)

    def weight(self, citing: str, cited: str) -> int:
        return self.edges.get((citing, cited), 0)

    def in_sum(self, journal: str) -> int:
        return sum(w for (_, b), w in self.edges.items() if b == journal)

    def out_sum(self, journal: str) -> int:
        return sum(w for (a, _), w in self.edges.items() if a == journal)

    def get_meta(self, journal: str) -> JournalMeta:
        try:
            return self.meta[journal]
        except KeyError:
            raise JournalNotFoundError(f"journal {journal!r} is not in the graph") from None

    def with_meta(self, meta: Mapping[str, JournalMeta]) -> "CitationGraph":
        """Return a copy whose metadata entries are replaced by ``meta``."""
        merged = dict(self.meta)
        merged.update(meta)
        return CitationGraph(dict(self.edges), merged)


def _records(stream):
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream, skipinitialspace=True)
    for row in reader:
        fields = [f.strip() for f in row]
        if not fields or all(f == "" for f in fields):
            continue
        yield reader.line_num, fields


def _is_int(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def _parse_count(text, lineno, what):
    try:
        value = int(text)
    except ValueError:
        raise InvalidValueError(f"{what} must be an integer, got {text!r}", lineno) from None
    if value < 0:
        raise InvalidValueError(f"{what} must be nonnegative, got {value}", lineno)
    return value


def parse_edge_list(stream) -> CitationGraph:
    """Parse ``citing,cited,count`` records from a text stream or string.

    Zero counts are accepted and dropped. The first record is treated as a
    header when its third field is not numeric.
    """
    edges: dict[tuple[str, str], int] = {}
    for i, (lineno, fields) in enumerate(_records(stream)):
        if i == 0 and len(fields) == 3 and not _is_number(fields[2]):
            continue
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields (citing, cited, count), got {len(fields)}", lineno)
        citing, cited, raw = fields
        if not citing or not cited:
            raise ParseError("empty journal name", lineno)
        count = _parse_count(raw, lineno, "count")
        key = (citing, cited)
        if key in edges:
            raise DuplicateEntryError(f"duplicate edge {citing!r} -> {cited!r}", lineno)
        edges[key] = count
    return CitationGraph({k: w for k, w in edges.items() if w > 0})


def parse_metadata(stream) -> dict[str, JournalMeta]:
    """Parse journal metadata records.

    The impact factor and source index columns may be omitted or left
    empty; the source index defaults to SSCI.
    """
    out: dict[str, JournalMeta] = {}
    for i, (lineno, fields) in enumerate(_records(stream)):
        if i == 0 and len(fields) >= 2 and not _is_int(fields[1]):
            continue
        if not 3 <= len(fields) <= 5:
            raise ParseError(
                f"expected 3-5 fields (journal, total_cited, total_citing[, impact_factor[, source_index]]), "
                f"got {len(fields)}",
                lineno,
            )
        fields = fields + [""] * (5 - len(fields))
        name, cited, citing, impact, index = fields
        if not name:
            raise ParseError("empty journal name", lineno)
        if name in out:
            raise DuplicateEntryError(f"duplicate journal {name!r}", lineno)
        impact_factor = None
        if impact:
            try:
                impact_factor = float(impact)
            except ValueError:
                raise InvalidValueError(f"impact factor must be a number, got {impact!r}", lineno) from None
            if impact_factor < 0:
                raise InvalidValueError(f"impact factor must be nonnegative, got {impact}", lineno)
        source_index = SourceIndex.SSCI
        if index:
            try:
                source_index = SourceIndex(index.upper())
            except ValueError:
                raise ParseError(f"unknown source index {index!r}", lineno) from None
        out[name] = JournalMeta(
            name,
            _parse_count(cited, lineno, "total_cited"),
            _parse_count(citing, lineno, "total_citing"),
            impact_factor,
            source_index,
        )
    return out


def _pick(a, b, what, unknown=(None,)):
    if a == b:
        return a
    if a in unknown or b in unknown:
        return b if a in unknown else a
    warnings.warn(f"conflicting {what}: {a!r} vs {b!r}; keeping the maximum", MergeConflictWarning, stacklevel=3)
    return max(a, b)


def merge_graphs(a: CitationGraph, b: CitationGraph) -> CitationGraph:
    """Union of two graphs, e.g. one built from the SSCI and one from the SCI.

    Shared edges are kept once; diverging counts keep the maximum and emit
    a :class:`MergeConflictWarning`. Metadata merges field-wise the same
    way, except that the source index always comes from ``a``. A zero
    total counts as unknown (the auto-created entry of an edge endpoint)
    and yields to a nonzero one without a warning.
    """
    edges = dict(a.edges)
    for key, w in b.edges.items():
        edges[key] = _pick(edges[key], w, f"count for edge {key[0]!r} -> {key[1]!r}") if key in edges else w
    meta = dict(a.meta)
    for name, mb in b.meta.items():
        ma = meta.get(name)
        if ma is None:
            meta[name] = mb
            continue
        meta[name] = replace(
            ma,
            total_cited=_pick(ma.total_cited, mb.total_cited, f"total_cited of {name!r}", (0,)),
            total_citing=_pick(ma.total_citing, mb.total_citing, f"total_citing of {name!r}", (0,)),
            impact_factor=_pick(ma.impact_factor, mb.impact_factor, f"impact factor of {name!r}"),
        )
    return CitationGraph(edges, meta)


def _writer(buf):
    return csv.writer(buf, lineterminator="\n")


def write_edge_list(graph: CitationGraph) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["citing", "cited", "count"])
    for (a, b), count in sorted(graph.edges.items()):
        w.writerow([a, b, count])
    return buf.getvalue()


def write_metadata(meta: Mapping[str, JournalMeta] | Iterable[JournalMeta]) -> str:
    records = meta.values() if isinstance(meta, Mapping) else meta
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["journal", "total_cited", "total_citing", "impact_factor", "source_index"])
    for m in sorted(records, key=lambda m: m.journal):
        impact = "" if m.impact_factor is None else repr(m.impact_factor)
        w.writerow([m.journal, m.total_cited, m.total_citing, impact, m.source_index.value])
    return buf.getvalue()


def read_graph(edge_paths, meta_paths=()) -> CitationGraph:
    """Load and merge any number of edge-list and metadata files.

    Metadata files are applied in order; journals named only in metadata
    become isolated nodes.
    """
    graph = CitationGraph()
    for path in edge_paths:
        with open(path, encoding="utf-8", newline="") as fh:
            graph = merge_graphs(graph, parse_edge_list(fh))
    meta = CitationGraph()
    for path in meta_paths:
        with open(path, encoding="utf-8", newline="") as fh:
            meta = merge_graphs(meta, CitationGraph({}, parse_metadata(fh)))
    return graph.with_meta(meta.meta)
