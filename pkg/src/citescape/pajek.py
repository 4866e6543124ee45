"""Pajek ``.net`` map files in the ``*Vertices`` / ``*Matrix`` dialect.

A written map looks like::

    *Vertices 2
    1 "Cities" 0.0 0.0 0.0 x_fact 3.313609 y_fact 5.562130
    2 "UrbanStud" 0.0 0.0 0.0 x_fact 13.668639 y_fact 28.461538 diamond
    *Matrix
    0.000000 0.645169
    0.645169 0.000000

``x_fact`` and ``y_fact`` scale the node horizontally and vertically. The
shape token is only written for non-default shapes.
"""

from __future__ import annotations

import enum
import shlex
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from ._labels import make_label
from .errors import LabelError, ParseError
from .similarity import SimilarityMatrix

__all__ = [
    "Shape",
    "Vertex",
    "MapDocument",
    "make_label",
    "format_fixed",
    "build_document",
    "write_map",
    "read_map",
]

_SIX = Decimal("0.000001")


class Shape(enum.Enum):
    ELLIPSE = "ellipse"
    DIAMOND = "diamond"


@dataclass(frozen=True)
class Vertex:
    index: int
    label: str
    x_fact: float
    y_fact: float
    shape: Shape = Shape.ELLIPSE

    def __post_init__(self):
        if not self.label or not (self.label.isascii() and self.label.isalnum()):
            raise LabelError(f"vertex label {self.label!r} must be non-empty ASCII letters and digits")


@dataclass(frozen=True, eq=False)
class MapDocument:
    vertices: tuple[Vertex, ...]
    matrix: SimilarityMatrix

    def __post_init__(self):
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if len(vertices) != len(self.matrix):
            raise ValueError(f"{len(vertices)} vertices but a {len(self.matrix)}x{len(self.matrix)} matrix")
        for i, v in enumerate(vertices, start=1):
            if v.index != i:
                raise ValueError(f"vertex indices must run 1..N in order; position {i} has index {v.index}")
        labels = [v.label.encode("ascii") for v in vertices]
        if len(set(labels)) != len(labels):
            raise LabelError("duplicate vertex labels")
        if labels != sorted(labels):
            raise ValueError("vertices must be ordered by label")

    @property
    def labels(self) -> list[str]:
        return [v.label for v in self.vertices]

    def __eq__(self, other):
        if not isinstance(other, MapDocument):
            return NotImplemented
        return self.vertices == other.vertices and np.array_equal(self.matrix.values, other.matrix.values)

    __hash__ = None


def format_fixed(value: float) -> str:
    """Six-decimal fixed notation, rounding half away from zero."""
    d = Decimal(repr(float(value))).quantize(_SIX, rounding=ROUND_HALF_UP)
    if d == 0:
        d = abs(d)
    return f"{d:f}"


def build_document(env, similarity, report, shapes=None, size_overrides=None) -> MapDocument:
    """Assemble a map from an environment, its similarity matrix and impact report.

    ``shapes`` maps journal name to :class:`Shape`; ``size_overrides`` maps
    journal name to a fixed ``(x_fact, y_fact)`` pair, e.g. to shrink an
    outlier that would otherwise dominate the picture.
    """
    shapes = shapes or {}
    size_overrides = size_overrides or {}
    if tuple(similarity.journals) != tuple(env.journals) or [r.journal for r in report] != list(env.journals):
        raise ValueError("environment, similarity matrix and impact report disagree on journal order")
    seen = {}
    vertices = []
    for i, (journal, row) in enumerate(zip(env.journals, report), start=1):
        label = make_label(journal)
        if label in seen:
            raise LabelError(f"journals {seen[label]!r} and {journal!r} both condense to label {label!r}")
        seen[label] = journal
        x_fact, y_fact = size_overrides.get(journal, (row.x_fact, row.y_fact))
        vertices.append(Vertex(i, label, float(x_fact), float(y_fact), shapes.get(journal, Shape.ELLIPSE)))
    return MapDocument(tuple(vertices), similarity)


def write_map(doc: MapDocument) -> str:
    lines = [f"*Vertices {len(doc.vertices)}"]
    for v in doc.vertices:
        line = f'{v.index} "{v.label}" 0.0 0.0 0.0 x_fact {format_fixed(v.x_fact)} y_fact {format_fixed(v.y_fact)}'
        if v.shape is not Shape.ELLIPSE:
            line += f" {v.shape.value}"
        lines.append(line)
    lines.append("*Matrix")
    for row in doc.matrix.values:
        lines.append(" ".join(format_fixed(x) for x in row))
    return "\n".join(lines) + "\n"


def _float(token, lineno, what):
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"{what} must be numeric, got {token!r}", lineno) from None


def _parse_vertex(line, lineno, expected_index):
    try:
        tokens = shlex.split(line, posix=True)
    except ValueError as exc:
        raise ParseError(f"bad vertex line: {exc}", lineno) from None
    if len(tokens) < 2:
        raise ParseError("vertex line needs an index and a label", lineno)
    try:
        index = int(tokens[0])
    except ValueError:
        raise ParseError(f"vertex index must be an integer, got {tokens[0]!r}", lineno) from None
    if index != expected_index:
        raise ParseError(f"expected vertex {expected_index}, got {index}", lineno)
    label = tokens[1]
    rest = tokens[2:]
    # leading bare numbers are the x, y, z coordinates
    while rest and rest[0] not in ("x_fact", "y_fact") and _is_number(rest[0]):
        rest = rest[1:]
    facts = {"x_fact": 1.0, "y_fact": 1.0}
    shape = Shape.ELLIPSE
    while rest:
        key = rest.pop(0)
        if key in facts:
            if not rest:
                raise ParseError(f"{key} without a value", lineno)
            facts[key] = _float(rest.pop(0), lineno, key)
        else:
            try:
                shape = Shape(key.lower())
            except ValueError:
                raise ParseError(f"unknown vertex token {key!r}", lineno) from None
    try:
        return Vertex(index, label, facts["x_fact"], facts["y_fact"], shape)
    except LabelError as exc:
        raise ParseError(str(exc), lineno) from None


def _is_number(token):
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_map(text: str) -> MapDocument:
    """Parse a map written by :func:`write_map` (or edited by hand)."""
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty map file", 1)
    lineno, head = lines[0]
    parts = head.split()
    if parts[0].lower() != "*vertices" or len(parts) < 2:
        raise ParseError("expected '*Vertices N' header", lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"vertex count must be an integer, got {parts[1]!r}", lineno) from None
    pos = 1
    vertices = []
    while pos < len(lines) and not lines[pos][1].startswith("*"):
        vertices.append(_parse_vertex(lines[pos][1], lines[pos][0], len(vertices) + 1))
        pos += 1
    if len(vertices) != n:
        raise ParseError(f"header announces {n} vertices, found {len(vertices)}", lineno)
    if pos >= len(lines) or lines[pos][1].split()[0].lower() != "*matrix":
        at = lines[pos][0] if pos < len(lines) else lines[-1][0] + 1
        raise ParseError("expected '*Matrix' header", at)
    matrix_line = lines[pos][0]
    rows = []
    for lineno, line in lines[pos + 1:]:
        cells = [_float(tok, lineno, "matrix cell") for tok in line.split()]
        if len(cells) != n:
            raise ParseError(f"matrix row has {len(cells)} cells, expected {n}", lineno)
        rows.append(cells)
    if len(rows) != n:
        last = lines[-1][0] if rows else matrix_line
        raise ParseError(f"matrix has {len(rows)} rows, expected {n}", last)
    values = np.array(rows, dtype=float).reshape(n, n)
    labels = tuple(v.label for v in vertices)
    # the file does not record the cutoff that was applied
    try:
        return MapDocument(tuple(vertices), SimilarityMatrix(labels, values, 0.0))
    except ValueError as exc:
        raise ParseError(str(exc), matrix_line) from None
