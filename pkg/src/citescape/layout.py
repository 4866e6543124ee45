"""Deterministic spring-embedder layout and SVG rendering of a map."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .graph_metrics import SimilarityGraph
from .pajek import MapDocument, Shape

__all__ = ["Layout", "force_layout", "document_graph", "render_svg"]


@dataclass(frozen=True)
class Layout:
    positions: dict
    seed: int = 0


def document_graph(doc: MapDocument) -> tuple[SimilarityGraph, dict]:
    """Similarity graph over the vertex labels of ``doc`` plus its edge weights."""
    labels = doc.labels
    edges = [(labels[i], labels[j], w) for i, j, w in doc.matrix.edges()]
    g = SimilarityGraph.from_edges(labels, [(a, b) for a, b, _ in edges])
    return g, {(a, b): w for a, b, w in edges}


def force_layout(g: SimilarityGraph, weights=None, seed=0, iterations=200) -> Layout:
    """Fruchterman-Reingold layout in the unit square.

    Attraction between adjacent nodes is ``w * d**2 / k`` for similarity
    weight ``w``; every pair repels with ``k**2 / d``; a weak pull toward
    the centre keeps disconnected parts from piling up on the border. The
    step length cools linearly to zero over ``iterations``.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    n = len(g.nodes)
    if n == 0:
        return Layout({}, seed)
    if n == 1:
        return Layout({g.nodes[0]: (0.5, 0.5)}, seed)
    weights = weights or {}
    index = {v: i for i, v in enumerate(g.nodes)}
    pairs = []
    for a, b in g.edges():
        w = weights.get((a, b), weights.get((b, a), 1.0))
        pairs.append((index[a], index[b], float(w)))
    ei = np.array([p[0] for p in pairs], dtype=int)
    ej = np.array([p[1] for p in pairs], dtype=int)
    ew = np.array([p[2] for p in pairs], dtype=float)

    rng = np.random.default_rng(seed)
    pos = rng.random((n, 2))
    k = 0.5 * np.sqrt(1.0 / n)
    gravity = 1.0
    t0 = 0.1
    for step in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((delta ** 2).sum(axis=-1))
        np.fill_diagonal(dist, 1.0)
        dist = np.maximum(dist, 1e-9)
        disp = (delta * (k * k / dist ** 2)[:, :, None]).sum(axis=1)
        disp -= gravity * (pos - 0.5)
        if len(pairs):
            d = pos[ei] - pos[ej]
            dlen = np.maximum(np.sqrt((d ** 2).sum(axis=1)), 1e-9)
            pull = d * (ew * dlen / k)[:, None]
            np.add.at(disp, ei, -pull)
            np.add.at(disp, ej, pull)
        length = np.maximum(np.sqrt((disp ** 2).sum(axis=1)), 1e-9)
        t = t0 * (1.0 - step / iterations)
        pos = pos + disp / length[:, None] * np.minimum(length, t)[:, None]
        pos = np.clip(pos, 0.0, 1.0)
    return Layout({v: (float(pos[i, 0]), float(pos[i, 1])) for i, v in enumerate(g.nodes)}, seed)


def _num(x):
    return f"{x:.2f}"


def render_svg(doc: MapDocument, layout: Layout, scale=2.0, min_radius=2.0, size=800, margin=80) -> str:
    """SVG picture of ``doc``: node width follows x_fact, height y_fact.

    Radii are ``scale * fact`` but never below ``min_radius``; edges are
    drawn with an opacity equal to their cosine.
    """
    missing = [v.label for v in doc.vertices if v.label not in layout.positions]
    if missing:
        raise ValueError(f"layout has no position for {missing}")
    span = size - 2 * margin

    def xy(label):
        x, y = layout.positions[label]
        return margin + x * span, margin + (1.0 - y) * span

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        '<g class="edges" stroke="black">',
    ]
    labels = doc.labels
    for i, j, w in doc.matrix.edges():
        (x1, y1), (x2, y2) = xy(labels[i]), xy(labels[j])
        out.append(
            f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
            f'stroke-opacity="{w:.6f}" data-source="{labels[i]}" data-target="{labels[j]}"/>'
        )
    out.append("</g>")
    out.append('<g class="nodes" fill="#d9d9d9" stroke="black">')
    for v in doc.vertices:
        cx, cy = xy(v.label)
        rx = max(min_radius, scale * v.x_fact)
        ry = max(min_radius, scale * v.y_fact)
        if v.shape is Shape.DIAMOND:
            pts = [(cx, cy - ry), (cx + rx, cy), (cx, cy + ry), (cx - rx, cy)]
            d = "M " + " L ".join(f"{_num(px)} {_num(py)}" for px, py in pts) + " Z"
            out.append(f'<path d="{d}" data-label="{v.label}"/>')
        else:
            out.append(
                f'<ellipse cx="{_num(cx)}" cy="{_num(cy)}" rx="{_num(rx)}" ry="{_num(ry)}" data-label="{v.label}"/>'
            )
    out.append("</g>")
    out.append('<g class="labels" font-family="sans-serif" font-size="12">')
    for v in doc.vertices:
        cx, cy = xy(v.label)
        rx = max(min_radius, scale * v.x_fact)
        out.append(f'<text x="{_num(cx + rx + 3)}" y="{_num(cy + 4)}">{escape(v.label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
