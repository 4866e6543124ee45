"""Command-line interface.

Examples::

    citescape map --edges edges.csv --meta meta.csv --seed "Environ Plann B" --out out
    citescape batch --edges edges.csv --meta meta.csv --out out
    citescape impact --edges edges.csv --meta meta.csv --seed "Environ Plann B" --direction citing
    citescape analyze --edges edges.csv --meta meta.csv --seed "Environ Plann B"
    citescape factors --edges edges.csv --meta meta.csv --seed "Environ Plann B"
    citescape stats spearman --meta meta.csv --x impact_factor --y total_cited

Reports go to stdout, log messages to stderr, files under ``--out``
(default ``$CITESCAPE_OUT`` or ``./out``).
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from ._labels import make_label
from ._validation import check_cutoff, check_threshold_pct
from .environment import Direction, apply_exclusions, environment_of
from .errors import CitescapeError, JournalNotFoundError, LabelError
from .estimators import CitationEnvironmentMap, VarimaxPCA
from .graph_metrics import SimilarityGraph, articulation_points, connected_components, core_clusters, k_core
from .impact import impact_report, write_impact_report
from .ingest import CitationGraph, parse_metadata, read_graph
from .layout import document_graph, force_layout, render_svg
from .pajek import write_map
from .similarity import profile_vectors, similarity_matrix
from .statistics import spearman_rho

log = logging.getLogger("citescape")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

META_COLUMNS = ("total_cited", "total_citing", "impact_factor")


@dataclass
class RunConfig:
    edge_files: list = field(default_factory=list)
    metadata_files: list = field(default_factory=list)
    seed_journal: str | None = None
    seed_label: str | None = None
    direction: Direction = Direction.CITED
    threshold_pct: float = 1.0
    cosine_min: float = 0.2
    exclusions: set = field(default_factory=set)
    size_overrides: dict = field(default_factory=dict)
    output_dir: Path = Path("out")
    emit_svg: bool = False
    random_seed: int = 0

    def __post_init__(self):
        self.threshold_pct = check_threshold_pct(self.threshold_pct)
        self.cosine_min = check_cutoff(self.cosine_min)
        self.direction = Direction.coerce(self.direction)
        self.output_dir = Path(self.output_dir)


def parse_size_override(text: str):
    """``"J=X,Y"`` to ``("J", (X, Y))``; a bare journal name means ``(1.0, 1.0)``."""
    name, sep, sizes = text.rpartition("=")
    if not sep:
        return text.strip(), (1.0, 1.0)
    try:
        x, y = (float(v) for v in sizes.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"size override must look like 'Journal=X,Y', got {text!r}") from None
    return name.strip(), (x, y)


def _config(args) -> RunConfig:
    return RunConfig(
        edge_files=args.edges or [],
        metadata_files=args.meta or [],
        seed_journal=getattr(args, "seed", None),
        seed_label=getattr(args, "label", None),
        direction=getattr(args, "direction", "cited"),
        threshold_pct=getattr(args, "threshold_pct", 1.0),
        cosine_min=getattr(args, "cosine_min", 0.2),
        exclusions=set(getattr(args, "exclude", None) or ()),
        size_overrides=dict(getattr(args, "size_override", None) or ()),
        output_dir=getattr(args, "out", None) or os.environ.get("CITESCAPE_OUT", "out"),
        emit_svg=getattr(args, "svg", False),
        random_seed=getattr(args, "layout_seed", 0),
    )


def _resolve_seed(graph: CitationGraph, config: RunConfig) -> str:
    if config.seed_journal is not None:
        if config.seed_journal not in graph:
            raise JournalNotFoundError(f"unknown seed journal {config.seed_journal!r}")
        return config.seed_journal
    if config.seed_label is not None:
        matches = [j for j in graph.journals if make_label(j) == config.seed_label]
        if not matches:
            raise JournalNotFoundError(f"no journal with label {config.seed_label!r}")
        if len(matches) > 1:
            raise LabelError(f"label {config.seed_label!r} is ambiguous: {matches}")
        return matches[0]
    raise JournalNotFoundError("no seed journal given (use --seed or --label)")


def _fit_map(graph, seed, config, direction=None):
    return CitationEnvironmentMap(
        seed=seed,
        direction=direction or config.direction,
        threshold_pct=config.threshold_pct,
        cosine_min=config.cosine_min,
        exclude=tuple(sorted(config.exclusions)),
        size_overrides=config.size_overrides,
    ).fit(graph)


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit(mapper, direction: Direction, config: RunConfig) -> Path:
    label = make_label(mapper.environment_.seed)
    path = config.output_dir / direction.value / f"{label}.net"
    _write(path, mapper.to_pajek())
    if config.emit_svg:
        g, weights = document_graph(mapper.document_)
        layout = force_layout(g, weights, seed=config.random_seed)
        _write(path.with_suffix(".svg"), render_svg(mapper.document_, layout))
    return path


def cmd_map(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    graph = read_graph(config.edge_files, config.metadata_files)
    seed = _resolve_seed(graph, config)
    mapper = _fit_map(graph, seed, config)
    path = _emit(mapper, config.direction, config)
    log.info("wrote %s (%d vertices)", path, len(mapper.document_.vertices))
    out.write(write_impact_report(mapper.impact_))
    return EXIT_OK


def cmd_batch(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    graph = read_graph(config.edge_files, config.metadata_files)
    rows = []
    failures = 0
    used_labels = {}
    for journal in graph.journals:
        try:
            label = make_label(journal)
        except LabelError as exc:
            log.error("skipping %r: %s", journal, exc)
            failures += 2
            continue
        if label in used_labels:
            log.error("skipping %r: label %r already used by %r", journal, label, used_labels[label])
            failures += 2
            continue
        used_labels[label] = journal
        for direction in Direction:
            try:
                mapper = _fit_map(graph, journal, config, direction)
                path = _emit(mapper, direction, config)
            except CitescapeError as exc:
                log.error("skipping %s map of %r: %s", direction.value, journal, exc)
                failures += 1
                continue
            rel = path.relative_to(config.output_dir).as_posix()
            rows.append((journal, label, direction.value, rel, len(mapper.document_.vertices)))
    rows.sort(key=lambda r: (r[1].encode("ascii"), r[2]))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["journal", "label", "direction", "path", "vertex_count"])
    w.writerows(rows)
    _write(config.output_dir / "manifest.csv", buf.getvalue())
    out.write(f"wrote {len(rows)} maps, {failures} failed\n")
    if failures and not rows:
        return EXIT_FAILED
    return EXIT_OK


def _environment(config):
    graph = read_graph(config.edge_files, config.metadata_files)
    seed = _resolve_seed(graph, config)
    env = environment_of(graph, seed, config.direction, config.threshold_pct)
    return apply_exclusions(env, config.exclusions)


def cmd_impact(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    env = _environment(config)
    out.write(write_impact_report(impact_report(env, config.direction)))
    return EXIT_OK


def cmd_analyze(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    env = _environment(config)
    sim = similarity_matrix(env, config.direction, config.cosine_min)
    g = SimilarityGraph.from_similarity(sim)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["component", "journal"])
    for i, comp in enumerate(connected_components(g), start=1):
        for journal in comp:
            w.writerow([i, journal])
    out.write("\n")
    w.writerow(["journal", "degree", "coreness"])
    coreness = k_core(g)
    for k, members in core_clusters(coreness):
        for journal in members:
            w.writerow([journal, g.degree(journal), k])
    out.write("\n")
    w.writerow(["articulation_point"])
    points = articulation_points(g)
    for journal in g.nodes:
        if journal in points:
            w.writerow([journal])
    return EXIT_OK


def _loading_cell(x, display_min):
    if abs(x) < display_min:
        return ""
    return f"{x:.3f}"


def cmd_factors(config: RunConfig, out=None, display_min=0.10) -> int:
    out = out or sys.stdout
    env = _environment(config)
    vectors = profile_vectors(env, config.direction)
    model = VarimaxPCA().fit(list(zip(*vectors)), variable_names=env.journals)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["component", "eigenvalue"])
    for i, ev in enumerate(model.eigenvalues_, start=1):
        w.writerow([i, f"{ev:.6f}"])
    out.write("\n")
    w.writerow(["retained_components", model.n_components_])
    w.writerow(["rotation_converged", str(model.converged_).lower()])
    w.writerow(["rotation_sweeps", model.n_iter_])
    out.write("\n")
    w.writerow(["journal"] + [f"component_{i}" for i in range(1, model.n_components_ + 1)])
    for journal, row in zip(env.journals, model.loadings_):
        w.writerow([journal] + [_loading_cell(x, display_min) for x in row])
    return EXIT_OK


def _meta_column(meta, column):
    return {j: getattr(m, column) for j, m in meta.items() if getattr(m, column) is not None}


def cmd_stats(config: RunConfig, x="impact_factor", y="total_cited", out=None) -> int:
    out = out or sys.stdout
    meta = {}
    for path in config.metadata_files:
        with open(path, encoding="utf-8", newline="") as fh:
            meta.update(parse_metadata(fh))
    xs, ys = _meta_column(meta, x), _meta_column(meta, y)
    journals = sorted(set(xs) & set(ys))
    rho = spearman_rho([xs[j] for j in journals], [ys[j] for j in journals])
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "y", "n", "spearman_rho"])
    w.writerow([x, y, len(journals), f"{rho:.3f}"])
    return EXIT_OK


def _add_input_flags(p, seed=True):
    p.add_argument("--edges", action="append", metavar="FILE", help="edge-list file (repeatable; merged)")
    p.add_argument("--meta", action="append", metavar="FILE", help="metadata file (repeatable; merged)")
    if seed:
        p.add_argument("--seed", help="seed journal, by canonical name")
        p.add_argument("--label", help="seed journal, by condensed Pajek label")
    p.add_argument("--direction", choices=[d.value for d in Direction], default="cited")
    p.add_argument("--threshold-pct", type=float, default=1.0)
    p.add_argument("--cosine-min", type=float, default=0.2)
    p.add_argument("--exclude", action="append", metavar="JOURNAL", help="drop a journal (repeatable)")


def _add_output_flags(p):
    p.add_argument("--size-override", action="append", type=parse_size_override, metavar="J=X,Y",
                   help="fixed x_fact,y_fact for a journal (repeatable; bare name means 1,1)")
    p.add_argument("--out", type=Path, help="output directory (default $CITESCAPE_OUT or ./out)")
    p.add_argument("--svg", action="store_true", help="also write an SVG rendering next to each map")
    p.add_argument("--layout-seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="citescape", description="Journal citation-environment maps.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("map", help="write the Pajek map of one seed journal")
    _add_input_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("batch", help="write cited and citing maps for every journal")
    _add_input_flags(p, seed=False)
    _add_output_flags(p)

    for name, text in (("impact", "print the local impact report"),
                       ("analyze", "print components, k-cores and articulation points"),
                       ("factors", "print eigenvalues and varimax-rotated loadings")):
        p = sub.add_parser(name, help=text)
        _add_input_flags(p)

    p = sub.add_parser("stats", help="rank statistics over metadata columns")
    stats = p.add_subparsers(dest="stat", required=True)
    s = stats.add_parser("spearman", help="Spearman rank correlation of two metadata columns")
    s.add_argument("--meta", action="append", metavar="FILE", required=True)
    s.add_argument("--x", choices=META_COLUMNS, default="impact_factor")
    s.add_argument("--y", choices=META_COLUMNS, default="total_cited")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)
    try:
        if args.command == "stats":
            config = RunConfig(metadata_files=args.meta)
            return cmd_stats(config, args.x, args.y)
        config = _config(args)
        if args.command != "batch" and not (config.seed_journal or config.seed_label):
            parser.error("--seed or --label is required")
        if args.command in ("map", "batch") and not config.edge_files:
            parser.error("--edges is required")
        command = {
            "map": cmd_map,
            "batch": cmd_batch,
            "impact": cmd_impact,
            "analyze": cmd_analyze,
            "factors": cmd_factors,
        }[args.command]
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return command(config)
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    except (CitescapeError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
