import csv
import io

import numpy as np
import pytest

from citescape import cli
from citescape.cli import RunConfig, main, parse_size_override
from citescape.errors import TotalsFallbackWarning
from citescape.fixtures import fixture_path
from citescape.pajek import read_map
from citescape.similarity import cosine

from .conftest import EPB, TABLE1, TABLE1_NAMES

EDGES = str(fixture_path("table1_edges.csv"))
META = str(fixture_path("table1_meta.csv"))
CITING = str(fixture_path("citing_edges.csv"))
TABLE4 = str(fixture_path("table4_meta.csv"))


def run(*argv):
    return main(list(argv))


def test_map_golden(tmp_path, golden_text):
    assert run("map", "--edges", EDGES, "--meta", META, "--seed", EPB, "--out", str(tmp_path)) == 0
    assert (tmp_path / "cited" / "EnvironPlannB.net").read_bytes() == golden_text.encode("ascii")


def test_map_by_label(tmp_path, golden_text):
    assert run("map", "--edges", EDGES, "--meta", META, "--label", "EnvironPlannB", "--out", str(tmp_path)) == 0
    assert (tmp_path / "cited" / "EnvironPlannB.net").read_text() == golden_text


def test_map_out_from_environment(tmp_path, monkeypatch, golden_text):
    monkeypatch.setenv("CITESCAPE_OUT", str(tmp_path))
    assert run("map", "--edges", EDGES, "--meta", META, "--seed", EPB) == 0
    assert (tmp_path / "cited" / "EnvironPlannB.net").read_text() == golden_text


def test_map_is_deterministic(tmp_path):
    for d in ("a", "b"):
        assert run("map", "--edges", EDGES, "--meta", META, "--seed", EPB, "--svg", "--out", str(tmp_path / d)) == 0
    for name in ("EnvironPlannB.net", "EnvironPlannB.svg"):
        assert (tmp_path / "a" / "cited" / name).read_bytes() == (tmp_path / "b" / "cited" / name).read_bytes()


def test_map_exclude_matches_submatrix(tmp_path):
    assert run("map", "--edges", EDGES, "--meta", META, "--seed", EPB, "--exclude", "Urban Stud",
               "--out", str(tmp_path)) == 0
    doc = read_map((tmp_path / "cited" / "EnvironPlannB.net").read_text())
    assert len(doc.vertices) == 9 and "UrbanStud" not in doc.labels
    keep = [i for i, n in enumerate(TABLE1_NAMES) if n != "Urban Stud"]
    sub = np.array(TABLE1)[np.ix_(keep, keep)]
    for a in range(9):
        for b in range(9):
            c = 0.0 if a == b else cosine(sub[:, a], sub[:, b])
            expected = c if c >= 0.2 else 0.0
            assert doc.matrix.values[a, b] == pytest.approx(expected, abs=5e-7)
    epb = doc.vertices[doc.labels.index("EnvironPlannB")]
    assert epb.y_fact == pytest.approx(100 * 175 / sub.sum(), abs=5e-7)


def test_map_citing(tmp_path):
    assert run("map", "--edges", CITING, "--meta", META, "--seed", EPB, "--direction", "citing",
               "--out", str(tmp_path)) == 0
    doc = read_map((tmp_path / "citing" / "EnvironPlannB.net").read_text())
    assert len(doc.vertices) == 6 and "GeogrAnal" in doc.labels


def test_unknown_seed_exits_2(tmp_path):
    assert run("map", "--edges", EDGES, "--meta", META, "--seed", "Nature", "--out", str(tmp_path)) == 2
    assert not any(tmp_path.rglob("*.net"))


def test_missing_seed_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run("map", "--edges", EDGES, "--out", str(tmp_path))
    assert exc.value.code == 2


def test_missing_file_exits_3(tmp_path):
    assert run("map", "--edges", str(tmp_path / "nope.csv"), "--seed", EPB, "--out", str(tmp_path)) == 3


def test_batch(tmp_path, golden_text):
    assert run("batch", "--edges", EDGES, "--meta", META, "--out", str(tmp_path)) == 0
    assert len(list(tmp_path.rglob("*.net"))) == 20
    assert (tmp_path / "cited" / "EnvironPlannB.net").read_text() == golden_text
    with open(tmp_path / "manifest.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 20
    assert [(r["label"], r["direction"]) for r in rows] == sorted((r["label"], r["direction"]) for r in rows)
    epb = [r for r in rows if r["journal"] == EPB and r["direction"] == "cited"][0]
    assert epb["path"] == "cited/EnvironPlannB.net" and epb["vertex_count"] == "10"


def test_batch_empty_graph(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("citing,cited,count\n")
    assert run("batch", "--edges", str(empty), "--out", str(tmp_path / "out")) == 0
    assert (tmp_path / "out" / "manifest.csv").read_text() == "journal,label,direction,path,vertex_count\n"
    assert not any((tmp_path / "out").rglob("*.net"))


def test_batch_without_totals_falls_back(tmp_path):
    with pytest.warns(TotalsFallbackWarning) as record:
        assert run("batch", "--edges", EDGES, "--out", str(tmp_path)) == 0
    assert len(record) == 20
    assert "no cited total for 'Urban Stud'; using the in-graph sum 481" in [str(w.message) for w in record]
    assert len(list(tmp_path.rglob("*.net"))) == 20


def test_impact_report():
    out = io.StringIO()
    assert cli.cmd_impact(RunConfig([EDGES], [META], seed_journal=EPB), out=out) == 0
    rows = list(csv.reader(io.StringIO(out.getvalue())))
    epb = [r for r in rows if r[0] == EPB][0]
    assert "189" in epb and "102" in epb


def test_analyze():
    out = io.StringIO()
    assert cli.cmd_analyze(RunConfig([EDGES], [META], seed_journal=EPB), out=out) == 0
    blocks = out.getvalue().split("\n\n")
    comps = list(csv.reader(io.StringIO(blocks[0])))[1:]
    by_comp = {}
    for c, j in comps:
        by_comp.setdefault(c, []).append(j)
    assert ["J Urban Plan D-Asce"] in by_comp.values()
    assert len(by_comp) == 2


def test_factors():
    out = io.StringIO()
    assert cli.cmd_factors(RunConfig([EDGES], [META], seed_journal=EPB), out=out) == 0
    assert "retained_components,5\n" in out.getvalue()
    assert "rotation_converged,true\n" in out.getvalue()


def test_stats_spearman(capsys):
    assert run("stats", "spearman", "--meta", TABLE4) == 0
    assert capsys.readouterr().out.splitlines()[1] == "impact_factor,total_cited,10,0.891"


def test_size_override_parsing(tmp_path):
    assert parse_size_override("Urban Stud=2.5,3") == ("Urban Stud", (2.5, 3.0))
    assert parse_size_override("Urban Stud") == ("Urban Stud", (1.0, 1.0))
    with pytest.raises(Exception):
        parse_size_override("Urban Stud=big")
    assert run("map", "--edges", EDGES, "--meta", META, "--seed", EPB, "--size-override", "Urban Stud=2,3",
               "--out", str(tmp_path)) == 0
    doc = read_map((tmp_path / "cited" / "EnvironPlannB.net").read_text())
    v = doc.vertices[doc.labels.index("UrbanStud")]
    assert (v.x_fact, v.y_fact) == (2.0, 3.0)


def test_svg_written(tmp_path):
    assert run("map", "--edges", EDGES, "--meta", META, "--seed", EPB, "--svg", "--out", str(tmp_path)) == 0
    svg = (tmp_path / "cited" / "EnvironPlannB.svg").read_text()
    assert svg.startswith("<svg") and svg.count('data-label="') == 10
