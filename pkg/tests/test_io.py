import io
import json

import numpy as np
import pytest
from hypothesis import given

from girgdim import io as gio
from girgdim.dimension_test import infer_dimension
from girgdim.generators import GirgParams, generate_girg

from conftest import make_graph
from test_graph import random_graphs


def parse(text):
    return gio.parse_edge_list(io.StringIO(text))


def test_parse_path_graph():
    g = parse("# c\n0 1\n1 2\n")
    assert g.n == 3 and g.m == 2 and g.degrees.tolist() == [1, 2, 1]


def test_parse_reports_dropped():
    g = parse("0 1\n1 0\n0 0\n")
    assert g.n == 2 and g.m == 1
    assert g.meta["dropped_duplicates"] == 1 and g.meta["dropped_self_loops"] == 1


def test_parse_compacts_one_indexed_ids():
    g = parse("1 2\n2 3\n10 3\n")
    assert g.n == 4
    assert g.meta["original_ids"].tolist() == [1, 2, 3, 10]


def test_parse_ignores_extra_columns_and_tabs():
    g = parse("0\t1\t0.5\n1 2 extra\n")
    assert g.m == 2


@pytest.mark.parametrize("text, line", [("0 1\nfoo bar\n", 2), ("0 1\n\n3\n", 3)])
def test_parse_malformed_line(text, line):
    with pytest.raises(ValueError, match=f"line {line}"):
        parse(text)


@pytest.mark.parametrize("text", ["", "# only comments\n\n"])
def test_parse_empty(text):
    with pytest.raises(ValueError, match="empty"):
        parse(text)


@given(random_graphs())
def test_serialise_parse_fixed_point(g):
    text = gio.format_edge_list(g)
    h = parse(text)
    assert h.n == g.n
    assert np.array_equal(h.indptr, g.indptr) and np.array_equal(h.indices, g.indices)
    assert gio.format_edge_list(h) == text


def test_weights_and_positions_round_trip(tmp_path):
    w = np.array([1.0, 2.5, 1e-7])
    gio.write_weights(w, tmp_path / "w.txt")
    assert np.array_equal(gio.read_weights(tmp_path / "w.txt", 3), w)
    pos = np.array([[0.1, 0.2], [0.3, 0.4], [0.5, 0.6]])
    gio.write_positions(pos, tmp_path / "p.txt")
    assert np.array_equal(gio.read_positions(tmp_path / "p.txt", 3), pos)


def test_weight_file_must_cover_every_vertex(tmp_path):
    (tmp_path / "w.txt").write_text("0 1.0\n2 1.0\n")
    with pytest.raises(ValueError):
        gio.read_weights(tmp_path / "w.txt", 3)


def test_csv_quoting_and_header():
    rec = gio.RunRecord("x", {"a": 1}, 0, version="v")
    text = gio.format_csv(("a", "b"), [("1,5", None)], rec)
    lines = text.split("\r\n")
    assert lines[0].startswith("# ") and json.loads(lines[0][2:])["schema"] == gio.SCHEMA
    assert lines[2] == '"1,5",'


def test_run_record_header_excludes_wall_time():
    rec = gio.RunRecord("x", {}, 1, version="v", wall_time=3.2)
    assert "wall_time" not in rec.header() and rec.full()["wall_time"] == 3.2


def test_atomic_write_leaves_no_temp(tmp_path):
    gio.atomic_write_text(tmp_path / "sub" / "a.txt", "hello")
    assert (tmp_path / "sub" / "a.txt").read_text() == "hello"
    assert [p.name for p in (tmp_path / "sub").iterdir()] == ["a.txt"]


def test_verdict_serialisation_is_stable():
    g = generate_girg(GirgParams(5000, 1, 3.5, lam=3.6, seed=1))
    v = infer_dimension(g, 1.15, [1.0, 1.5])
    rec = gio.RunRecord("infer", {}, None, version="v")
    a = gio.format_json(gio.verdict_to_dict(v, "x", rec))
    b = gio.format_json(gio.verdict_to_dict(infer_dimension(g, 1.15, [1.0, 1.5]), "x", rec))
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == gio.SCHEMA and len(doc["bands"]) == 2
    rows = list(gio.band_rows(v))
    assert len(rows) == 2 and len(rows[0]) == len(gio.BAND_COLUMNS)


def test_isolated_vertices_survive_round_trip(tmp_path):
    g = make_graph(5, [(1, 2)])
    gio.write_edge_list(g, tmp_path / "e.txt")
    assert gio.parse_edge_list(tmp_path / "e.txt").n == 5
