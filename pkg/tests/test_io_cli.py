import json
from fractions import Fraction as F

import pytest

from cubecross.cli import main
from cubecross.cubes import generate
from cubecross.geometry import PolylineDrawing, crossing_count
from cubecross.io import (
    FormatError,
    drawing_from_json,
    drawing_to_json,
    format_graph,
    graph_from_json,
    graph_to_json,
    parse_graph,
    read_drawing,
    read_graph,
    result_record,
    verify_record,
    write_drawing,
    write_graph,
)
from cubecross.solver import crossing_number
from conftest import complete


@pytest.mark.parametrize("name", ["Q3", "CQ4", "LTQ3", "1-MQ4"])
def test_graph_text_round_trip(tmp_path, name):
    from cubecross.cubes import parse_spec

    g = generate(parse_spec(name))
    path = tmp_path / "g.txt"
    write_graph(g, path)
    h = read_graph(path)
    assert (h.n, h.edges, h.labels, h.name) == (g.n, g.edges, g.labels, g.name)
    assert format_graph(h) == path.read_text()
    j = graph_from_json(json.loads(json.dumps(graph_to_json(g))))
    assert (j.n, j.edges, j.labels) == (g.n, g.edges, g.labels)


@pytest.mark.parametrize(
    "text",
    [
        "e 0 1\n",
        "p 2 1\n",
        "p 2 1\ne 0 1\ne 0 1\n",
        "p 2 1\ne 0 0\n",
        "p 2 1\ne 0 x\n",
        "p 2 1\nq 0 1\n",
        "p 2 1\np 2 1\ne 0 1\n",
        "p 2 1\nl 0 0\ne 0 1\n",
        "p 2 1\ne 0 5\n",
    ],
)
def test_malformed_graph_text(text):
    with pytest.raises(FormatError):
        parse_graph(text)


def test_drawing_round_trip_is_exact(tmp_path):
    g = complete(4)
    pos = ((F(0), F(0)), (F(1, 3), F(0)), (F(0), F(7, 11)), (F(2, 3), F(5, 9)))
    bends = tuple(() for _ in g.edges)
    d = PolylineDrawing(g, pos, bends)
    path = tmp_path / "d.json"
    write_drawing(d, path, crossing_count(d))
    e, claimed = read_drawing(path)
    assert e.positions == d.positions and e.bends == d.bends and claimed == crossing_count(d)
    with pytest.raises(FormatError):
        drawing_from_json(drawing_to_json(d), graph=complete(5))
    bad = drawing_to_json(d)
    bad["positions"][0] = [0.5, 0]
    with pytest.raises(FormatError):
        drawing_from_json(bad)


def test_record_verification_catches_tampering():
    g = generate("CQ", 3)
    rec = json.loads(json.dumps(result_record(g, crossing_number(g, effort=4), "exact", 4)))
    assert verify_record(rec) == []
    assert verify_record(rec, generate("Q", 3)) != []
    tampered = dict(rec, upper=0, lower=0)
    assert any("crossings but upper" in p for p in verify_record(tampered))
    assert verify_record(dict(rec, lower=2)) != []
    assert verify_record(dict(rec, certificate=None)) != []


def test_cli_gen_and_iso(tmp_path, capsys):
    out = tmp_path / "cq4.txt"
    assert main(["gen", "CQ", "4", "--out", str(out)]) == 0
    assert read_graph(out).m == 32
    assert main(["iso", str(out), "CQ4"]) == 0
    assert main(["iso", "CQ4", "LTQ4"]) == 1
    assert main(["iso", "Q3", "Q3", "--mapping"]) == 0
    assert "000 ->" in capsys.readouterr().out


def test_cli_lemmas(capsys):
    assert main(["lemmas", "CQ", "3"]) == 0
    text = capsys.readouterr().out
    assert text.count("[PASS]") == 9
    assert main(["lemmas", "Q", "3", "--lemma", "obs3.1"]) == 1
    assert main(["lemmas", "LTQ", "4", "--lemma", "obs4.4"]) == 0
    assert "four_paths" in capsys.readouterr().out
    assert main(["lemmas", "CQ", "4", "--lemma", "2.5"]) == 2
    assert main(["lemmas", "CQ", "3", "--lemma", "nonsense"]) == 2
    assert main(["lemmas"]) == 2


def test_cli_cr_and_verify(tmp_path, capsys):
    rec, dr, svg = tmp_path / "r.json", tmp_path / "d.json", tmp_path / "d.svg"
    assert main(["cr", "CQ3", "--out", str(rec), "--drawing", str(dr), "--svg", str(svg)]) == 0
    assert "cr = 1 (exact" in capsys.readouterr().out
    assert main(["verify", str(rec)]) == 0
    assert main(["verify", str(dr)]) == 0
    assert "<svg" in svg.read_text()
    data = json.loads(dr.read_text())
    data["crossings"] = 5
    dr.write_text(json.dumps(data))
    assert main(["verify", str(dr)]) == 1
    assert main(["cr", "CQ4", "--upper", "--effort", "2"]) == 0
    assert main(["cr", "CQ4", "--exact", "--nodes", "10", "--effort", "2"]) == 1
    assert main(["cr", "CQ4", "--bounds", "--nodes", "10", "--effort", "2"]) == 0
    assert main(["cr", "no-such-thing"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["verify", str(bad)]) == 2
    bad.write_text('{"format": "other"}')
    assert main(["verify", str(bad)]) == 2


def test_cli_usage_errors():
    assert main([]) == 2
    assert main(["gen", "XQ", "3"]) == 2
    assert main(["--version"]) == 0
