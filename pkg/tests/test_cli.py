import json
import re
from importlib import resources

import pytest
from hypothesis import given
from hypothesis import strategies as st

from divnbhd.cli import main
from divnbhd.graph import Vertex, WeightedDualGraph
from divnbhd.io import GOLDEN, DocumentError, graph_to_dict, load_golden, parse_graph, serialize_graph, to_dot

GOLDEN_DIR = resources.files("divnbhd").joinpath("golden")
FRACTION = re.compile(r"^-?\d+(/\d+)?$")


def path(name):
    return str(GOLDEN_DIR.joinpath(f"{name}.json"))


@pytest.mark.parametrize("name", GOLDEN)
def test_golden_round_trip(name):
    g = load_golden(name)
    assert parse_graph(serialize_graph(g)) == g
    raw = json.loads(GOLDEN_DIR.joinpath(f"{name}.json").read_text())
    assert graph_to_dict(g) == raw


ids = st.text("abcdefgh", min_size=1, max_size=4)


@given(st.lists(ids, min_size=1, max_size=6, unique=True), st.data())
def test_round_trip_property(names, data):
    verts = tuple(Vertex(n, data.draw(st.integers(-6, -1)), data.draw(st.booleans())) for n in names)
    edges = tuple((names[i], names[i + 1]) for i in range(len(names) - 1))
    g = WeightedDualGraph(verts, edges)
    assert parse_graph(serialize_graph(g)) == g


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("{", "line 1"),
        ('{"vertices": [], "edges": []}', "vertices"),
        ('{"vertices": [{"id": "a", "e": "x"}], "edges": []}', "vertices/0/e"),
        ('{"vertices": [{"id": "a", "e": -2}], "edges": [["a", "b"]]}', "b"),
        ('{"vertices": [{"id": "' + "x" * 65 + '", "e": -2}], "edges": []}', "vertices/0/id"),
        ('{"vertices": [{"id": "a", "e": -2}], "edges": [], "extra": 1}', "extra"),
    ],
)
def test_diagnostics(text, fragment):
    with pytest.raises(DocumentError, match=fragment):
        parse_graph(text)


def test_analyze_exit_codes(capsys, tmp_path):
    assert main(["analyze", path("example1")]) == 0
    assert "verdict: pass" in capsys.readouterr().out
    assert main(["analyze", path("example2")]) == 1
    assert main(["analyze", path("example1"), "--class", "nonnormal"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["analyze", str(bad)]) == 2
    assert main(["analyze", str(tmp_path / "missing.json")]) == 2
    noncontr = tmp_path / "nc.json"
    noncontr.write_text(json.dumps({"vertices": [{"id": "a", "e": 0}, {"id": "C", "e": -1, "marked": True}], "edges": [["a", "C"]]}))
    assert main(["analyze", str(noncontr)]) == 2


def _strings(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _strings(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _strings(v)
    elif isinstance(obj, str):
        yield obj


@pytest.mark.parametrize("name", GOLDEN)
def test_json_report(capsys, name):
    code = main(["analyze", path(name), "--json"])
    out = capsys.readouterr().out
    rep = json.loads(out)
    assert set(rep) == {"input", "analysis", "verdict", "provenance"}
    assert all(isinstance(x, bool) for x in rep["verdict"]["conditions"].values())
    assert code == (0 if rep["verdict"]["passed"] else 1)
    assert rep["verdict"]["passed"] == all(rep["verdict"]["conditions"].values())
    for group in ("kz_dot", "self_int", "cross_int", "discrepancies"):
        assert all(FRACTION.match(s) for s in _strings(rep["analysis"][group]))
    assert "." not in "".join(_strings(rep["analysis"]))
    assert all(re.match(r"^[a-z0-9_]+\.[A-Za-z0-9_.]+$", t) for t in rep["provenance"]["theorems"])


def test_json_report_values(capsys):
    main(["analyze", path("nonnormal"), "--json"])
    rep = json.loads(capsys.readouterr().out)
    assert rep["analysis"]["self_int"] == {"C1": "-1/9", "C2": "-11/9"}
    assert rep["verdict"]["extras"]["x1"] == "6"


def test_hj(capsys):
    assert main(["hj", "12", "5"]) == 0
    assert capsys.readouterr().out.strip() == "[3,2,3]"
    assert main(["hj", "--chain", "2,5"]) == 0
    assert capsys.readouterr().out.strip() == "9/5 ⇒ 1/9(1,5)"
    assert main(["hj", "4", "2"]) == 2
    assert main(["hj"]) == 2
    assert main(["hj", "--chain", "1,3"]) == 2


def test_enumerate(capsys, tmp_path):
    assert main(["enumerate", "semistable", "--k", "2"]) == 0
    cat = json.loads(capsys.readouterr().out)
    assert cat["records"] == [] and cat["note"] == "empty (proved: cA_1)"
    out = tmp_path / "k3.json"
    assert main(["enumerate", "semistable", "--k", "3", "--bound", "500", "--out", str(out)]) == 0
    cat = json.loads(out.read_text())
    assert [(r["n"], r["a"], r["d"], r["n2"], r["a2"], r["d2"]) for r in cat["records"]] == [(2, 1, 3, 3, 2, 1)]
    assert main(["enumerate", "semistable", "--k", "3", "--out", str(tmp_path / "no" / "x.json")]) == 2
    assert main(["enumerate", "semistable"]) == 2


def test_enumerate_normal(capsys):
    assert main(["enumerate", "normal", "--max-n", "5", "--max-d", "4", "--max-chain", "0"]) == 0
    cat = json.loads(capsys.readouterr().out)
    recs = {(tuple(r["chain"]), r["position"]) for r in cat["records"]}
    assert ((3, 3, 2, 2, 4, 2), 2) in recs or ((2, 4, 2, 2, 3, 3), 3) in recs


def test_dot():
    text = to_dot(load_golden("example1"))
    assert text.count("style=filled") == 1
    assert '"C" [label="-1"' in text
    two = WeightedDualGraph.chain([-2, -3])
    assert to_dot(two).count(" -- ") == 1
    glued = to_dot(load_golden("nonnormal"))
    assert "style=dashed" in glued


def test_dot_cli(capsys, tmp_path):
    assert main(["dot", path("example1")]) == 0
    assert capsys.readouterr().out.startswith("graph germ {")
    bad = tmp_path / "bad.json"
    bad.write_text("[]")
    assert main(["dot", str(bad)]) == 2
