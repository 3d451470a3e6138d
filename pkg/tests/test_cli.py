import io
import random

import pytest
from hypothesis import given, settings

from arcrev.cli import main
from arcrev.errors import ParseError
from arcrev.formats import (
    format_graph,
    format_orientation,
    format_script,
    parse_family_label,
    parse_graph,
    parse_orientation,
    parse_script,
)
from arcrev.instances import tripartite_c4_free
from arcrev.orientation import dicycles, oriented_cycles, tt3
from arcrev.planner import PlanRequest, plan
from arcrev.refine import replay

from gen import oriented_mults, random_mult, random_pair, seeds


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def examples(tmp_path):
    for name in ("3.6", "3.7", "4.6", "4.12"):
        code, _, _ = run("example", name, "--out-dir", str(tmp_path))
        assert code == 0
    return tmp_path


def files(d, stem):
    return str(d / f"{stem}.g"), str(d / f"{stem}_d.or"), str(d / f"{stem}_dp.or")


# -- formats ---------------------------------------------------------------------------


def test_graph_format_exact():
    M = tripartite_c4_free().mult
    assert format_graph(M) == "graph 3\nedges 3\n1 2\n1 3\n2 3\nmult 2 1 2\n"


@settings(max_examples=50, deadline=None)
@given(oriented_mults(n_max=5, p_max=3))
def test_round_trips(D):
    M = D.mult
    assert parse_graph(format_graph(M)) == M
    assert parse_orientation(format_orientation(D), M) == D


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_script_round_trip(seed):
    rng = random.Random(seed)
    M = random_mult(rng)
    D, D2 = random_pair(rng, M, directed=rng.random() < 0.5)
    rep = plan(PlanRequest(D, D2, "same_score" if rng.random() < 0.5 else "parity"))
    if rep.outcome != "script":
        return
    text = format_script(rep.script)
    s = parse_script(text, M)
    # oriented steps are written without their arcs, so compare what survives the text form
    assert format_script(s) == text
    assert [st.tag for st in s] == [st.tag for st in rep.script]
    assert replay(D, s) == replay(D, rep.script) == rep.target


@pytest.mark.parametrize("family", [dicycles({4}), dicycles({3, 4}), dicycles(), oriented_cycles({3}),
                                    oriented_cycles({3, 4, 5}), oriented_cycles(), tt3()])
def test_family_labels(family):
    assert parse_family_label(family.label) == family


@pytest.mark.parametrize("text, line", [
    ("graph 2\nedges 1\n1 2\n", 3),
    ("graph 2\nedges 1\n1 x\nmult 1 1\n", 3),
    ("graph 3\nedges 2\n1 2\n1 2\nmult 1 1 1\n", 4),
    ("graph 2\nedge 1\n1 2\nmult 1 1\n", 2),
])
def test_graph_parse_errors(text, line):
    with pytest.raises(ParseError) as e:
        parse_graph(text, "g")
    assert e.value.lineno == line


def test_orientation_parse_errors():
    M = tripartite_c4_free().mult
    with pytest.raises(ParseError) as e:
        parse_orientation("1.1 -> 2.1\n1.1 -> 1.2\n", M, "o")
    assert e.value.lineno == 2
    with pytest.raises(ParseError):
        parse_orientation("1.1 -> 2.1\n", M, "o")  # too few arcs
    with pytest.raises(ParseError) as e:
        parse_orientation("1.1 -> 2.1\n2.1 -> 1.1\n", M, "o")
    assert e.value.lineno == 2


# -- commands ----------------------------------------------------------------------------


def test_scores_tripartite_pair(examples):
    g, d, _ = files(examples, "ex3_7")
    code, out, _ = run("scores", "--graph", g, "--orient", d)
    assert code == 0 and out.strip() == "0 2 2 2 2"


def test_plan_tt3_free(examples):
    g, d, dp = files(examples, "ex4_12")
    code, out, _ = run("plan", "--mode", "parity", "--family", "tt3", "--graph", g, "--from", d, "--to", dp)
    assert code == 2 and "reason: TT3-free" in out


@pytest.mark.parametrize("stem, mode, family", [
    ("ex3_7", "same-score", "c3c4"),
    ("ex4_12", "parity", "cc3"),
    ("ex3_6", "same-score", "auto"),
])
def test_plan_verify_round_trip(examples, tmp_path, stem, mode, family):
    g, d, dp = files(examples, stem)
    script = str(tmp_path / "s.txt")
    code, out, _ = run("plan", "--mode", mode, "--family", family, "--graph", g, "--from", d, "--to", dp,
                       "--out", script)
    assert code == 0, out
    code, out, _ = run("verify", "--graph", g, "--from", d, "--script", script, "--to", dp)
    assert code == 0 and out.startswith("ok"), out


def test_verify_reports_violation(examples, tmp_path):
    g, d, dp = files(examples, "ex3_7")
    script = tmp_path / "bad.txt"
    script.write_text("3:directed: 1.1 3.2 2.1\n")
    code, out, _ = run("verify", "--graph", g, "--from", d, "--script", str(script), "--to", dp)
    assert code == 1 and "violation at step 1" in out


def test_ddg_command(examples):
    g, d, dp = files(examples, "ex3_7")
    code, out, _ = run("ddg", "--graph", g, "--from", d, "--to", dp)
    lines = out.splitlines()
    assert code == 0 and "# balanced: exact" in lines
    assert sorted(x for x in lines if not x.startswith("#")) == ["1.1 -> 2.1", "2.1 -> 3.2", "3.2 -> 1.1"]
    g, d, dp = files(examples, "ex4_6")
    code, out, _ = run("ddg", "--graph", g, "--from", d, "--to", dp, "--mode", "identity")
    assert "# balanced: none" in out.splitlines()


def test_mult_and_chordless(examples):
    g, _, _ = files(examples, "ex3_7")
    code, out, _ = run("mult", "--graph", g)
    assert code == 0 and out.startswith("vertices 5\nedges 8\n")
    code, out, _ = run("chordless", "--graph", g)
    assert code == 0 and "chordless 3" in out and "lengths 3" in out


def test_classes_command(examples, tmp_path):
    g, _, _ = files(examples, "ex4_12")
    code, out, _ = run("classes", "--graph", g, "--mode", "parity", "--family", "tt3", "--out-dir",
                       str(tmp_path / "cls"))
    rows = [line.split() for line in out.splitlines() if not line.startswith("#")]
    assert code == 0 and len(rows) == 5
    for cid, size, scores, path in rows:
        assert (tmp_path / "cls" / f"class{cid}.or").exists() and path.endswith(f"class{cid}.or")


def test_input_errors(tmp_path):
    code, _, err = run("scores", "--graph", str(tmp_path / "missing.g"), "--orient", "x")
    assert code == 1 and "file not found" in err
    bad = tmp_path / "bad.g"
    bad.write_text("graph 2\nedges 1\n1 3\nmult 1 1\n")
    code, _, err = run("mult", "--graph", str(bad))
    assert code == 1 and "bad.g:3" in err
    assert run("plan", "--bogus")[0] == 1
