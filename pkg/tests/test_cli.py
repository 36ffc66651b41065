"""CLI behaviour: exit codes, formats, parallel determinism."""

import json

import pytest

from cfku import cli, render
from cfku.complexes import figure_eight_complex
from cfku.pretzel import PretzelParams, full_complex, report_dict
from cfku.homology import hfk_hat


def run(argv):
    return cli.main(argv)


def test_invariants_exit_zero(capsys):
    assert run(["invariants", "-m", "5", "-n", "5", "--fast"]) == 0
    out = capsys.readouterr().out
    assert "V0 = 0, lower V0 = 0, upper V0 = -2" in out
    assert "MATCH" in out


def test_invariants_json_matches_report(tmp_path):
    path = tmp_path / "r.json"
    assert run(
        ["invariants", "-m", "5", "-n", "5", "--mirror", "--format", "json",
         "--out", str(path)]
    ) == 0
    data = json.loads(path.read_text())
    assert data == report_dict(5, 5, mirrored=True, deep=True)
    assert (data["V0"], data["V0_lower"], data["V0_upper"]) == (2, 3, 2)
    assert data["checks"]["theorem_match"] is True


def test_usage_errors_exit_two(capsys):
    for argv in (
        ["invariants", "-m", "4", "-n", "3"],
        ["invariants", "-m", "3", "-n", "5"],
        ["verify", "--m-max", "4"],
        ["examples", "nosuchknot"],
        ["examples", "lspace"],
    ):
        with pytest.raises(SystemExit) as e:
            run(argv)
        assert e.value.code == 2
        capsys.readouterr()


def test_mismatch_exit_one(monkeypatch, capsys):
    broken = report_dict(3, 3, mirrored=False, deep=False)
    broken["checks"]["theorem_match"] = False
    monkeypatch.setattr(cli, "report_dict", lambda *a, **k: dict(broken))
    assert run(["invariants", "-m", "3", "-n", "3", "--fast"]) == 1
    capsys.readouterr()


def test_verify_small(capsys):
    assert run(["verify", "--m-max", "3"]) == 0
    out = capsys.readouterr().out
    assert "2 cases, 0 failures" in out


def test_verify_jobs_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run(["verify", "--m-max", "7", "--format", "json", "--out", str(a)]) == 0
    assert run(
        ["verify", "--m-max", "7", "--jobs", "2", "--format", "json", "--out", str(b)]
    ) == 0
    assert a.read_text() == b.read_text()
    data = json.loads(a.read_text())
    assert data["failures"] == 0
    keys = [(r["m"], r["n"], r["mirrored"]) for r in data["reports"]]
    assert keys == sorted(keys)


def test_hfk_json(tmp_path):
    path = tmp_path / "h.json"
    assert run(["hfk", "-m", "5", "-n", "3", "--format", "json", "--out", str(path)]) == 0
    data = json.loads(path.read_text())
    want = hfk_hat(full_complex(PretzelParams(5, 3)))
    assert {(e["alexander"], e["maslov"]): e["rank"] for e in data} == want


def test_show_formats(tmp_path, capsys):
    assert run(["show", "-m", "5", "-n", "5", "--format", "ascii"]) == 0
    grid = capsys.readouterr().out
    assert "|" in grid and "+" in grid
    assert run(["show", "-m", "5", "-n", "5", "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph")
    path = tmp_path / "c.json"
    assert run(
        ["show", "-m", "5", "-n", "5", "--which", "model", "--format", "json",
         "--out", str(path)]
    ) == 0
    data = json.loads(path.read_text())
    c = render.complex_from_json(data)
    assert render.complex_to_json(c) == data
    assert run(["show", "-m", "5", "-n", "5", "--which", "A0"]) == 0
    capsys.readouterr()
    assert run(["show", "-m", "5", "-n", "5", "--which", "cone"]) == 0
    out = capsys.readouterr().out
    assert "Q " in out


def test_examples(capsys):
    assert run(["examples", "trefoil"]) == 0
    out = capsys.readouterr().out
    assert "V0 = 1, lower V0 = 1, upper V0 = 1" in out
    assert "iota(z1_1) = z1_2" in out
    assert run(["examples", "figure-eight"]) == 0
    out = capsys.readouterr().out
    assert "V0 = 0, lower V0 = 1, upper V0 = 0" in out
    assert run(["examples", "lspace", "1"]) == 0
    out = capsys.readouterr().out
    assert "V0 = 1" in out
    assert run(["examples", "unknot"]) == 0
    capsys.readouterr()


def test_complex_json_round_trip():
    c = figure_eight_complex()
    d = render.complex_to_json(c)
    c2 = render.complex_from_json(d)
    assert c2.gens == c.gens and c2.diff == c.diff
    # text form parses back to the same document
    assert json.loads(render.to_json_text(d)) == d
