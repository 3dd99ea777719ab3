import json

import pytest

from soficent.cli import main


def run(tmp_path, *args, sub="estimate"):
    return main([sub, *args, "--out", str(tmp_path)])


def test_estimate_writes_reports(tmp_path, capsys):
    assert run(tmp_path, "--system", "golden-mean", "--d", "4,8", "--delta", "0.5") == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["quantity"] == "h_topological" and rep["headline"]["mode"] == "exact"
    assert (tmp_path / "cells.csv").read_text().startswith("d,")
    assert '"headline"' in capsys.readouterr().out


def test_repeat_runs_are_byte_identical(tmp_path):
    args = ("--system", "full-shift-2", "--d", "4,8", "--quantity", "h_measure_cover")
    assert run(tmp_path / "a", *args) == 0 and run(tmp_path / "b", *args) == 0
    for name in ("report.json", "cells.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_amenable_quantity(tmp_path):
    assert run(tmp_path, "--system", "golden-mean", "--quantity", "h_a_topological",
               "--folner", "5,10") == 0
    assert json.loads((tmp_path / "report.json").read_text())["pipeline"] == "amenable"


@pytest.mark.parametrize("args", [("--system", "nonesuch"), ("--quantity", "h_bogus"),
                                  ("--delta", "0.25,0.5"), ("--cover", "round")])
def test_config_errors_exit_3(tmp_path, args):
    assert run(tmp_path, *args) == 3


def test_bad_config_file(tmp_path):
    f = tmp_path / "cfg.json"
    f.write_text('{"system": "golden-mean", "colour": 1}')
    assert run(tmp_path, "--config", str(f)) == 3


def test_cap_exit_2(tmp_path):
    assert run(tmp_path, "--d", "30", "--enum-cap", "16", "--node-cap", "100") == 2


def test_classify_and_compare(tmp_path, capsys):
    assert run(tmp_path / "c", "--system", "full-shift-2", "--d", "4,8", sub="classify") == 0
    assert json.loads((tmp_path / "c" / "report.json").read_text())["expansive"]["verdict"]
    assert run(tmp_path / "x", "--system", "golden-mean", "--d", "4,8,12", "--folner", "10,20",
               "--no-tail", sub="compare") == 0
    assert json.loads((tmp_path / "x" / "report.json").read_text())["entropy"]["overlap"]


def test_dump_microstates(tmp_path, capsys):
    assert main(["dump-microstates", "--system", "golden-mean", "--d", "3", "--delta", "0.5"]) == 0
    assert capsys.readouterr().out.split("\n")[:4] == ["3 000", "3 001", "3 010", "3 100"]
    out = tmp_path / "ms.txt"
    assert main(["dump-microstates", "--system", "golden-mean", "--d", "3", "--delta", "0.5",
                 "--which", "all", "--dump", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 4


def test_acceptance_unknown_suite():
    assert main(["acceptance", "--only", "bogus"]) == 3


def test_acceptance_subset(tmp_path, capsys):
    assert main(["acceptance", "--only", "conventions,2", "--out", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "acceptance.json").read_text())
    assert [c["number"] for c in data["criteria"]] == [8, 2]
    assert all(c["passed"] for c in data["criteria"])
