import json
import subprocess
import sys

import pytest

from nichols.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_PARSE, InputError, example_names, main, parse_input

A2 = '{"theta": 2, "N": 5, "exps": [[1, 4], [0, 1]]}'
A2_4 = '{"N": 4, "exps": [[1, 3], [0, 1]]}'


def run(monkeypatch, capsys, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", _Stdin(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class _Stdin:
    def __init__(self, text):
        self.text = text

    def read(self):
        return self.text


def test_cartan_json(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["cartan", "--json"], A2)
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["cartan"] == [[2, -1], [-1, 2]]
    assert rep["cartan_vertex"] == [True, True]


def test_rank_one_cartan(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["cartan", "--json"], '{"N": 2, "exps": [[1]]}')
    assert code == EXIT_OK
    assert json.loads(out)["cartan"] == [[2]]


@pytest.mark.parametrize("text", ["{bad", "[]", '{"N": 5}', '{"N": 0, "exps": [[1]]}', '{"N": 5, "exps": [[1, 2]]}'])
def test_unreadable_input(monkeypatch, capsys, text):
    code, _, err = run(monkeypatch, capsys, ["roots"], text)
    assert code == EXIT_PARSE
    assert err.startswith("error:")


def test_missing_file(monkeypatch, capsys):
    code, _, err = run(monkeypatch, capsys, ["cartan", "/nonexistent/input.json"])
    assert code == EXIT_PARSE
    assert "cannot read" in err


def test_not_finite(monkeypatch, capsys):
    code, _, err = run(monkeypatch, capsys, ["roots"], '{"N": 13, "exps": [[1, 10], [0, 1]]}')
    assert code == EXIT_CAP
    assert "infinite or too large" in err
    code, _, _ = run(monkeypatch, capsys, ["cartan"], '{"N": 24, "exps": [[1, 3], [0, 1]]}')
    assert code == EXIT_CAP


def test_roots(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["roots", "--json"], A2)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert [r["root"] for r in rep["roots"]] == [[1, 0], [0, 1], [1, 1]]
    assert all(r["N"] == 5 and r["q"]["order"] == 5 for r in rep["roots"])


def test_verify_a2(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["verify", "--max-degree", "6", "--json"], A2_4)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["passed"]
    assert [c["status"] for c in rep["checks"]] == ["PASS"] * 4


def test_verify_failure_exit_code(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["verify", "--example", "high_power", "--max-degree", "4"])
    assert code == EXIT_FAIL
    assert "FAIL  relations in radical" in out
    assert "HighPower [1, 2]" in out


def test_hilbert_minus_one_plane(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["hilbert", "--example", "minus_one_plane", "--max-degree", "6", "--json"])
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["by_total_degree"] == [1, 2, 2, 2, 1, 0, 0]
    assert rep["all_match"]


def test_relations_report(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["relations", "--example", "minus_one_plane", "--json"])
    rep = json.loads(out)
    assert code == EXIT_OK
    assert [r["family"] for r in rep["relations"]] == ["SimplePower", "SimplePower", "MinusOneSquare"]
    assert all(r["in_radical"] for r in rep["relations"])
    code, out, _ = run(monkeypatch, capsys, ["relations", "--example", "minus_one_plane", "--no-check"])
    assert "unchecked" in out


def test_json_output_is_deterministic(monkeypatch, capsys):
    first = run(monkeypatch, capsys, ["roots", "--example", "cartan_g2", "--json"])[1]
    second = run(monkeypatch, capsys, ["roots", "--example", "cartan_g2", "--json"])[1]
    assert first == second


def test_degree_cap(monkeypatch, capsys):
    code, _, err = run(monkeypatch, capsys, ["hilbert", "--example", "cartan_a2", "--max-degree", "40"])
    assert code == EXIT_CAP and "cap" in err
    monkeypatch.setenv("NICHOLS_MAX_DEGREE", "3")
    code, out, _ = run(monkeypatch, capsys, ["hilbert", "--example", "cartan_a2", "--json"])
    assert code == EXIT_OK
    assert json.loads(out)["max_degree"] == 3
    code, _, _ = run(monkeypatch, capsys, ["hilbert", "--example", "cartan_a2", "--max-degree", "4"])
    assert code == EXIT_CAP
    monkeypatch.setenv("NICHOLS_MAX_DEGREE", "many")
    code, _, err = run(monkeypatch, capsys, ["cartan", "--example", "cartan_a2"])
    assert code == EXIT_PARSE and "NICHOLS_MAX_DEGREE" in err


def test_input_caps_are_read():
    spec = parse_input('{"N": 5, "exps": [[1, 4], [0, 1]], "caps": {"max_degree": 5, "max_objects": 9}}')
    assert spec.max_degree == 5 and spec.max_objects == 9
    with pytest.raises(InputError):
        parse_input('{"N": 5, "exps": [[1, 4], [0, 1]], "caps": {"max_degree": -1}}')


def test_examples(monkeypatch, capsys):
    names = example_names()
    assert len(names) >= 12
    code, out, _ = run(monkeypatch, capsys, ["--list-examples"])
    assert code == EXIT_OK and out.split() == names
    code, _, err = run(monkeypatch, capsys, ["cartan", "--example", "no_such_example"])
    assert code == EXIT_PARSE


def test_console_script_round_trip(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(A2)
    proc = subprocess.run(
        [sys.executable, "-m", "nichols", "cartan", str(path)], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "Cartan matrix" in proc.stdout
