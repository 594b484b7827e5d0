import json

import pytest

from pigames.cli import main
from pigames.instances import EX1, EX1_PRIME
from pigames.model import game_to_dict, read_game, read_situation, situation_to_dict
from pigames.solver import build_game


@pytest.fixture
def ex1(tmp_path):
    path = tmp_path / "ex1.json"
    path.write_text(json.dumps(situation_to_dict(EX1)))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_owen(capsys, ex1):
    code, out, _ = run(capsys, "owen", ex1)
    assert code == 0 and out.strip() == "P1: 1, P2: 2"
    code, out, _ = run(capsys, "owen", ex1, "--json")
    assert json.loads(out) == {"players": ["P1", "P2"], "owen": ["1", "2"]}


def test_game(capsys, ex1):
    code, out, _ = run(capsys, "game", ex1)
    assert [line.split()[-1] for line in out.splitlines()] == ["2", "2", "3"]
    code, out, _ = run(capsys, "game", ex1, "--json")
    assert json.loads(out) == game_to_dict(build_game(EX1))


def test_solve(capsys, ex1):
    code, out, _ = run(capsys, "solve", ex1, "--coalition", "1", "--json")
    data = json.loads(out)
    assert data["value"] == "2" and data["dual"] == ["2", "1"]
    assert data["plan"]["production"] == [1, 0] and data["plan"]["cost"] == "2"
    code, out, _ = run(capsys, "solve", ex1)
    assert "c(S) = 3" in out


def test_core(capsys, ex1):
    assert run(capsys, "core", ex1, "--alloc", "1,2")[0] == 0
    code, out, _ = run(capsys, "core", ex1, "--alloc", "0,3")
    assert code == 1 and "{P2}" in out
    code, out, _ = run(capsys, "core", ex1, "--alloc", "3/2,3/2", "--json")
    assert code == 0 and json.loads(out)["in_core"] is True
    assert run(capsys, "core", ex1, "--alloc", "1")[0] == 2


def test_pmas_and_essential(capsys, ex1):
    code, out, _ = run(capsys, "pmas", ex1, "--json")
    data = json.loads(out)
    assert code == 0 and data["valid"] and data["scheme"]["1,2"] == ["1", "2"]
    code, out, _ = run(capsys, "essential", ex1, "--json")
    assert json.loads(out) == {"essential": ["P2"], "witness_periods": {"P2": 1}, "core_is_owen_point": False}


def test_verify(capsys, ex1):
    code, out, _ = run(capsys, "verify", ex1)
    assert code == 0 and out.strip() == "3/3 coalitions: closed-form = oracle = LP"
    code, out, _ = run(capsys, "verify", ex1, "--max-oracle-units", "1")
    assert code == 0 and "beyond the oracle guard" in out


def test_combine(capsys, ex1, tmp_path):
    out_path = tmp_path / "sum.json"
    code, out, _ = run(capsys, "combine", ex1, ex1, "-o", str(out_path))
    assert code == 0 and "yes" in out
    game = build_game(read_situation(out_path))
    assert [game(S) for S in (1, 2, 3)] == [4, 4, 6]


def test_from_veto(capsys, tmp_path):
    path = tmp_path / "veto.json"
    path.write_text(json.dumps({"players": ["a", "b"], "values": {"1": 1, "2": 0, "1,2": 1}}))
    out_path = tmp_path / "veto_sit.json"
    code, out, _ = run(capsys, "from-veto", str(path), "-o", str(out_path))
    assert code == 0 and "yes" in out
    assert build_game(read_situation(out_path)) == read_game(path)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"players": ["a", "b"], "values": {"1": 2, "2": 2, "1,2": 3}}))
    code, _, err = run(capsys, "from-veto", str(bad), "-o", str(out_path))
    assert code == 2 and "not simple" in err


def test_axioms(capsys, ex1):
    code, out, _ = run(capsys, "axioms", ex1)
    assert code == 0 and "overall: PASS" in out
    code, out, _ = run(capsys, "axioms", ex1, "--rule", "zero", "--json")
    data = json.loads(out)
    assert code == 0 and data["situation"]["zero"]["EF"]["passed"] is False
    assert run(capsys, "axioms", ex1, "--rule", "nope")[0] == 2


def test_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({**situation_to_dict(EX1), "demand": [[-1, 0], [0, 2]]}))
    code, _, err = run(capsys, "owen", str(bad))
    assert code == 2 and "negative demand" in err
    assert run(capsys, "owen", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_output_is_deterministic(capsys, ex1):
    first = run(capsys, "axioms", ex1, "--json", "--seed", "3")[1]
    second = run(capsys, "axioms", ex1, "--json", "--seed", "3")[1]
    assert first == second


def test_example_prime_owen(capsys, tmp_path):
    path = tmp_path / "ex1p.json"
    path.write_text(json.dumps(situation_to_dict(EX1_PRIME)))
    assert run(capsys, "owen", str(path))[1].strip() == "P1: 2, P2: 1"


def test_truncation_warning_goes_to_stderr(capsys, tmp_path):
    raw = situation_to_dict(EX1)
    raw["holding"] = [[1, 0], [2, 0]]
    path = tmp_path / "full.json"
    path.write_text(json.dumps(raw))
    code, out, err = run(capsys, "owen", str(path))
    assert code == 0 and "warning" in err and out.strip() == "P1: 1, P2: 2"
