import json
import subprocess
import sys

import pytest

from boundgen.cli import COMMANDS, run


def mat(rows):
    return {"n": len(rows), "entries": rows}


CASE2 = {
    "matrices": {"gamma": mat([[5, 0], [0, "1/5"]]), "u": mat([[1, 1], [0, 1]]), "d": mat([[2, 0], [0, "1/2"]])},
    "params": {"gamma": "gamma", "gens": ["u", "d"], "range": 15, "box": 40},
}
NEGATIVE = {
    "matrices": {"gamma": mat([[4, 0], [0, "1/4"]]), "d": mat([[2, 0], [0, "1/2"]])},
    "params": {"gamma": "gamma", "gens": ["d"], "range": 10, "box": 40},
}


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_example(capsys):
    spec = {"matrices": {"g": mat([[2, 0], [0, 3]])}}
    code, out, _ = call(capsys, "analyze", json.dumps(spec))
    assert code == 0
    res = json.loads(out)["result"]
    assert res["semisimple"] is True and res["minpoly"] == [6, -5, 1]


def test_pipeline_exit_codes(capsys):
    code, out, _ = call(capsys, "pipeline", json.dumps(CASE2))
    assert code == 0
    assert json.loads(out)["result"]["conclusion"] == "consistent-with-finiteness"
    code, out, _ = call(capsys, "pipeline", json.dumps(NEGATIVE))
    assert code == 2
    assert json.loads(out)["result"]["conclusion"] == "hypothesis-violated"


def test_errors_are_machine_readable(capsys):
    code, out, err = call(capsys, "analyze", "{bad")
    assert code == 1 and out == ""
    assert json.loads(err)["code"] == "parse"
    spec = {"matrices": {"g": mat([[0, -1], [1, 0]]), "u": mat([[1, 1], [0, 1]])},
            "params": {"gamma": "g", "gens": ["u"]}}
    code, _, err = call(capsys, "pipeline", json.dumps(spec))
    assert code == 1 and json.loads(err)["code"] == "NotSplit"
    code, _, err = call(capsys, "pipeline", json.dumps({"matrices": {}, "params": {"gamma": "nope", "gens": []}}))
    assert code == 1 and json.loads(err)["code"] == "parse"


@pytest.mark.parametrize("command,spec", [
    ("pipeline", NEGATIVE),
    ("membership", {"matrices": {"g": mat([[4, 0], [0, "1/4"]]), "d": mat([[2, 0], [0, "1/2"]])},
                    "params": {"gamma": "g", "gens": ["d"], "range": 3, "box": 8}}),
    ("relations", {"params": {"elements": ["2", "3", "12"], "box": 4}}),
    ("independent", {"params": {"lambda": "6", "elements": ["2", "3"], "box": 4}}),
    ("laurent", {"params": {"f": {"vars": ["x", "x1"], "expr": "x - x1"}, "mu": "2", "mu_list": ["4"],
                            "range": 6, "box": 6}}),
    ("solvable", {"matrices": {"a": mat([[1, 2], [0, 1]]), "b": mat([[1, 0], [2, 1]])},
                  "params": {"ell": 2, "depth": 3, "budget": 500, "seed": 0}}),
])
def test_verify_roundtrip(capsys, tmp_path, command, spec):
    code, out, _ = call(capsys, command, json.dumps(spec))
    assert code in (0, 2)
    path = tmp_path / "report.json"
    path.write_text(out, encoding="utf-8")
    code, vout, _ = call(capsys, "--verify", str(path))
    assert code == 0
    assert json.loads(vout)["verified"] is True


def test_verify_rejects_tampered_report(capsys, tmp_path):
    code, out, _ = call(capsys, "pipeline", json.dumps(NEGATIVE))
    report = json.loads(out)
    report["result"]["independence"]["witness"] = [1, 5]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(report), encoding="utf-8")
    code, vout, _ = call(capsys, "--verify", str(path))
    assert code == 1 and json.loads(vout)["verified"] is False


def test_determinism_and_flags(capsys, tmp_path):
    spec = {"matrices": {"a": mat([[1, 2], [0, 1]]), "b": mat([[1, 0], [2, 1]])},
            "params": {"ell": 2, "depth": 2, "budget": 100}}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(spec), encoding="utf-8")
    outs = [call(capsys, "solvable", "--input", str(path), "--seed", "7")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["params"]["seed"] == 7


def test_every_command_runs(capsys):
    specs = {
        "analyze": {"matrices": {"g": mat([[2, 1], [0, 2]])}},
        "decompose": {"matrices": {"g": mat([[2, 1], [0, 2]])}},
        "relations": {"params": {"elements": ["2", "4"]}},
        "independent": {"params": {"lambda": "5", "elements": ["2", "3"]}},
        "resultant": {"params": {"q": {"vars": ["x", "z"], "expr": "x - z"},
                                 "p": {"vars": ["x", "z"], "expr": "z**2 - 2"}}},
        "membership": NEGATIVE | {"params": {"gamma": "gamma", "gens": ["d"], "range": 2, "box": 5}},
        "laurent": {"params": {"f": {"vars": ["x", "x1"], "expr": "x - x1"}, "mu": "2", "mu_list": ["3"]}},
        "pipeline": CASE2,
        "specialize": {"params": {"variables": ["y"], "rat_matrices": [[[1, "y"], [0, 1]], [[1, 0], ["y", 1]]],
                                  "witness_entry": "y"}},
        "solvable": {"matrices": {"g": mat([[2, 1], [0, 1]])}, "params": {"budget": 10}},
        "hunt": {"matrices": {"a": mat([[2, 0], [0, "1/2"]]), "b": mat([[3, 0], [0, "1/3"]])},
                 "params": {"gens": ["a"], "opponents": ["b"], "word_budget": 5}},
        "genericity": {"matrices": {"g": mat([[0, 0, 1], [1, 0, 1], [0, 1, 0]])}, "params": {"primes": [2, 5]}},
    }
    assert set(specs) == set(COMMANDS)
    for command, spec in specs.items():
        code, out, err = call(capsys, command, json.dumps(spec))
        assert code == 0, (command, err)
        assert json.loads(out)["command"] == command
    res = json.loads(call(capsys, "genericity", json.dumps(specs["genericity"]))[1])["result"]
    assert res["verdict"] == "weyl-contained-confirmed"


def test_console_entry_point():
    spec = json.dumps({"matrices": {"g": mat([[2, 0], [0, 3]])}})
    proc = subprocess.run([sys.executable, "-m", "boundgen.cli", "analyze", spec], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["minpoly"] == [6, -5, 1]
