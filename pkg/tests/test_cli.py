import io
import json
import os
import subprocess
import sys

import pytest

from mfcat.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_MATH, EXIT_OK, run

from conftest import PROBLEMS


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def write(tmp_path, data, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


@pytest.mark.parametrize("command, problem", [
    ("verify", "a1.json"),
    ("stabilize", "node.json"),
    ("ext", "a1.json"),
    ("cech-ext", "cech_a2.json"),
    ("cech-ext", "a2.json"),
    ("coker", "a2.json"),
    ("dual", "fermat3.json"),
    ("tensor", "tensor.json"),
    ("hh", "fermat3.json"),
    ("hh-homology", "a1xa1.json"),
    ("hh-diagonal", "a3.json"),
    ("hh-compare", "fermat3.json"),
    ("hh-compare", "a2.json"),
    ("cy-check", "a2.json"),
    ("ext", "diagonal_a2.json"),
])
def test_commands_succeed(command, problem, tmp_path):
    report = tmp_path / "out.json"
    code, text = call(command, str(PROBLEMS / problem), "--json", str(report))
    assert code == EXIT_OK, text
    assert "elapsed_s" in text
    doc = json.loads(report.read_text())
    assert doc["command"] == command and doc["status"] == "ok"


def test_ext_payload(tmp_path):
    report = tmp_path / "out.json"
    call("ext", str(PROBLEMS / "a1.json"), "--json", str(report))
    assert json.loads(report.read_text())["payload"]["dims"] == [1, 1]


def test_hh_compare_payload(tmp_path):
    report = tmp_path / "out.json"
    call("hh-compare", str(PROBLEMS / "fermat3.json"), "--json", str(report))
    payload = json.loads(report.read_text())["payload"]
    assert payload["polyvector"] == payload["diagonal"] == [4, 0]
    assert payload["mu"] == 4 and payload["pass"] is True
    assert "timings" not in payload and "_timings" not in payload


def test_curvature_failure(tmp_path):
    report = tmp_path / "out.json"
    code, text = call("verify", str(PROBLEMS / "bad.json"), "--json", str(report))
    assert code == EXIT_MATH
    payload = json.loads(report.read_text())["payload"]
    assert payload["entry"] == [0, 0]
    assert payload["expected"] == "x^2"
    assert payload["found"] == "x^2 + x"


def test_missing_file():
    code, text = call("ext", "/nonexistent/problem.json")
    assert code == EXIT_INPUT


@pytest.mark.parametrize("data, path", [
    ({"ring": {"vars": ["x"]}, "W": [1]}, "$.W"),
    ({"ring": {"vars": ["1x"]}, "W": "x"}, "$.ring.vars[0]"),
    ({"ring": {"vars": ["x"]}, "W": "x^2", "objects": {"m": {"p1": [["x +"]], "p0": [["x"]]}}},
     "$.objects.m.p1[0][0]"),
    ({"ring": {"vars": ["x"]}, "W": "x^2", "objects": {"m": {"p1": [["x", "1"]], "p0": [["x"]]}}},
     "$.objects.m"),
    ({"ring": {"vars": ["x"], "order": "lexx"}, "W": "x^2"}, "$.ring.order"),
    ({"ring": {"vars": ["x"]}, "W": "x^2", "extra": 1}, "$"),
])
def test_schema_errors_report_json_path(data, path, tmp_path):
    report = tmp_path / "out.json"
    code, text = call("hh", write(tmp_path, data), "--json", str(report))
    assert code == EXIT_INPUT
    error = json.loads(report.read_text())["payload"]["error"]
    assert error.startswith(path + ":") or error.startswith(path + " ")


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    code, _ = call("hh", str(path))
    assert code == EXIT_INPUT


def test_unknown_object(tmp_path):
    data = {"ring": {"vars": ["x"]}, "W": "x^2", "objects": {"k": {"koszul_stab": True}},
            "task_args": {"source": "nope"}}
    code, text = call("ext", write(tmp_path, data))
    assert code == EXIT_INPUT
    assert "$.task_args.source" in text


def test_budget_exceeded():
    code, text = call("hh-compare", str(PROBLEMS / "fermat3.json"), "--budget", "1")
    assert code == EXIT_BUDGET
    assert "budget-exceeded" in text


def test_stabilize_lift_failure(tmp_path):
    data = {"ring": {"vars": ["x"]}, "W": "x^3", "task_args": {"q1": [["x + 1"]]}}
    code, _ = call("stabilize", write(tmp_path, data))
    assert code == EXIT_MATH


def test_json_report_is_byte_identical(tmp_path):
    paths = []
    for k, seed in enumerate(["0", "1", "12345"]):
        out = tmp_path / f"r{k}.json"
        env = dict(os.environ, PYTHONHASHSEED=seed)
        subprocess.run([sys.executable, "-m", "mfcat.cli", "hh-compare", str(PROBLEMS / "a2.json"),
                        "--json", str(out)], check=True, env=env, capture_output=True)
        paths.append(out.read_bytes())
    assert paths[0] == paths[1] == paths[2]
