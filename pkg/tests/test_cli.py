import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest
from referencing import Registry, Resource

from sl2hyper.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _registry():
    registry = Registry()
    schemas = {}
    for name in ("block_report", "pim_report", "verify_summary", "eval_result"):
        text = resources.files("sl2hyper").joinpath(f"schemas/{name}.schema.json").read_text()
        schema = json.loads(text)
        schemas[name] = schema
        registry = registry.with_resource(f"{name}.schema.json", Resource.from_contents(schema))
        registry = registry.with_resource(schema["$id"], Resource.from_contents(schema))
    return schemas, registry


def validate(obj, name):
    schemas, registry = _registry()
    jsonschema.Draft202012Validator(schemas[name], registry=registry).validate(obj)


def test_eval_examples(capsys):
    code, out, err = run(capsys, "eval", "--p", "3", "X(1)*Y(1)")
    assert code == 0 and out == "Y(1)*X(1) + H(1)\n"
    assert "U_r=yes" in err and "A_r=yes" in err and "U_r^0=no" in err
    code, out, err = run(capsys, "eval", "--p", "3", "X(3)")
    assert out == "X(3)\n" and "r=2" in err and "A_r=no" in err
    code, out, _ = run(capsys, "eval", "--p", "2", "mu(1)*Y(1)*X(1)")
    assert out.strip() == "Y(1)*H(1)*X(1)"
    code, out, _ = run(capsys, "eval", "--p", "2", "B(0; 1:0)")
    assert out.strip() == "Y(1)*H(1)*X(1)"
    assert run(capsys, "eval", "--p", "7", "1")[1] == "1\n"


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--p", "3", "--r", "2", "--format", "json", "H(4)*mu(0, 2)")
    data = json.loads(out)
    validate(data, "eval_result")
    assert data["in_U0_r"] and data["in_A_r"] and data["r"] == 2


def test_eval_parse_error(capsys):
    code, _, err = run(capsys, "eval", "--p", "3", "X(1)*+Y(1)")
    assert code == 2 and "position 5" in err


def test_usage_errors():
    with pytest.raises(SystemExit) as info:
        main(["eval", "--p", "4", "1"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_blocks_text(capsys):
    code, out, _ = run(capsys, "blocks", "--p", "2", "--r", "1")
    assert code == 0
    dims = [int(line.split("dim=")[1].split()[0]) for line in out.splitlines() if line.startswith("block")]
    assert dims == [2, 1, 1]
    code, out, _ = run(capsys, "blocks", "--p", "3", "--r", "1")
    assert out.count("\nblock") + out.startswith("block") == 6 and "total dimension 9" in out


def test_blocks_json_schema(capsys):
    code, out, _ = run(capsys, "blocks", "--p", "3", "--r", "1", "--format", "json")
    data = json.loads(out)
    validate(data, "block_report")
    assert len(data) == 6 and sum(b["dim"] for b in data) == 9
    assert all(all(b["checks"].values()) for b in data)


def test_blocks_dot(capsys):
    code, out, _ = run(capsys, "blocks", "--p", "3", "--r", "2", "--format", "dot")
    assert code == 0 and out.count("digraph") == 36


def test_blocks_deterministic(capsys):
    first = run(capsys, "blocks", "--p", "2", "--r", "2", "--format", "json")[1]
    second = run(capsys, "blocks", "--p", "2", "--r", "2", "--format", "json")[1]
    assert first == second


def test_cap_refusal(capsys):
    code, _, err = run(capsys, "blocks", "--p", "17", "--r", "2")
    assert code == 3 and "83521" in err
    code, _, err = run(capsys, "verify", "--p", "5", "--r", "2", "--dim-cap", "600")
    assert code == 3 and "625" in err


def test_pim(capsys):
    code, out, _ = run(capsys, "pim", "--p", "3", "--r", "2", "--pairs", "0:0,1:2", "--eps", "00", "--format", "json")
    data = json.loads(out)
    validate(data, "pim_report")
    assert code == 0 and data["loewy"] == [1, 1] and data["socle"] == ["01"]
    code, out, _ = run(capsys, "pim", "--p", "3", "--r", "2", "--pairs", "0:2,2:2", "--eps", "11")
    assert code == 0 and "dim=1" in out
    code, _, err = run(capsys, "pim", "--p", "3", "--r", "2", "--pairs", "0:0,1:2", "--eps", "10")
    assert code == 2 and "position 0" in err
    code, _, err = run(capsys, "pim", "--p", "3", "--r", "1", "--pairs", "0:0,1:2", "--eps", "00")
    assert code == 2


def test_verify_full_and_quick(capsys):
    code, out, _ = run(capsys, "verify", "--p", "2", "--r", "2", "--level", "full", "--format", "json")
    data = json.loads(out)
    validate(data, "verify_summary")
    assert code == 0 and data["passed"]
    full_names = {c["name"] for c in data["checks"]}
    code, out, _ = run(capsys, "verify", "--p", "2", "--r", "2", "--level", "quick", "--format", "json")
    quick_names = {c["name"] for c in json.loads(out)["checks"]}
    assert code == 0 and quick_names < full_names


def test_verify_single_check_and_repro(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--r", "1", "--check", "n_tables")
    assert code == 0 and out.splitlines()[-1] == "1/1 checks passed"


def test_verify_failure_is_named(capsys, monkeypatch):
    from sl2hyper import verify

    broken = verify.Check("dimension_audit", lambda cfg: (False, "forced"), False)
    monkeypatch.setattr(verify, "CHECKS", (broken,) + verify.CHECKS[1:])
    code, out, _ = run(capsys, "verify", "--p", "2", "--r", "1", "--level", "quick")
    assert code == 1
    assert "FAIL dimension_audit" in out
    assert "reproduce: sl2hyper verify --p 2 --r 1 --level quick --seed 0 --check dimension_audit" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sl2hyper", "eval", "--p", "3", "X(1)*Y(1)"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "Y(1)*X(1) + H(1)\n"
