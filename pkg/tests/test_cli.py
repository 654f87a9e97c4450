from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qmf.cli import main
from qmf.eisenstein import eisenstein
from qmf.jsonio import digest


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_basis_weight_4(capsys):
    code, out, _ = run(capsys, "basis", "--weight", "4", "--prec", "4")
    obj = json.loads(out)
    assert code == 0 and obj["weight"] == 4
    assert [e["coeffs"] for e in obj["elements"]][1] == ["0", "1", "6", "12"]


def test_basis_weight_4_cli_example(capsys):
    # stated CLI example: an element with coefficients [0, -24, ...]
    code, out, _ = run(capsys, "basis", "--weight", "4", "--prec", "4")
    coeffs = [e["coeffs"] for e in json.loads(out)["elements"]]
    assert any(c[:2] == ["0", "-24"] for c in coeffs)


def test_basis_csv(capsys):
    code, out, _ = run(capsys, "basis", "--weight", "2", "--prec", "3", "--csv")
    assert out.splitlines() == ["n,f0", "0,1", "1,-24", "2,-72"]


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--weight", "4", "--rows", "2")
    obj = json.loads(out)
    assert obj["verdict"] == "FULL_RANK" and obj["primes_used"] == [11]


def test_bound_weight_20(capsys):
    code, out, _ = run(capsys, "bound", "--weight", "20", "--mode", "z")
    obj = json.loads(out)
    assert int(obj["final_bound"]) <= 19190 and obj["theorem_bound"] == 19190


def test_bound_trace_to_stderr(capsys):
    code, out, err = run(capsys, "bound", "--weight", "20", "--mode", "q", "--trace")
    assert code == 0 and err.count("step") == len(json.loads(out)["steps"])


def test_bound_small_k_reports_theorem_only(capsys):
    code, out, _ = run(capsys, "bound", "--weight", "8")
    obj = json.loads(out)
    assert obj["steps"] == [] and obj["final_bound"] == obj["theorem_bound"] == 120


def test_primes(capsys):
    code, out, _ = run(capsys, "primes", "--nth", "5")
    obj = json.loads(out)
    assert obj["p"] == 11 and obj["rosser_holds"] and obj["bertrand_holds"]


def test_sturm(capsys):
    code, out, _ = run(capsys, "sturm", "--weight", "6", "--modulus", "12", "--conjectural")
    obj = json.loads(out)
    assert (obj["optimal_bound"], obj["required_prec"], obj["mod_bound"]) == (3, 3, 3)


def test_conjecture_table(capsys):
    code, out, _ = run(capsys, "conjecture", "--max-k", "6", "--csv")
    assert code == 0 and "3,3,3,true" in out.splitlines()


def test_conjecture_json(capsys):
    code, out, _ = run(capsys, "conjecture", "--max-k", "3")
    assert json.loads(out)["all_match"] is True


def _write(tmp_path, name, series):
    p = tmp_path / name
    p.write_text(json.dumps(series.to_json()))
    return str(p)


def test_congruence_and_decompose(capsys, tmp_path):
    e2, e4 = eisenstein(2, 12), eisenstein(4, 12)
    a, b = _write(tmp_path, "a.json", e2 * e2), _write(tmp_path, "b.json", e4)
    code, out, _ = run(capsys, "congruence", a, b, "--modulus", "12", "--weight", "4")
    assert code == 0 and json.loads(out)["congruent"] is True
    code, out, _ = run(capsys, "decompose", a, "--weight", "4")
    assert json.loads(out)["coefficients"] == [["2,0,0", "1/1"], ["0,1,0", "0/1"]]


def test_domain_error_exit_code(capsys, tmp_path):
    a = _write(tmp_path, "a.json", eisenstein(4, 10))
    code, out, err = run(capsys, "decompose", a, "--weight", "6")
    assert code == 1 and out == "" and err.startswith("error: NotInSpace")
    assert len(err.splitlines()) == 1


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["basis", "--weight", "5"])
    assert info.value.code == 2


def test_manifest(capsys, tmp_path):
    path = tmp_path / "m.json"
    code, out, _ = run(capsys, "primes", "--nth", "10", "--manifest", str(path))
    man = json.loads(path.read_text())
    assert man["command"] == "primes" and man["output_digest"] == digest(out)
    assert man["parameters"]["nth"] == 10 and "tool_version" in man


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "certify", "--weight", "8", "--rows", "6")[1] for _ in range(2)}
    assert len(outs) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qmf", "primes", "--nth", "3"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["p"] == 5
