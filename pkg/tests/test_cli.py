import json
import shutil
import subprocess

import pytest

from cocycle_twist.cli import digest, main


def run(capsys, *argv):
    code = main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_schur(capsys):
    code, rep = run(capsys, "schur", "--group", "C2^3", "--p", "2")
    assert code == 0 and rep["result"]["elementary_divisors"] == [2, 2, 2]


def test_h2_and_cocycle_round_trip(capsys, tmp_path):
    code, rep = run(capsys, "cocycle", "--group", "S4", "--m", "2")
    assert code == 0 and rep["result"]["elementary_divisors"] == [2, 2]
    path = tmp_path / "mu.json"
    code, rep = run(capsys, "spin-cocycle", "--n", "4", "--class", "1z", "--out", str(path))
    assert code == 0
    code, rep = run(capsys, "cocycle", "--check", str(path))
    assert code == 0 and rep["result"]["cocycle"] is True
    obj = json.loads(path.read_text())
    obj["exponents"][1][2] = 1 - obj["exponents"][1][2]
    path.write_text(json.dumps(obj))
    code, rep = run(capsys, "cocycle", "--check", str(path))
    assert code == 1 and rep["result"]["cocycle"] is False


def test_twist_algebra_clifford(capsys):
    code, rep = run(capsys, "twist-algebra", "--clifford", "3")
    assert code == 0 and rep["status"] == "PASS"


def test_nichols_hilbert_and_manifest(capsys, tmp_path):
    manifest = tmp_path / "run.json"
    code, rep = run(capsys, "nichols-hilbert", "--module", "X3:q1", "--max-degree", "5",
                    "--manifest", str(manifest))
    assert code == 0 and rep["result"]["ranks"] == [1, 3, 4, 3, 1, 0]
    saved = json.loads(manifest.read_text())
    assert saved["result_digest"] == digest({"command": "nichols-hilbert", "result": rep["result"]})


def test_nichols_hilbert_is_deterministic(capsys, tmp_path):
    _, a = run(capsys, "nichols-hilbert", "--module", "X3:qz", "--max-degree", "3", "--cache", str(tmp_path))
    _, b = run(capsys, "nichols-hilbert", "--module", "X3:qz", "--max-degree", "3", "--cache", str(tmp_path))
    assert a["manifest"]["result_digest"] == b["manifest"]["result_digest"]
    assert b["manifest"]["cache_hits"] == 8


def test_yd_check_with_module_file(capsys, tmp_path):
    code, rep = run(capsys, "yd-check", "--module", "X3:qz", "--dump")
    assert code == 0
    path = tmp_path / "y.json"
    path.write_text(json.dumps(rep["result"]["module_json"]))
    code, _ = run(capsys, "yd-check", "--input", str(path))
    assert code == 0


def test_relations_report_fails_on_spanning(capsys):
    code, rep = run(capsys, "relations", "--n", "3")
    assert code == 1
    assert rep["result"]["all_in_kernel"] is True


def test_dunkl_and_heisenberg(capsys):
    assert run(capsys, "dunkl", "--variant", "theta_tilde", "--n", "4", "--relation", "z_commute")[0] == 0
    assert run(capsys, "dunkl", "--variant", "theta", "--n", "3", "--relation", "anticommute")[0] == 1
    assert run(capsys, "heisenberg-check", "--module", "X3:q1", "--max-degree", "2")[0] == 0


def test_dunkl_relation_listing(capsys):
    code, rep = run(capsys, "dunkl", "--variant", "theta_tilde", "--n", "3", "--relation", "z_commute",
                    "--relation-degree", "2")
    rels = rep["result"]["theta_tilde_relations"]
    assert code == 0 and rels["counts"] == {"z=1": 7, "z=-1": 5}
    assert {"1*2": "1", "2*1": "1"} in rels["bases"]["z=-1"]


def test_cherednik(capsys):
    code, rep = run(capsys, "cherednik-check", "--n", "3", "--cocycle", "trivial", "--max-degree", "2")
    assert code == 0
    code, rep = run(capsys, "cherednik-check", "--n", "3", "--max-degree", "2")
    assert code == 1
    failing = [r["name"] for r in rep["result"]["relations"] if r["status"] == "FAIL"]
    assert all(name.startswith(("(vi)", "(b)")) for name in failing)


def test_usage_errors(capsys):
    assert main(["cherednik-check", "--t", "1"]) == 2
    assert main(["schur", "--group", "Q8", "--p", "2"]) == 2
    assert main(["cocycle", "--check", "/nonexistent.json"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["dunkl", "--variant", "beta", "--n", "3", "--relation", "commute"])
    assert exc.value.code == 2
    capsys.readouterr()


@pytest.mark.skipif(shutil.which("cocycle-twist") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["cocycle-twist", "schur", "--group", "C3^2", "--p", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "status: PASS" in proc.stdout


def test_nichols_hilbert_quadratic_cover(capsys):
    code, rep = run(capsys, "nichols-hilbert", "--module", "X3:q1", "--max-degree", "4", "--quadratic-cover")
    assert code == 0
    assert rep["result"]["quadratic_cover"] == {"dimensions": {"field": [1, 3, 4, 3, 1]}, "agrees_up_to_degree": 4}
