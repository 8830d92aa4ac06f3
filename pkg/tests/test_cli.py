import json
import subprocess
import sys

import pytest

from mocklie.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def results(out):
    return json.loads(out)["results"]


def test_check_a13(capsys):
    code, out, _ = run(capsys, "check", "A13")
    r = results(out)
    assert code == 0
    assert r["mock_lie"] and r["nil_index"] == 3 and r["center_dim"] == 1
    assert r["center_basis"] == ["c"]


def test_check_m44(capsys):
    code, out, _ = run(capsys, "check", "M44")
    r = results(out)
    assert code == 0 and r["nil_index"] == 9 and r["center_dim"] == 1


def test_check_rank_two_sample_fails(capsys):
    code, out, _ = run(capsys, "check", "rank2-dim3")
    r = results(out)
    assert code == 1 and r["mock_lie"] is False and r["jordan"] is True


@pytest.mark.parametrize("gens,caps,dim", [("a,b,c", "3,3,2", 44), ("a", "3", 2), ("a,b", "1,1", 3)])
def test_free(capsys, gens, caps, dim):
    code, out, _ = run(capsys, "free", "--gens", gens, "--caps", caps)
    assert code == 0 and results(out)["dim"] == dim


def test_free_writes_table(capsys, tmp_path):
    path = tmp_path / "m.alg"
    run(capsys, "free", "--gens", "a,b", "--caps", "1,1", "--table", str(path))
    code, out, _ = run(capsys, "check", str(path))
    assert code == 0 and results(out)["center_dim"] == 1


def test_envelope_a12(capsys):
    code, out, _ = run(capsys, "envelope", "A12", "--expect", "dim_u=3", "--expect", "special=true")
    assert code == 0
    r = results(out)
    assert r["dim_u"] == 3 and r["special"]


def test_envelope_m44(capsys):
    code, out, _ = run(capsys, "envelope", "M44")
    r = results(out)
    assert code == 0
    assert r["special"] is False and r["witnesses_central"] and r["kernel_in_L4"]
    assert r["dim_u"] == 157


def test_envelope_prime_field(capsys):
    code, out, _ = run(capsys, "envelope", "--field", "p=251", "A13")
    assert results(out)["dim_u"] == 5
    assert json.loads(out)["inputs"]["field"] == "GF(251)"


def test_envelope_budget_exit(capsys):
    code, out, _ = run(capsys, "envelope", "A12", "--maxdeg", "2")
    assert code == 3 and results(out)["complete"] is False


def test_expect_violation_exit_one(capsys):
    code, _, err = run(capsys, "envelope", "A12", "--expect", "special=false")
    assert code == 1 and "expectation failed" in err


def test_expect_met_on_negative_check(capsys):
    code, _, _ = run(capsys, "check", "rank2-dim3", "--expect", "mock_lie=false")
    assert code == 0


def test_identity_glennie_on_m44(capsys):
    code, out, _ = run(capsys, "identity", "M44", "--id", "glennie8", "--at", "generators")
    r = results(out)
    assert not r["zero"] and r["central"] and r["center_coefficient"] == "192"


def test_identity_at_labels(capsys):
    code, out, _ = run(capsys, "identity", "A13", "--id", "jacobi", "--at", "a,b,c")
    assert results(out)["zero"]


def test_identity_holds(capsys):
    assert results(run(capsys, "identity", "A13", "--id", "glennie8")[1])["holds"]
    assert results(run(capsys, "identity", "M44", "--id", "jacobi")[1])["holds"]


def test_antider_trunc_poly(capsys, tmp_path):
    path = tmp_path / "t3.alg"
    code, out, _ = run(capsys, "trunc-poly", "3", "-o", str(path))
    assert out.strip() == str(path)
    code, out, _ = run(capsys, "antider", str(path), "--module", "regular")
    assert results(out)["dim"] == 2


def test_trunc_name_shortcut(capsys):
    assert results(run(capsys, "antider", "trunc5", "--module", "regular")[1])["dim"] == 3


def test_antider_adjoint(capsys):
    r = results(run(capsys, "antider", "A12")[1])
    assert r["dim"] == 2 and r["cube_zero"] == r["extension_mock_lie"]


def test_antider_trivial(capsys):
    assert results(run(capsys, "antider", "A01", "--module", "trivial")[1])["dim"] == 1


def test_antider_module_file(capsys, tmp_path):
    f = tmp_path / "mod.json"
    f.write_text(json.dumps({"dim": 2, "rho": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}))
    r = results(run(capsys, "antider", "A12", "--module", str(f))[1])
    assert r["module_dim"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "NOPE"],
        ["envelope", "A12", "--field", "p=4"],
        ["identity", "A13", "--id", "nosuch"],
        ["identity", "A13", "--id", "jacobi", "--at", "a,b"],
        ["envelope", "A12", "--expect", "nokey=1"],
        ["trunc-poly", "1"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["free"])
    assert e.value.code == 2


def test_deterministic_reports(capsys):
    a = run(capsys, "envelope", "A12+A13", "--gb")[1]
    b = run(capsys, "envelope", "A12+A13", "--gb")[1]
    assert a == b


def test_text_format(capsys):
    out = run(capsys, "check", "A12", "--format", "text")[1]
    assert "mock_lie: true" in out


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "mocklie.cli", "check", "A12"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["results"]["mock_lie"]
