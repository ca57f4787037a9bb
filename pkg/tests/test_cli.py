import json
import shutil
import subprocess
import sys

import pytest

from invbundles.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,code", [
    (["chartab", "-p", "7", "--group", "psl2"], 0),
    (["tensor", "-p", "7", "-a", "V3", "-b", "V3"], 0),
    (["sympow", "-p", "7", "-r", "V3*", "-n", "4"], 0),
    (["molien", "-p", "7", "--target", "V1", "--source", "V3", "-N", "10"], 0),
    (["pic", "--signature", "2,3,7"], 0),
    (["pic", "--signature", "2,3,6"], 2),
    (["modular", "-p", "9"], 2),
    (["su2-census", "-p", "5"], 2),
    (["tensor", "-p", "7", "-a", "V5", "-b", "V3"], 2),
    (["chartab", "-p", "7", "--group", "gl2"], 2),
    (["verify-identities"], 1),
    ([], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_modular_example(capsys):
    code, out, _ = run(capsys, "modular", "-p", "7")
    data = json.loads(out)
    assert code == 0 and data["genus"] == 3 and data["deg_lambda"] == 2


def test_su2_census_has_four_items_at_11(capsys):
    code, out, _ = run(capsys, "su2-census", "-p", "11")
    assert code == 0 and len(json.loads(out)["items"]) == 4


def test_tsv_output(capsys):
    code, out, _ = run(capsys, "chartab", "-p", "7", "--format", "tsv")
    assert code == 0 and out.count("\n") > 11


def test_rank3_solve_by_index(capsys):
    code, out, _ = run(capsys, "solve", "-p", "7", "-r", "3", "-k", "3")
    data = json.loads(out)
    assert code == 0 and data["bundle"] == "V-(x)O" and data["irreducible"]
    assert run(capsys, "solve", "-p", "7", "-r", "3", "-k", "9")[0] == 2


def test_output_dir_and_manifest(capsys, output_dir):
    code, out, _ = run(capsys, "tensor", "-p", "7", "-a", "3", "-b", "3*")
    assert code == 0
    assert (output_dir / "tensor.json").read_text() == out
    manifest = json.loads((output_dir / "tensor.manifest.json").read_text())
    assert manifest["argv"] == ["tensor", "-p", "7", "-a", "3", "-b", "3*"]
    assert manifest["status"] == "ok" and "numpy" in manifest["versions"]


def test_mismatch_writes_payload_and_diff(capsys, output_dir):
    code, out, err = run(capsys, "reproduce-appendices", "-N", "20")
    assert code == 1
    data = json.loads(out)
    assert data["passed"] is False
    assert "symmetric powers table 1: PASS" in err
    assert json.loads((output_dir / "reproduce-appendices.manifest.json").read_text())["status"] == "mismatch"


def test_missing_fixtures_is_a_usage_error(capsys, tmp_path):
    assert run(capsys, "reproduce-appendices", "--fixtures", str(tmp_path))[0] == 2


def test_console_script_is_installed():
    exe = shutil.which("invbundles")
    cmd = [exe] if exe else [sys.executable, "-m", "invbundles.cli"]
    res = subprocess.run([*cmd, "pic", "--signature", "2,2,2,3"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["torsion"] == [2, 2]
