import json
import shutil
import subprocess
import sys

import pytest

from heckecm.cli import Config, main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_galois_reflex(capsys):
    status, out, _ = run(capsys, "galois", "reflex", "--setting", "zeta5", "--type", "e1,e2")
    data = json.loads(out)
    assert status == 0
    assert data["reflex_field"] == "Q(zeta5)" and data["reflex_type"] == ["e1", "e3"]


def test_galois_sign(capsys):
    status, out, _ = run(capsys, "galois", "sign", "--setting", "zeta5", "--type", "e1,e2", "--tau", "s", "--eta", "1")
    assert status == 0 and json.loads(out)["epsilon"] == -1


def test_galois_critical(capsys):
    status, out, _ = run(capsys, "galois", "critical", "--setting", "C2", "--mu", "2c-3")
    data = json.loads(out)
    assert (data["alpha"], data["beta"], data["w"], data["xi"]) == ("3", "2c", -1, "5")


def test_galois_demo_runs_on_every_builtin(capsys):
    for name in ("C2", "zeta5", "C2xC2", "S3"):
        status, out, _ = run(capsys, "galois", "demo", "--setting", name)
        assert status == 0 and json.loads(out)


def test_setting_file_errors_report_position(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("order=2 conj=1\n0 1\n1 q\n")
    status, _, err = run(capsys, "galois", "demo", "--setting", str(bad))
    data = json.loads(err)
    assert status == 2 and data["line"] == 3 and data["column"] == 3


def test_ek_value(capsys):
    status, out, _ = run(capsys, "ek", "--b", "0", "--a", "4", "--lattice", "Z[i]", "--gamma", "4", "--s", "0", "--prec", "128")
    data = json.loads(out)
    assert status == 0
    assert data["value"]["re"].startswith("0.787803000538474384554")
    assert isinstance(data["error_bound"], str)


def test_ek_boundary_error(capsys):
    status, _, err = run(capsys, "ek", "--b", "1", "--a", "3", "--lattice", "Z[i]", "--direct", "100")
    assert status == 3 and json.loads(err)["error"] == "outside_convergence_region"


def test_lvalue_single_class(capsys):
    status, out, _ = run(capsys, "lvalue", "--char", "hecke field=Q(i) f=(1+i)^3 a=4 b=0", "--s", "0", "--prec", "128")
    data = json.loads(out)
    assert status == 0 and list(data["partials"]) == ["()"]
    assert data["total"] == data["partials"]["()"]


def test_period_report_keys(capsys):
    status, out, _ = run(capsys, "period", "--field", "Q(i)", "--prec", "128")
    data = json.loads(out)
    assert status == 0
    assert {"g2", "g3", "j", "omega", "normalization"} <= set(data)
    assert data["normalization"] == "j1728"


def test_verify_report(capsys, tmp_path):
    path = tmp_path / "r.json"
    status, out, _ = run(capsys, "verify", "--char", "hecke field=Q(i) f=(1+i)^3 a=4 b=0", "--prec", "256", "--json", str(path))
    data = json.loads(out)
    assert status == 0 and data["recognized"] and data["polynomial"] == [48, -1]
    assert json.loads(path.read_text()) == data


def test_outputs_are_byte_identical(capsys):
    argv = ("lvalue", "--char", "hecke field=Q(i) f=(3) a=4 b=0 twist=1", "--prec", "96")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_parse_error_exit_code(capsys):
    status, _, err = run(capsys, "lvalue", "--char", "hecke field=Q(i) f=(3) a=x b=0")
    data = json.loads(err)
    assert status == 2 and data["column"] == 26


def test_precision_range():
    with pytest.raises(ValueError):
        Config(prec=32)
    with pytest.raises(ValueError):
        Config(prec=5000)
    assert Config().prec == 192


def test_selftest_golden_filter(capsys):
    status, out, err = run(capsys, "selftest", "--filter", "golden")
    data = json.loads(out)
    assert status == 0 and data["passed"]
    assert all(c["name"].startswith("golden ") for c in data["checks"])
    assert data["n_checks"] >= 13


def test_selftest_corrupted_golden_names_the_check(capsys, tmp_path, repo_root):
    gdir = tmp_path / "golden"
    shutil.copytree(repo_root / "golden", gdir)
    path = gdir / "period_Qi.json"
    data = json.loads(path.read_text())
    data["value"]["re"] = "2.7"
    path.write_text(json.dumps(data))
    status, out, err = run(capsys, "selftest", "--filter", "golden", "--golden-dir", str(gdir))
    assert status == 1
    assert "FAIL golden period_Qi" in err
    failed = [c["name"] for c in json.loads(out)["checks"] if not c["passed"]]
    assert failed == ["golden period_Qi"]


def test_selftest_unreadable_golden(capsys, tmp_path):
    (tmp_path / "broken.json").write_text("{not json")
    status, _, err = run(capsys, "selftest", "--filter", "golden", "--golden-dir", str(tmp_path))
    assert status == 1 and "FAIL golden broken" in err


def test_selftest_module_filter(capsys):
    status, out, _ = run(capsys, "selftest", "--filter", "eklattice")
    data = json.loads(out)
    names = [c["name"] for c in data["checks"]]
    assert names and all(n.startswith(("4 ", "5 ", "golden ek_")) for n in names), names
    assert status == 0


def test_console_script_and_module_entry_points():
    proc = subprocess.run([sys.executable, "-m", "heckecm", "galois", "sign", "--setting", "C2", "--type", "1"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and json.loads(proc.stdout)["epsilon"] == 1
    exe = shutil.which("heckecm")
    if exe:
        proc = subprocess.run([exe, "period", "--field", "Q(sqrt-3)", "--prec", "64"], capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0 and json.loads(proc.stdout)["normalization"] == "j0"
