import json
import subprocess
import sys

import pytest

from cartan_toric.cli import main


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_fan_a2(capsys):
    code, out, _ = run(capsys, "fan", "--type", "A2", "--seed", "7", "--samples", "500")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1 and rep["f_vector"] == [1, 4, 4] and rep["pass"]
    assert rep["checks"]["intersection_oracle"]["status"] == "pass"


def test_fan_f4_skips_oracle(capsys):
    code, out, _ = run(capsys, "fan", "--type", "F4", "--samples", "200")
    rep = json.loads(out)
    assert code == 0
    assert rep["checks"]["intersection_oracle"]["status"] == "skipped"
    assert rep["checks"]["primitive_collections"]["status"] == "pass"


@pytest.mark.slow
def test_fan_a9_skip_notices(capsys):
    code, out, _ = run(capsys, "fan", "--type", "A9", "--samples", "200", "--format", "text")
    assert code == 0
    assert "intersection_oracle: SKIPPED" in out and "primitive_collections: SKIPPED" in out


@pytest.mark.parametrize("t,dims", [("A3", [1, 3, 3, 1]), ("B2", [1, 2, 1]), ("A1", [1, 1])])
def test_cohomology(capsys, t, dims):
    code, out, _ = run(capsys, "coh", "--type", t)
    rep = json.loads(out)
    assert code == 0 and rep["graded_dims"] == dims and rep["mn"] == [1, -1]


def test_cohomology_guard_is_reported(capsys):
    code, out, _ = run(capsys, "cohomology", "--type", "E6")
    rep = json.loads(out)
    assert code == 0 and rep["checks"]["xy_linear"]["status"] == "skipped"


def test_weyl(capsys):
    code, out, _ = run(capsys, "weyl", "--type", "B3")
    rep = json.loads(out)
    assert code == 0 and rep["checks"]["group_order"]["order"] == 48
    code, out, _ = run(capsys, "weyl", "--type", "E7")
    assert code == 0 and json.loads(out)["checks"]["group_order"]["status"] == "skipped"


def test_peterson(capsys):
    code, out, _ = run(capsys, "peterson", "--rank", "2", "--samples", "100", "--seed", "11")
    rep = json.loads(out)
    assert code == 0
    for key in ("rank", "samples", "kostant_pass", "nonvanishing_pass", "jacobian_rank", "fixed_points"):
        assert key in rep
    code, out, _ = run(capsys, "peterson", "--rank", "1")
    rep = json.loads(out)
    assert code == 0 and rep["worked_example"]["q"] == "9"


def test_peterson_guards(capsys):
    assert run(capsys, "peterson", "--rank", "5")[0] == 2
    assert run(capsys, "peterson", "--rank", "3")[0] == 2
    code, out, _ = run(capsys, "peterson", "--rank", "3", "--numeric", "--samples", "10")
    assert code == 0 and json.loads(out)["numeric"]


def test_degree_is_exploratory(capsys):
    code, out, _ = run(capsys, "degree", "--rank", "2")
    rep = json.loads(out)
    assert code == 0 and rep["checks"]["degree"]["status"] == "skipped"


def test_plot(capsys, tmp_path):
    path = tmp_path / "a2.svg"
    assert run(capsys, "plot", "--type", "A2", "--out", str(path))[0] == 0
    svg = path.read_text()
    assert svg.startswith("<svg") and svg.count("<polygon") == 4
    assert run(capsys, "plot", "--type", "A3")[0] == 2


@pytest.mark.parametrize("args", [
    ["fan", "--type", "X7"],
    ["fan"],
    ["fan", "--type", "A2", "--format", "svg"],
    ["fan", "--type", "A2", "--samples", "0"],
    ["nonsense"],
])
def test_usage_errors(capsys, args):
    assert run(capsys, *args)[0] == 2


def test_failure_exit_code(capsys, monkeypatch):
    import cartan_toric.cli as cli

    monkeypatch.setattr(cli.walls, "kleiman_ample_check",
                        lambda F: {"pass": False, "wall_positivity": True, "walls": 0, "failures": [{"J": []}]})
    code, out, _ = run(capsys, "fan", "--type", "A2", "--samples", "10")
    assert code == 1 and json.loads(out)["checks"]["kleiman"]["status"] == "fail"


def test_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["fan", "--type", "B2", "--seed", "3", "--samples", "300", "--out", str(a)])
    main(["fan", "--type", "B2", "--seed", "3", "--samples", "300", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cartan_toric.cli", "coh", "--type", "A2", "--format", "text"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "result: PASS" in r.stdout
