import csv
import json
import shutil
import subprocess
from pathlib import Path

import pytest

from circumnav.cli import main

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def write_config(tmp_path, name="cfg.json", **overrides):
    cfg = json.loads((CONFIGS / "reference_single_entry.json").read_text())
    cfg["integration"]["t_final"] = 8.0
    for key, value in overrides.items():
        if isinstance(value, dict):
            cfg[key].update(value)
        else:
            cfg[key] = value
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


@pytest.fixture
def run_dir(tmp_path):
    out = tmp_path / "run"
    assert main(["simulate", "--config", str(write_config(tmp_path)), "--out", str(out)]) == 0
    return out


def test_design(tmp_path, capsys):
    assert main(["design", "--config", str(write_config(tmp_path))]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["design"]["k"] == pytest.approx(1.4003, abs=5e-5)
    assert d["design"]["kappa_threshold"] == pytest.approx(0.0433, abs=5e-5)
    assert d["design"]["single_entry_predicted"] is True
    assert d["drive"]["omega_bound_feasible"] is True


def test_simulate_outputs(run_dir):
    summary = json.loads((run_dir / "summary.json").read_text())
    assert set(summary) == {"config", "design", "drive", "summary", "invariants"}
    assert summary["invariants"]["passed"] is True
    header = (run_dir / "trajectory.csv").read_text().splitlines()[0]
    assert header == "t,x,y,psi,r,theta,omega,eta,W,inside_Ca"


def test_simulate_is_byte_identical(tmp_path, run_dir):
    again = tmp_path / "again"
    main(["simulate", "--config", str(write_config(tmp_path)), "--out", str(again)])
    for name in ("trajectory.csv", "summary.json"):
        assert (run_dir / name).read_bytes() == (again / name).read_bytes()


def test_verify_reproduces_audit(run_dir, capsys):
    assert main(["verify", str(run_dir)]) == 0
    report = json.loads(capsys.readouterr().out)
    stored = json.loads((run_dir / "summary.json").read_text())["invariants"]
    assert report == stored
    assert main(["verify", "--out", str(run_dir / "trajectory.csv")]) == 0


def test_verify_flags_tampered_trajectory(run_dir):
    path = run_dir / "trajectory.csv"
    lines = path.read_text().splitlines()
    row = lines[-1].split(",")
    row[4] = "0.35"  # range inside the safety circle
    lines[-1] = ",".join(row)
    path.write_text("\n".join(lines) + "\n")
    assert main(["verify", str(run_dir)]) == 4


@pytest.mark.parametrize(
    "mangle",
    [
        lambda text: text[: len(text) // 2],  # cut mid-row
        lambda text: text.replace("t,x,y", "time,x,y", 1),
        lambda text: text.replace("\n0.01,", "\nabc,", 1),
        lambda text: text.splitlines()[0] + "\n",
    ],
    ids=["truncated", "bad-header", "non-numeric", "no-rows"],
)
def test_verify_rejects_malformed_csv(run_dir, mangle):
    path = run_dir / "trajectory.csv"
    path.write_text(mangle(path.read_text()))
    assert main(["verify", str(run_dir)]) == 6


def test_verify_without_summary_needs_config(tmp_path, run_dir):
    lone = tmp_path / "lone"
    lone.mkdir()
    shutil.copy(run_dir / "trajectory.csv", lone)
    assert main(["verify", str(lone)]) == 6
    assert main(["verify", str(lone), "--config", str(write_config(tmp_path))]) == 0


@pytest.mark.parametrize(
    "overrides, code",
    [
        ({"radii": {"r_s": 0.2}}, 2),
        ({"radii": {"r_s": 0.5}}, 2),
        ({"gains": {"delta": 0.6}}, 3),
        ({"initial": {"theta0_deg": 5.0}}, 7),
        ({"initial": {"theta0_deg": 5.0}, "allow_outside_theta": True}, 5),
        ({"bogus": 1}, 6),
        ({"controller_mode": "pid"}, 6),
    ],
)
def test_exit_codes(tmp_path, overrides, code, capsys):
    cfg = write_config(tmp_path, **overrides)
    assert main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "o")]) == code
    assert capsys.readouterr().err.startswith("circumnav:")


def test_unreadable_config(tmp_path):
    assert main(["design", "--config", str(tmp_path / "missing.json")]) == 6
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["design", "--config", str(bad)]) == 6


def test_invariant_failure_exit_code(tmp_path):
    out = tmp_path / "base"
    code = main(["simulate", "--config", str(CONFIGS / "baseline_unsafe.json"), "--out", str(out)])
    assert code == 4
    inv = json.loads((out / "summary.json").read_text())["invariants"]
    assert {c["name"]: c["status"] for c in inv["checks"]}["safety"] == "fail"


def test_sweep(tmp_path):
    out = tmp_path / "sw"
    cfg = write_config(tmp_path)
    code = main(["sweep", "--config", str(cfg), "--sweep-param", "kappa", "--sweep-values", "0.05,0.1,-1", "--out", str(out)])
    assert code == 0
    with open(out / "sweep.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert [r["kappa"] for r in rows] == ["0.05", "0.1", "-1"]
    assert rows[0]["error"] == "" and int(rows[0]["entry_count"]) >= 0
    assert rows[2]["error"].startswith("ValueError") and rows[2]["min_range"] == ""


def test_sweep_bearing(tmp_path, capsys):
    cfg = write_config(tmp_path)
    assert main(["sweep", "--config", str(cfg), "--sweep-param", "theta0_deg", "--sweep-values", "60,5"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert rows[0]["error"] == ""
    assert rows[1]["error"].startswith("InitialConditionError")


def test_sweep_needs_values(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["sweep", "--config", str(write_config(tmp_path)), "--sweep-param", "kappa", "--sweep-values", ","])
    assert info.value.code == 2


def test_console_script(tmp_path):
    exe = shutil.which("circumnav")
    if exe is None:
        pytest.skip("console script not installed")
    res = subprocess.run([exe, "design", "--config", str(write_config(tmp_path))], capture_output=True, text=True)
    assert res.returncode == 0 and '"k"' in res.stdout
