import csv
import json
import subprocess
import sys

import pytest

from fusionframes import __version__
from fusionframes.certificate import Certificate
from fusionframes.cli import main
from fusionframes.grassmann import FrameConfig
from fusionframes.sphere_designs import WeightedPointSet


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def test_orbit_command(capsys):
    code, out = run(["orbit", "--d", "4", "--a", "1", "--b", "3", "--check-tff2"], capsys)
    assert code == 0
    assert out.out.strip() == "N=16, Δ=0, TFF₂: pass"


def test_orbit_failing_tff(capsys):
    code, out = run(["orbit", "--d", "5", "--a", "1", "--b", "1", "--check-tff2"], capsys)
    assert code == 1 and "Δ=3/20" in out.out and "fail" in out.out


def test_orbit_union_export(tmp_path, capsys):
    out = tmp_path / "o.json"
    code, _ = run(["orbit", "--d", "5", "--parts", "1,1", "2,2", "--check-tff2",
                   "--export-frame", "--out", str(out)], capsys)
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["orbit"] == {"d": 5, "parts": [[1, 1], [2, 2]]}
    assert obj["version"] == __version__ and obj["verdict"] == "pass"
    F = FrameConfig.from_json(obj["frame"])
    assert len(F) == 70
    code, _ = run(["check-tff", "--in", str(out), "--t", "2"], capsys)
    assert code == 0
    code, _ = run(["check-tff", "--in", str(out), "--t", "2", "--mode", "float"], capsys)
    assert code == 0


def test_search_command(tmp_path, capsys):
    csv_path = tmp_path / "s.csv"
    code, out = run(["search", "--min-d", "5", "--max-d", "33", "--odd", "--orbits", "2",
                     "--csv", str(csv_path)], capsys)
    assert code == 0
    assert "solutions for d in [5, 7, 13, 19, 33]" in out.out
    rows = list(csv.DictReader(csv_path.open()))
    assert {int(r["d"]) for r in rows} == {5, 7, 13, 19, 33}
    assert {"d": "5", "a1": "1", "b1": "1", "a2": "2", "b2": "2", "kind": "pure"} in rows


def test_search_threads_env(tmp_path, capsys, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["search", "--min-d", "5", "--max-d", "21", "--out", str(a)], capsys)
    monkeypatch.setenv("FUSIONFRAMES_THREADS", "2")
    run(["search", "--min-d", "5", "--max-d", "21", "--out", str(b)], capsys)
    ja, jb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ja["solutions"] == jb["solutions"]


def test_search_rejects_three_orbits(capsys):
    code, out = run(["search", "--min-d", "5", "--max-d", "7", "--orbits", "3"], capsys)
    assert code == 2 and "two-orbit" in out.err


def test_solve_single_and_scale(capsys):
    code, out = run(["solve-single", "--d", "13"], capsys)
    assert code == 0 and "d=13: [(3, 5)]" in out.out
    code, out = run(["scale", "--d0", "13", "--a0", "3", "--b0", "5", "--s", "3"], capsys)
    assert code == 0 and "d=43, (a,b)=(9,15)" in out.out
    code, out = run(["scale", "--d0", "5", "--a0", "1", "--b0", "1"], capsys)
    assert code == 2


def test_lift_command_deterministic(tmp_path, capsys):
    path = tmp_path / "design.json"
    argv = ["lift", "--orbit", "4,1,3", "--polygon", "6", "--seed", "7", "--verify", "5",
            "--out", str(path)]
    code, out = run(argv, capsys)
    assert code == 0 and "96 points" in out.out
    first = path.read_bytes()
    run(argv, capsys)
    assert path.read_bytes() == first
    obj = json.loads(first)
    X = WeightedPointSet.from_json(obj["design"])
    assert X.n == 96 and len(obj["design"]["provenance"]) == 96
    assert Certificate.from_json(obj["certificate"]).passed
    assert obj["design"]["meta"]["mode"] == "float"
    assert obj["flags"]["seed"] == 7 and obj["seed"] == 7
    code, _ = run(["verify-design", "--in", str(path), "--t", "5"], capsys)
    assert code == 0
    code, _ = run(["verify-design", "--in", str(path), "--t", "6"], capsys)
    assert code == 1
    code, _ = run(["verify-design", "--in", str(path), "--t", "5", "--method", "moments"], capsys)
    assert code == 0


def test_lift_verify_above_strength(capsys):
    code, _ = run(["lift", "--orbit", "4,1,3", "--polygon", "6", "--verify", "6"], capsys)
    assert code == 1


def test_bounds_command(capsys):
    code, out = run(["bounds", "--d", "4", "--N", "4"], capsys)
    assert code == 0
    js = json.loads(out.out[out.out.index("{"):])
    assert js["classification"] == "EITFF2" and js["e10"] == "2/3"


def test_sic_pipeline(tmp_path, capsys):
    path = tmp_path / "sic.json"
    code, out = run(["sic-lift", "--n", "2", "--out", str(path)], capsys)
    assert code == 0 and "4 planes in G(2,4)" in out.out
    code, out = run(["check-ectff2", "--in", str(path)], capsys)
    assert code == 0 and "EITFF2" in out.out
    code, out = run(["embed", "--in", str(path), "--out", str(tmp_path / "e.json")], capsys)
    assert code == 0 and "R^9" in out.out
    code, _ = run(["sic-lift", "--n", "3"], capsys)
    assert code == 2


def test_check_ectff2_on_orbit(tmp_path, capsys):
    path = tmp_path / "o.json"
    run(["orbit", "--d", "4", "--a", "1", "--b", "3", "--export-frame", "--out", str(path)], capsys)
    code, _ = run(["check-ectff2", "--in", str(path)], capsys)
    assert code == 1


def test_bad_input_exit_codes(tmp_path, capsys):
    code, _ = run(["orbit", "--d", "4", "--a", "3", "--b", "3"], capsys)
    assert code == 2
    code, _ = run(["check-tff", "--in", str(tmp_path / "missing.json")], capsys)
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--d", "x", "--N", "4"])
    assert exc.value.code == 2


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "fusionframes.cli", "bounds", "--d", "4", "--N", "10"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "tight-4-design" in res.stdout
