import csv
import json
import math

import numpy as np
import pytest

from cbeta import checks
from cbeta.cli import main, parse_angle


def read_csv(path):
    with open(path) as fh:
        return list(csv.reader(fh))


@pytest.mark.parametrize(
    "text, value",
    [("pi/8", math.pi / 8), ("pi", math.pi), ("3pi/4", 3 * math.pi / 4), ("2*pi/3", 2 * math.pi / 3), ("0.5", 0.5), ("1.5pi", 1.5 * math.pi)],
)
def test_angle_parsing(text, value):
    assert parse_angle(text) == pytest.approx(value, rel=1e-15)


def test_sample_writes_sorted_angles(tmp_path):
    out = tmp_path / "eigs.csv"
    assert main(["sample", "--beta", "2", "--n", "8", "--seed", "1", "--eta", "0.0", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["index", "angle"]
    angles = np.array([float(r[1]) for r in rows[1:]])
    assert angles.size == 8 and np.all(np.diff(angles) > 0)
    assert angles[0] == 0.0 and angles[-1] < 2 * math.pi
    # 17 significant digits round-trip exactly
    assert all(float(r[1]) == float(format(float(r[1]), ".17g")) for r in rows[1:])


def test_count_output(tmp_path):
    out = tmp_path / "n.csv"
    assert main(["count", "--beta", "2", "--n", "16", "--theta", "pi/8", "--reps", "50", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["replica", "count", "psi", "eta"] and len(rows) == 51
    for r in rows[1:]:
        assert abs(int(r[1]) - float(r[2]) / (2 * math.pi)) <= 1


def test_oracle_variance(tmp_path, capsys):
    assert main(["oracle", "n2", "--beta", "2", "--theta", "3.14159265", "--nodes", "2048"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["value"] == pytest.approx(0.297359, abs=1e-5)
    assert main(["oracle", "n3", "--beta", "2", "--theta", "pi", "--reps", "2000"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert sum(rec["probs"]) == pytest.approx(1.0)


def test_verify_theta(capsys):
    assert main(["verify", "theta", "--nu", "3", "--reps", "1000000", "--seed", "7"]) == 0
    lines = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    m2 = next(r for r in lines if r["check"] == "m2")
    assert m2["estimate"] == pytest.approx(0.5, abs=2e-3) and m2["pass"] is True
    keys = {"command", "params", "estimate", "std_error", "predicted", "abs_gap", "pass", "wall_time_ms"}
    assert keys <= set(m2)


def test_usage_errors_exit_two(capsys):
    assert main(["nonsense"]) == 2
    assert main(["count", "--beta", "2", "--n", "4", "--theta", "7.0"]) == 2
    assert main(["sample", "--beta", "-1", "--n", "4"]) == 2
    assert main(["verify", "seq", "--threads", "0"]) == 2
    assert main(["count", "--beta", "2", "--n", "4", "--theta", "pi/0"]) == 2


def test_failed_check_exits_one(monkeypatch, capsys):
    def failing(**_):
        return [checks.RunReport("verify seq", "x", {}, 1.0, 0.0, 0.0, 1.0, 0.5)]

    monkeypatch.setitem(checks.SUITES, "seq", failing)
    assert main(["verify", "seq"]) == 1


def test_thread_count_does_not_change_output(tmp_path, monkeypatch):
    a, b, c = (tmp_path / f"{k}.jsonl" for k in "abc")
    args = ["verify", "oracle", "--reps", "5000", "--seed", "3"]
    main(args + ["--threads", "1", "--out", str(a)])
    main(args + ["--threads", "4", "--out", str(b)])
    monkeypatch.setenv("CBETA_THREADS", "3")
    main(args + ["--out", str(c)])

    def strip(path):
        rows = [json.loads(x) for x in path.read_text().splitlines()]
        for r in rows:
            r.pop("wall_time_ms")
        return rows

    assert strip(a) == strip(b) == strip(c)


def test_report_semantics():
    r = checks.RunReport("verify x", "c", {"a": 1}, estimate=1.0, std_error=0.1, predicted=1.2, abs_gap=0.2, tolerance=0.4)
    assert r.passed
    d = json.loads(r.to_json())
    assert d["pass"] is True and d["abs_gap"] == 0.2
    r.tolerance = 0.1
    assert not r.passed
