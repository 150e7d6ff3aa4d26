import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("ADMIXID_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="ADMIXID_CLI not set")


def run(*args, cwd=None):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, cwd=cwd)


def write(path: Path, rows):
    path.write_text("".join(",".join(repr(float(x)) for x in row) + "\n" for row in rows))
    return path


def flat(rows):
    return [x for row in rows for x in row]


def read(path: Path):
    return [[float(x) for x in line.split(",")] for line in path.read_text().splitlines()]


@pytest.fixture
def anchor_q_pair(tmp_path):
    f = write(tmp_path / "F.csv", [[1, 0], [0, 1], [0.5, 0.5]])
    q = write(tmp_path / "Q.csv", [[1, 0, 0.3], [0, 1, 0.7]])
    return f, q


def test_check_anchor_individual_fixture(anchor_q_pair):
    f, q = anchor_q_pair
    r = run("check", "--f", f, "--q", q)
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["anchor_Q"] is True
    assert report["indep_F"] is True
    assert report["identifiable"]["anchorQ"] is True


def test_check_identity_sets_every_flag(tmp_path):
    i2 = write(tmp_path / "I.csv", [[1, 0], [0, 1]])
    report = json.loads(run("check", "--f", i2, "--q", i2).stdout)
    flags = [v for v in report.values() if isinstance(v, bool)]
    assert flags and all(flags)
    assert all(report["identifiable"].values())


def test_check_dimension_mismatch_exits_3(tmp_path):
    f = write(tmp_path / "F.csv", [[1, 0], [0, 1]])
    q = write(tmp_path / "Q.csv", [[1, 0], [0, 1], [0, 0]])
    assert run("check", "--f", f, "--q", q).returncode == 3


def test_parse_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("1,x\n")
    r = run("check", "--f", bad, "--q", bad)
    assert r.returncode == 2
    assert "ParseError" in r.stderr
    assert run("check", "--f", tmp_path / "missing.csv", "--q", bad).returncode == 2
    assert run("check", "--bogus").returncode == 2


def test_recover_anchor_individuals(tmp_path):
    pi = write(tmp_path / "Pi.csv", [[1, 0, 0.3], [0, 1, 0.7], [0.5, 0.5, 0.5]])
    out = tmp_path / "out"
    out.mkdir()
    r = run("--out-dir", out, "recover", "--pi", pi, "--regime", "anchorQ")
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["K"] == 2
    assert report["regime"] == "anchorQ"
    f = read(out / "F.csv")
    q = read(out / "Q.csv")
    expected_f = [[1, 0], [0, 1], [0.5, 0.5]]
    expected_q = [[1, 0, 0.3], [0, 1, 0.7]]
    cols = sorted(range(2), key=lambda k: [row[k] for row in f], reverse=True)
    assert flat([[row[k] for k in cols] for row in f]) == pytest.approx(flat(expected_f), abs=1e-9)
    assert flat([q[k] for k in cols]) == pytest.approx(flat(expected_q), abs=1e-9)


def test_recover_auto_picks_unadmixed(tmp_path):
    pi = write(tmp_path / "Pi.csv", [[0, 1, 0, 1], [0, 0, 1, 1]])
    r = run("--out-dir", tmp_path, "recover", "--pi", pi, "--regime", "auto")
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["regime"] == "unadmixed"


def test_recover_failure_exits_4(tmp_path):
    e = 1e-8
    pi = write(
        tmp_path / "Pi.csv",
        [[0, 1, 0, 1, 0.5, 0.5 + 1.5 * e, 0.5 + 0.75 * e], [0, 0, 1, 1, 0.5, 0.5, 0.5]],
    )
    r = run("--out-dir", tmp_path, "recover", "--pi", pi)
    assert r.returncode == 4
    assert "DecompositionInfeasible" in r.stderr


def test_counterexample_rotation_with_delta(tmp_path):
    f = write(tmp_path / "F.csv", [[1, 0.5], [0, 0.4], [1, 0.6]])
    q = write(tmp_path / "Q.csv", [[1, 0], [0, 1]])
    r = run("--out-dir", tmp_path, "counterexample", "--construction", "rotate_R_Q", "--delta", 0.25, "--f", f, "--q", q)
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["product_gap"] <= 1e-7
    assert report["equivalent"] is False
    assert report["parameters"]["delta"] == 0.25
    for name in ("F1", "Q1", "F2", "Q2"):
        assert (tmp_path / f"{name}.csv").exists()


def test_counterexample_auto_delta_is_reported(tmp_path):
    f = write(tmp_path / "F.csv", [[1, 0.5], [0, 0.4], [1, 0.6]])
    q = write(tmp_path / "Q.csv", [[1, 0], [0, 1]])
    r = run("--out-dir", tmp_path, "counterexample", "--construction", "rotate_R_Q", "--f", f, "--q", q)
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["parameters"]["delta"] == pytest.approx(0.2)


def test_counterexample_precondition_exits_5(tmp_path):
    i2 = write(tmp_path / "I.csv", [[1, 0], [0, 1]])
    r = run("--out-dir", tmp_path, "counterexample", "--construction", "unadmixed_dup_column", "--f", i2)
    assert r.returncode == 5
    assert "NoDuplicateColumns" in r.stderr


def test_simulate_all_ones(tmp_path):
    pi = write(tmp_path / "Pi.csv", [[1, 1, 1], [1, 1, 1]])
    r = run("--seed", 3, "simulate", "--pi", pi)
    assert r.returncode == 0, r.stderr
    assert read_text_matrix(r.stdout) == [[2, 2, 2], [2, 2, 2]]


def read_text_matrix(text):
    return [[float(x) for x in line.split(",")] for line in text.splitlines()]


def test_simulate_is_deterministic(anchor_q_pair):
    f, q = anchor_q_pair
    a = run("--seed", 9, "simulate", "--f", f, "--q", q)
    b = run("--seed", 9, "simulate", "--f", f, "--q", q)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_equiv_self_and_other(tmp_path, anchor_q_pair):
    pair = anchor_q_pair[0].parent
    r = run("equiv", "--pair1", pair, "--pair2", pair)
    assert r.returncode == 0
    assert json.loads(r.stdout)["permutation"] == [0, 1]

    other = tmp_path / "other"
    other.mkdir()
    write(other / "F.csv", [[1, 0], [0, 1], [0.5, 0.4]])
    write(other / "Q.csv", [[1, 0, 0.3], [0, 1, 0.7]])
    r = run("equiv", "--pair1", pair, "--pair2", other)
    assert r.returncode == 1
    assert json.loads(r.stdout)["equivalent"] is False


def test_gen_then_check(tmp_path):
    r = run("--seed", 4, "--out-dir", tmp_path, "gen", "--class", "M'", "--k", 3, "--m", 5, "--n", 6)
    assert r.returncode == 0, r.stderr
    report = json.loads(run("check", "--f", tmp_path / "F.csv", "--q", tmp_path / "Q.csv").stdout)
    assert report["anchor_Q"] and report["indep_F"]
    assert report["identifiable"]["anchorQ"]


def test_gen_dimension_bound_exits_3(tmp_path):
    r = run("--out-dir", tmp_path, "gen", "--class", "M''", "--k", 4, "--m", 3, "--n", 6)
    assert r.returncode == 3


def test_gen_recover_equiv_pipeline(tmp_path):
    src, rec = tmp_path / "src", tmp_path / "rec"
    src.mkdir()
    rec.mkdir()
    assert run("--seed", 11, "--out-dir", src, "gen", "--class", "M''", "--k", 2, "--m", 4, "--n", 5).returncode == 0
    f, q = read(src / "F.csv"), read(src / "Q.csv")
    pi = [[sum(f[s][k] * q[k][i] for k in range(2)) for i in range(5)] for s in range(4)]
    write(tmp_path / "Pi.csv", pi)
    assert run("--out-dir", rec, "recover", "--pi", tmp_path / "Pi.csv", "--regime", "anchorF").returncode == 0
    assert run("--tol", 1e-6, "equiv", "--pair1", src, "--pair2", rec).returncode == 0


def test_json_format_embeds_matrices(tmp_path):
    pi = write(tmp_path / "Pi.csv", [[1, 0, 0.3], [0, 1, 0.7], [0.5, 0.5, 0.5]])
    r = run("--format", "json", "recover", "--pi", pi, cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert len(report["F"]) == 3 and len(report["Q"]) == 2
    assert not (tmp_path / "F.csv").exists()
