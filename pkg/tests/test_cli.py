import csv
import subprocess
import sys

import numpy as np
import pytest

from cvxtx.cli import main
from cvxtx.io import read_matrix, write_matrix


@pytest.fixture
def micro_files(tmp_path):
    paths = {name: tmp_path / f"{name}.csv" for name in ("x", "y", "p")}
    write_matrix(paths["x"], [[1.0], [3.0], [5.0]])
    write_matrix(paths["y"], [[2.0], [4.0], [6.0]])
    paths["p"].write_text("1\n1\n2\n")
    return paths


def file_args(paths):
    return ["--x", str(paths["x"]), "--y", str(paths["y"]), "--partition", str(paths["p"])]


def test_verify_random_passes(capsys):
    assert main(["verify", "--random", "200", "30", "5", "10", "42"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 16 and "16/16" in out


def test_verify_tolerance_failure(capsys):
    assert main(["verify", "--random", "40", "5", "2", "4", "1", "--tol", "-1"]) == 6


def test_dimension_mismatch(tmp_path, micro_files):
    write_matrix(micro_files["y"], [[2.0], [4.0]])
    assert main(["verify", *file_args(micro_files)]) == 3


def test_label_count_mismatch(micro_files):
    micro_files["p"].write_text("1\n2\n")
    assert main(["run", *file_args(micro_files), "--out-dir", "unused"]) == 3


def test_parse_error(micro_files):
    micro_files["x"].write_text("1\nabc\n5\n")
    assert main(["verify", *file_args(micro_files)]) == 2


def test_missing_inputs():
    assert main(["verify"]) == 2


def test_invalid_partition(micro_files):
    micro_files["p"].write_text("1\n3\n3\n")
    assert main(["verify", *file_args(micro_files)]) == 4


def test_random_fold_count_out_of_range():
    assert main(["verify", "--random", "5", "2", "1", "9", "0"]) == 4


def test_not_scalable(micro_files):
    # fold 1 trains on a single row
    assert main(["verify", *file_args(micro_files)]) == 5
    assert main(["run", *file_args(micro_files), "--config", "scale", "--out-dir", "unused"]) == 5


def test_run_micro_case(tmp_path, micro_files):
    out = tmp_path / "nested" / "out"
    assert main(["run", *file_args(micro_files), "--config", "center", "--out-dir", str(out)]) == 0
    assert read_matrix(out / "fold_2_xtx.csv")[0, 0] == 2.0
    assert read_matrix(out / "fold_2_xty.csv")[0, 0] == 2.0
    stats = (out / "fold_stats.csv").read_text().splitlines()
    assert "2,n_train,2" in stats and "2,mean_x,2" in stats


def test_run_raw_matches_subtraction(tmp_path):
    out = tmp_path / "out"
    assert main(["run", "--random", "30", "4", "2", "3", "5", "--out-dir", str(out)]) == 0
    from cvxtx.io import random_problem

    data, part = random_problem(30, 4, 2, 3, 5)
    for fold in (1, 2, 3):
        t = part.labels != fold
        np.testing.assert_allclose(
            read_matrix(out / f"fold_{fold}_xtx.csv"), data.x[t].T @ data.x[t], rtol=1e-12
        )
        np.testing.assert_allclose(
            read_matrix(out / f"fold_{fold}_xty.csv"), data.x[t].T @ data.y[t], rtol=1e-12
        )


def test_bench_csv(tmp_path):
    out = tmp_path / "bench.csv"
    args = ["bench", "--n", "60", "--k", "4", "--m", "2", "--p-list", "2,5,10", "--reps", "1", "--out", str(out)]
    assert main(args) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["engine", "config", "n", "k", "m", "p", "wall_time", "reps"]
    assert len(rows) == 7
    assert {r[0] for r in rows[1:]} == {"baseline", "fast"}
    assert all(r[1] == "cx+cy+sx+sy" and float(r[6]) > 0 for r in rows[1:])


def test_bench_rejects_bad_fold_count(tmp_path):
    assert main(["bench", "--n", "5", "--k", "1", "--m", "1", "--p-list", "9", "--out", str(tmp_path / "b.csv")]) == 4


def test_leakage_report(capsys):
    assert main(["leakage", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "lindgren centered X^T X: -6" in out
    assert "proper centered X^T X:   2" in out
    assert "divergence:              8" in out
    table = [line.split() for line in out.splitlines() if line.strip()[:1].isdigit()]
    assert len(table) == 5 and all(float(row[1]) > 0 for row in table)


def test_leakage_without_y(micro_files, capsys):
    assert main(["leakage", "--x", str(micro_files["x"]), "--partition", str(micro_files["p"])]) == 0


def test_combos(capsys):
    assert main(["combos", "--random", "30", "4", "2", "3", "7"]) == 0
    out = capsys.readouterr().out
    assert "X^T Y classes: 8" in out and "classes: 12" in out


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cvxtx.cli", "verify", "--random", "20", "3", "2", "4", "0"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
