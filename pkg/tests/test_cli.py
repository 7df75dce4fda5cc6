import json
import subprocess
import sys

import pytest

from carlitz.cli import run


def test_enumerate_bfile():
    code, out = run(["enumerate", "--class", "convex", "--carlitz", "-n", "5", "--format", "bfile"])
    assert code == 0 and out == "2 1\n3 1\n4 1\n5 5\n"


def test_enumerate_text_and_csv():
    assert run(["enumerate", "--carlitz", "-n", "6"])[1] == "1,1,1,5,14\n"
    code, out = run(["enumerate", "-n", "4", "--format", "csv"])
    assert out.splitlines() == ["n,count", "2,1", "3,2", "4,7"]


def test_enumerate_full():
    code, out = run(["enumerate", "--class", "convex", "-n", "4", "--full"])
    assert out.splitlines()[1] == "3 2 1 + p*q"
    code, out = run(["enumerate", "--class", "convex", "-n", "3", "--full", "--format", "json"])
    assert json.loads(out)[1]["terms"] == [{"B": 0, "U": 0, "count": "1"}, {"B": 1, "U": 1, "count": "1"}]


def test_enumerate_workers_identical():
    args = ["enumerate", "-n", "8", "--full", "--format", "json"]
    assert run(args) == run(args + ["--workers", "2"])


def test_safety_bound(capsys):
    assert run(["enumerate", "-n", "30"])[0] == 2
    assert "bound" in capsys.readouterr().err
    assert run(["enumerate", "-n", "5", "--bound", "5"])[0] == 0


def test_bad_class_exits_2():
    assert run(["enumerate", "--class", "spiral", "-n", "4"])[0] == 2


def test_series(tmp_path):
    args = ["series", "--target", "convex-carlitz-perim", "--order", "10", "--cache-dir", str(tmp_path)]
    code, out = run(args)
    assert code == 0 and out == "0,0,0,0,1,0,1,0,1,0,5\n"
    assert run(["series", "--target", "dq-g1", "--order", "3", "--no-cache"])[1] == "0,0,0,2\n"


def test_series_cache_is_bit_identical(tmp_path):
    args = ["series", "--target", "f1-qq", "--order", "5", "--format", "json", "--cache-dir", str(tmp_path)]
    first = run(args)[1]
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    stored = files[0].read_bytes()
    assert run(args)[1] == first
    assert files[0].read_bytes() == stored
    assert first == run(args[:-2] + ["--no-cache"])[1]


def test_series_multivariate_text(tmp_path):
    code, out = run(["series", "--target", "gbt-u", "--order", "3", "--no-cache"])
    assert code == 0 and "x" in out and "u" in out
    code, _ = run(["series", "--target", "gbt-u", "--order", "3", "--no-cache", "--format", "csv"])
    assert code == 2


def test_series_unknown_target():
    assert run(["series", "--target", "nope", "--order", "3", "--no-cache"])[0] == 2


def test_asympt():
    assert run(["asympt", "--target", "convex-levels", "-n", "10"])[1] == "409600\n"
    code, out = run(["asympt", "--target", "cc-carlitz", "--checkpoints", "50,100,200"])
    assert code == 0 and out.splitlines()[-1] == "|ratio - 1| strictly decreasing"
    data = json.loads(run(["asympt", "--target", "cc-levels", "--checkpoints", "20,40",
                           "--corrected", "--format", "json"])[1])
    assert data["corrected"] and data["monotone"]


def test_asympt_needs_n():
    assert run(["asympt", "--target", "cc-carlitz"])[0] == 2


def test_check_passes():
    code, out = run(["check", "-n", "6"])
    assert code == 0
    assert out.splitlines()[-1] == "all checks passed"
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


@pytest.mark.parametrize("mutation", ["gluing-weight", "b-marking"])
def test_check_catches_mutations(mutation):
    code, out = run(["check", "-n", "6", "--mutate", mutation])
    assert code == 1
    assert "first difference at" in out


def test_entry_point():
    proc = subprocess.run([sys.executable, "-m", "carlitz.cli", "enumerate", "-n", "4"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "1,2,7\n"
