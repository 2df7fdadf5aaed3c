import numpy as np
import pytest

from arrow3 import SymMat3, oracle_eig3
from arrow3.cli import main
from arrow3.core import SolverFault


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_blocks(out):
    blocks = []
    for chunk in out.strip().split("\n\n"):
        lines = chunk.splitlines()
        lam = [float(x) for x in lines[0].split()[1:]]
        V = np.array([[float(x) for x in ln.split()[1:]] for ln in lines[1:]])
        blocks.append((lam, V))
    return blocks


def test_solve_prints_eigenpairs(tmp_path, capsys):
    rows = ["3 0 0 2 0 1", "# comment", "", "0.5 -1.25 2 0.3 0.1 -0.7"]
    p = tmp_path / "m.txt"
    p.write_text("\n".join(rows) + "\n")
    code, out, _ = run(capsys, "solve", "--in", str(p))
    assert code == 0
    (lam1, V1), (lam2, V2) = parse_blocks(out)
    assert lam1 == [3.0, 2.0, 1.0]
    assert np.array_equal(np.abs(V1), np.eye(3))
    ref = oracle_eig3(SymMat3(0.5, -1.25, 2, 0.3, 0.1, -0.7))
    assert np.allclose(lam2, ref.lam, atol=1e-14)
    assert np.allclose(V2.T @ V2, np.eye(3), atol=1e-14)


def test_solve_newton_matches_bg(tmp_path, capsys):
    p = tmp_path / "m.txt"
    p.write_text("0.5 -1.25 2 0.3 0.1 -0.7\n")
    _, out_bg, _ = run(capsys, "solve", "--in", str(p))
    _, out_nt, _ = run(capsys, "solve", "--in", str(p), "--method", "newton")
    (lb, _), (ln, _) = parse_blocks(out_bg)[0], parse_blocks(out_nt)[0]
    assert np.allclose(lb, ln, rtol=0, atol=1e-15)


def test_bench_and_diff(tmp_path, capsys):
    out = tmp_path / "run.csv"
    code, text, _ = run(capsys, "bench", "--dist", "uniform", "--n", "200", "--seed", "3", "--out", str(out))
    assert code == 0 and "orth_main" in text
    assert len(out.read_text().splitlines()) == 201
    code, text, _ = run(capsys, "diff", "--in", str(out), "--out", str(tmp_path / "d"))
    assert code == 0
    for name in ("d_orth.csv", "d_resid.csv"):
        lines = (tmp_path / name).read_text().splitlines()
        assert lines[0] == "rank,delta" and len(lines) == 201
        deltas = [float(ln.split(",")[1]) for ln in lines[1:]]
        assert deltas == sorted(deltas)


def test_bench_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        run(capsys, "bench", "--dist", "normal", "--n", "100", "--seed", "9", "--out", str(p))
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [
    ["bench", "--dist", "cauchy", "--out", "x.csv"],
    ["bench", "--dist", "normal", "--n", "0", "--out", "x.csv"],
    ["solve"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(argv, capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 1


def test_malformed_matrix_line_exits_1(tmp_path, capsys):
    p = tmp_path / "m.txt"
    p.write_text("1 2 3\n")
    code, _, err = run(capsys, "solve", "--in", str(p))
    assert code == 1 and "line 1" in err
    p.write_text("1 2 3 4 5 nan\n")
    assert run(capsys, "solve", "--in", str(p))[0] == 1


def test_io_errors_exit_2(tmp_path, capsys):
    assert run(capsys, "solve", "--in", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "diff", "--in", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "d"))[0] == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("not,a,bench,file\n")
    assert run(capsys, "diff", "--in", str(bad), "--out", str(tmp_path / "d"))[0] == 2
    code = run(capsys, "bench", "--dist", "normal", "--n", "5", "--out", str(tmp_path / "nodir" / "x.csv"))[0]
    assert code == 2


def test_solver_fault_exits_3(tmp_path, capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise SolverFault("boom")

    monkeypatch.setattr("arrow3.cli.solve", broken)
    p = tmp_path / "m.txt"
    p.write_text("1 0 0 1 0 1\n")
    code, _, err = run(capsys, "solve", "--in", str(p))
    assert code == 3 and "boom" in err
