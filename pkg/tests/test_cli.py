import json
import subprocess
import sys

import numpy as np
import pytest

from schurlike.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main
from schurlike.io import write_graph
from schurlike.srg import PETERSEN_PARAMS, SrgParams, from_edges, petersen


def matrix_file(tmp_path, rows, ring="int", name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"ring": ring, "rows": len(rows), "cols": len(rows[0]), "entries": rows}))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def kv(text):
    out = {}
    for line in text.splitlines():
        if ": " in line:
            k, v = line.split(": ", 1)
            out.setdefault(k, v)
    return out


@pytest.fixture
def p3(tmp_path):
    return matrix_file(tmp_path, [[0, 1, 0], [1, 0, 1], [0, 1, 0]])


@pytest.fixture
def petersen_file(tmp_path):
    path = tmp_path / "petersen.json"
    write_graph(petersen(), path, PETERSEN_PARAMS)
    return str(path)


class TestReduceForward:
    def test_path_graph(self, p3, capsys):
        code, out, _ = run(["reduce-forward", "--matrix", p3, "--split", "2", "--annihilator", "x^2-1"], capsys)
        assert code == EXIT_PASS
        d = kv(out)
        assert d["verdict"] == "PASS"
        assert d["kappa"] == "3"
        direct = d["direct sigma(M)"]
        assert "1.41421356" in direct and "-1.41421356" in direct
        assert out.rstrip().splitlines()[-1] == "verdict: PASS"

    def test_auto_and_list_forms(self, p3, capsys):
        for src in ("auto", "[-1, 0, 1]", "-1,0,1"):
            assert run(["reduce-forward", "--matrix", p3, "--split", "2", f"--annihilator={src}"], capsys)[0] == 0

    def test_block_diagonal(self, tmp_path, capsys):
        f = matrix_file(tmp_path, [[1, 2, 0], [3, 4, 0], [0, 0, 5]])
        assert run(["reduce-forward", "--matrix", f, "--split", "2"], capsys)[0] == EXIT_PASS

    def test_wrong_annihilator(self, p3, capsys):
        code, out, _ = run(["reduce-forward", "--matrix", p3, "--split", "2", "--annihilator", "x-1"], capsys)
        assert code == EXIT_FAIL
        assert "NotAnnihilatingError" in out
        assert kv(out)["verdict"] == "FAIL"

    def test_bad_split(self, p3, capsys):
        code, _, err = run(["reduce-forward", "--matrix", p3, "--split", "3"], capsys)
        assert code == EXIT_USAGE and "split" in err

    def test_function_valued(self, tmp_path, capsys):
        # lam I - P3 stored over QQ[lam]
        rows = [[[0, 1], [-1], [0]], [[-1], [0, 1], [-1]], [[0], [-1], [0, 1]]]
        f = matrix_file(tmp_path, rows, ring="poly-rat")
        grid = tmp_path / "grid.tsv"
        code, out, _ = run(["reduce-forward", "--matrix", f, "--split", "2", "--annihilator", "x^2-1",
                            "--grid", "10", "--grid-out", str(grid)], capsys)
        assert code == EXIT_PASS
        assert len(grid.read_text().splitlines()) == 101


class TestReduceConverse:
    def test_swap(self, tmp_path, capsys):
        f = matrix_file(tmp_path, [[0, 1], [1, 0]])
        code, out, _ = run(["reduce-converse", "--matrix", f, "--keep", "1", "--annihilator", "x^2-1"], capsys)
        assert code == EXIT_PASS
        assert "0" in kv(out)["reconstructed sigma(A)"]

    def test_diagonal(self, tmp_path, capsys):
        f = matrix_file(tmp_path, [[1, 0, 0], [0, 2, 0], [0, 0, 2]])
        assert run(["reduce-converse", "--matrix", f, "--keep", "2"], capsys)[0] == EXIT_PASS

    def test_malformed(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{ring: int")
        code, _, err = run(["reduce-converse", "--matrix", str(bad), "--keep", "1"], capsys)
        assert code == EXIT_USAGE and err.startswith("error:")


class TestSrg:
    def test_cone(self, petersen_file, capsys):
        code, out, _ = run(["srg", "--graph", petersen_file, "--add", "cone"], capsys)
        assert code == EXIT_PASS
        assert kv(out)["kappa"] == "4"

    def test_deflated_random(self, petersen_file, capsys):
        code, out, _ = run(["srg", "--graph", petersen_file, "--add", "random:2:5", "--deflate"], capsys)
        assert code == EXIT_PASS
        assert kv(out)["kappa"] == "9"

    def test_attachment_file(self, petersen_file, tmp_path, capsys):
        att = tmp_path / "att.json"
        att.write_text(json.dumps({"B": np.eye(10, 2, dtype=int).tolist()}))
        assert run(["srg", "--graph", petersen_file, "--add", str(att)], capsys)[0] == EXIT_PASS

    def test_remove(self, petersen_file, capsys):
        code, out, _ = run(["srg", "--graph", petersen_file, "--remove", "0"], capsys)
        assert code == EXIT_PASS
        d = kv(out)
        assert d["kappa"] == "2"
        assert d["K vertex independent"] == "yes"

    def test_not_srg(self, tmp_path, capsys):
        path = tmp_path / "path.json"
        write_graph(from_edges(3, [(0, 1), (0, 2)]), path, SrgParams(3, 2, 1, 0, 2))
        code, out, _ = run(["srg", "--graph", str(path), "--add", "cone"], capsys)
        assert code == EXIT_FAIL
        assert kv(out)["valid"] == "no"

    def test_params_flag_and_missing(self, tmp_path, capsys):
        path = tmp_path / "c5.json"
        path.write_text(json.dumps({"n": 5, "edges": [[i, (i + 1) % 5] for i in range(5)]}))
        assert run(["srg", "--graph", str(path), "--remove", "1", "--params", "5,2,1,0,2"], capsys)[0] == 0
        assert run(["srg", "--graph", str(path), "--remove", "1"], capsys)[0] == EXIT_USAGE

    def test_bad_add(self, petersen_file, capsys):
        assert run(["srg", "--graph", petersen_file, "--add", "bogus"], capsys)[0] == EXIT_USAGE


class TestVerify:
    def test_determinants(self, capsys):
        code, out, _ = run(["verify", "--suite", "determinants", "--seed", "1", "--count", "20"], capsys)
        assert code == EXIT_PASS
        assert "20/20" in out

    def test_quotient_reports_factor(self, capsys):
        code, out, _ = run(["verify", "--suite", "quotient", "--seed", "2", "--count", "10", "-v"], capsys)
        assert code == EXIT_PASS
        assert "factor" in out

    def test_unknown_suite(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nope"])
        assert exc.value.code == EXIT_USAGE

    def test_bad_tolerance(self, capsys):
        code, _, err = run(["verify", "--suite", "sd", "--tol-match", "-1"], capsys)
        assert code == EXIT_USAGE and "tol-match" in err

    def test_deterministic_and_out(self, tmp_path, capsys):
        outs = []
        for i in range(2):
            path = tmp_path / f"r{i}.txt"
            code, out, _ = run(["verify", "--suite", "forward", "--seed", "3", "--count", "5",
                                "--out", str(path)], capsys)
            assert code == EXIT_PASS
            assert path.read_text() == out
            outs.append(out)
        assert outs[0] == outs[1]


def test_module_entry_point(p3):
    res = subprocess.run([sys.executable, "-m", "schurlike", "reduce-forward", "--matrix", p3,
                          "--split", "2", "--annihilator", "x^2-1"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.rstrip().endswith("verdict: PASS")
