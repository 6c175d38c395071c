"""Command-line interface: exit codes, determinism, documented examples."""

import json

import pytest

from clusterflow.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestSomosCommand:
    def test_csv_terms(self, capsys):
        code, out = run_cli(capsys, "somos", "--terms", "10", "--format", "csv")
        assert code == 0
        rows = [line.split(",") for line in out.strip().splitlines()[1:]]
        assert [r[1] for r in rows] == "1 1 1 1 2 3 7 23 59 314".split()

    def test_deterministic(self, capsys):
        _, a = run_cli(capsys, "somos", "--terms", "8")
        _, b = run_cli(capsys, "somos", "--terms", "8")
        assert a == b


class TestMutateCommand:
    def test_somos_first_exchange(self, capsys):
        code, out = run_cli(capsys, "mutate", "--matrix", "somos4", "--word", "1")
        assert code == 0
        doc = json.loads(out)
        # x0' = (x1 x3 + x2^2)/x0: two Laurent terms, both with x0^-1
        num = doc["x"]["0"]["num"]
        assert len(num) == 2
        assert doc["x"]["0"]["den"] == [{"coeff": "1", "exps": {}}]

    def test_involution_echoes_seed(self, capsys):
        _, once = run_cli(capsys, "mutate", "--matrix", "a2", "--word", "")
        _, twice = run_cli(capsys, "mutate", "--matrix", "a2", "--word", "1,1")
        assert once == twice

    def test_windowed_composite_word(self, capsys):
        code, out = run_cli(
            capsys, "mutate", "--matrix", "lv", "--window=-9..9", "--word", "bar0"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["matrix"]["kind"] == "finite"

    def test_unknown_matrix_is_bad_input(self, capsys):
        code, _ = run_cli(capsys, "mutate", "--matrix", "nope", "--word", "1")
        assert code == 2

    def test_word_out_of_range_is_bad_input(self, capsys):
        code, _ = run_cli(capsys, "mutate", "--matrix", "a2", "--word", "3")
        assert code == 2

    def test_infinite_matrix_needs_window(self, capsys):
        code, _ = run_cli(capsys, "mutate", "--matrix", "lv", "--word", "1")
        assert code == 2


class TestPoissonCommand:
    def test_somos_solve(self, capsys):
        code, out = run_cli(capsys, "poisson", "--matrix", "somos4", "--solve")
        assert code == 0
        doc = json.loads(out)
        assert doc["dimension"] == 1
        entries = {(i, j): v for i, j, v in doc["basis"][0]["P"]["p"]}
        # first row proportional to (0, 1, 2, 3)
        assert entries[(0, 2)] == "2" and entries[(0, 3)] == "3"

    def test_lv_periodic_solve(self, capsys):
        code, out = run_cli(capsys, "poisson", "--lv-periodic", "3", "--solve")
        assert code == 0
        assert json.loads(out)["dimension"] == 10

    def test_liouville_table(self, capsys):
        code, out = run_cli(
            capsys, "poisson", "--matrix", "liouville-even", "--m", "3", "--cx", "1"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["c"] == "1" and doc["n"] == 6

    def test_singular_matrix_without_solve_is_bad_input(self, capsys):
        code, _ = run_cli(capsys, "poisson", "--matrix", "somos4", "--cx", "1")
        assert code == 2


class TestVerifyCommand:
    def test_liouville_suite_passes(self, capsys):
        code, out = run_cli(capsys, "verify", "liouville", "--N", "4")
        assert code == 0
        records = json.loads(out)
        assert records and all(r["ok"] for r in records)

    def test_unknown_suite_is_usage_error(self, capsys):
        code, _ = run_cli(capsys, "verify", "bogus")
        assert code == 2


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "somos.csv"
    code = main(["somos", "--terms", "6", "--format", "csv", "--out", str(target)])
    assert code == 0
    assert target.read_text().strip().splitlines()[-1] == "6,3"
