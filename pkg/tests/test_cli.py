"""Command line interface: verbs, output formats, and exit codes."""

import subprocess
import sys
import warnings

import pytest

from cellform import (InstanceWarning, generate_instance, serialize_instance)
from cellform.cli import main
from helpers import make_instance

FIVE_MACHINE_ROUTINGS = [(1, p) for p in
                         [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5),
                          (3, 5), (4, 5)]]


def run_cli(argv):
    """Invoke the CLI in-process, normalizing SystemExit to a return code."""
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
    return code


@pytest.fixture
def five_machine_file(tmp_path, five_machine_instance):
    path = tmp_path / "five.txt"
    path.write_text(serialize_instance(five_machine_instance),
                    encoding="utf-8")
    return str(path)


def write_instance(tmp_path, name, *args, expect_warning=False, **kwargs):
    if expect_warning:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", InstanceWarning)
            inst = make_instance(*args, **kwargs)
    else:
        inst = make_instance(*args, **kwargs)
    path = tmp_path / name
    path.write_text(serialize_instance(inst), encoding="utf-8")
    return str(path)


class TestUsageErrors:
    def test_help_exits_zero(self, capsys):
        assert run_cli(["--help"]) == 0
        assert "solve" in capsys.readouterr().out

    def test_no_arguments(self, capsys):
        assert run_cli([]) == 1

    def test_bad_solve_method(self, five_machine_file, capsys):
        assert run_cli(["solve", five_machine_file,
                        "--method", "annealing"]) == 1

    def test_bad_bench_method_list(self, five_machine_file, capsys):
        assert run_cli(["bench", five_machine_file,
                        "--method", "scga,annealing"]) == 1
        assert "unknown method" in capsys.readouterr().err

    def test_bad_tuning(self, five_machine_file, capsys):
        assert run_cli(["solve", five_machine_file,
                        "--tuning", "power:zero"]) == 1
        assert run_cli(["solve", five_machine_file,
                        "--tuning", "power:-1"]) == 1
        assert run_cli(["solve", five_machine_file,
                        "--tuning", "linear"]) == 1

    def test_bad_int_list(self, five_machine_file, capsys):
        assert run_cli(["bench", five_machine_file, "--pop", "10,x"]) == 1
        assert run_cli(["bench", five_machine_file, "--pop", ","]) == 1


class TestInputErrors:
    def test_missing_file(self, tmp_path, capsys):
        assert run_cli(["solve", str(tmp_path / "nope.txt")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_file(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("machines two\n", encoding="utf-8")
        assert run_cli(["solve", str(path)]) == 2
        err = capsys.readouterr().err
        assert "error:" in err and "line 1" in err

    def test_oracle_guard(self, tmp_path, capsys):
        path = tmp_path / "big.txt"
        path.write_text(serialize_instance(
            generate_instance(13, 5, 4, seed=0)), encoding="utf-8")
        assert run_cli(["solve", str(path), "--method", "oracle"]) == 2
        assert "exhaustive-search guard" in capsys.readouterr().err

    def test_generate_bad_dimensions(self, capsys):
        assert run_cli(["generate", "-m", "1", "-p", "5", "-N", "2"]) == 2


class TestSolve:
    def test_scga_five_machine(self, five_machine_file, capsys):
        assert run_cli(["solve", five_machine_file, "--method", "scga",
                        "--pop", "40", "--gens", "40", "--seed", "1"]) == 0
        out = capsys.readouterr().out
        assert "method: scga" in out
        assert "traffic: 6" in out
        assert "feasible: yes" in out
        assert "violations: 0 (size 0, cohabit 0, separate 0)" in out
        assert "wall_time_s:" in out
        assert "cells: " in out
        cells_line = next(l for l in out.splitlines()
                          if l.startswith("cells:"))
        listed = sorted(int(tok) for tok in
                        cells_line.replace("[", " ").replace("]", " ")
                        .split()[1:])
        assert listed == [1, 2, 3, 4, 5]

    def test_oracle_five_machine(self, five_machine_file, capsys):
        assert run_cli(["solve", five_machine_file,
                        "--method", "oracle"]) == 0
        out = capsys.readouterr().out
        assert "method: oracle" in out
        assert "traffic: 6" in out

    def test_cga_and_ega_smoke(self, five_machine_file, capsys):
        for method in ("cga", "ega"):
            assert run_cli(["solve", five_machine_file, "--method", method,
                            "--pop", "30", "--gens", "30",
                            "--seed", "0"]) == 0
            out = capsys.readouterr().out
            assert f"method: {method}" in out
            assert "traffic:" in out

    def test_multikmeans_separable(self, tmp_path, capsys):
        path = write_instance(tmp_path, "sep.txt", 6, 3,
                              [(5, (1, 2, 3, 1)), (5, (4, 5, 6, 4))])
        assert run_cli(["solve", path, "--method", "multikmeans",
                        "--reps", "2", "--seed", "0"]) == 0
        out = capsys.readouterr().out
        assert "method: multikmeans" in out
        assert "traffic: 0" in out
        assert "cells: [1 2 3] [4 5 6]" in out

    def test_uf_exit_code(self, tmp_path, capsys):
        path = write_instance(tmp_path, "uf.txt", 4, 2,
                              [(1, (1, 2)), (1, (3, 4))],
                              cohabit=[(1, 2), (2, 3)],
                              expect_warning=True)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", InstanceWarning)
            assert run_cli(["solve", path, "--method", "scga",
                            "--pop", "10", "--gens", "5"]) == 3
        out = capsys.readouterr().out
        assert "UF: no feasible solution found" in out
        assert "feasible: no" in out

    def test_oracle_infeasible_exit_code(self, tmp_path, capsys):
        path = write_instance(tmp_path, "uf2.txt", 4, 2,
                              [(1, (1, 2))], cohabit=[(1, 2), (2, 3)],
                              expect_warning=True)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", InstanceWarning)
            assert run_cli(["solve", path, "--method", "oracle"]) == 3
        out = capsys.readouterr().out
        assert "infeasible: the constraints admit no partition" in out

    def test_deterministic_modulo_wall_time(self, five_machine_file, capsys):
        argv = ["solve", five_machine_file, "--method", "scga",
                "--pop", "20", "--gens", "10", "--seed", "7"]
        assert run_cli(argv) == 0
        first = capsys.readouterr().out
        assert run_cli(argv) == 0
        second = capsys.readouterr().out
        strip = lambda text: [l for l in text.splitlines()
                              if not l.startswith("wall_time_s")]
        assert strip(first) == strip(second)


class TestGenerate:
    def test_stdout_matches_library(self, capsys):
        assert run_cli(["generate", "-m", "6", "-p", "10", "-N", "3",
                        "--max-routing-len", "8", "--seed", "5"]) == 0
        out = capsys.readouterr().out
        assert out == serialize_instance(generate_instance(6, 10, 3, 8, 5))

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "gen.txt"
        assert run_cli(["generate", "-m", "5", "-p", "8", "-N", "2",
                        "--seed", "3", "--out", str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert target.read_text(encoding="utf-8") == \
            serialize_instance(generate_instance(5, 8, 2, 10, 3))

    def test_deterministic(self, capsys):
        argv = ["generate", "-m", "7", "-p", "12", "-N", "3", "--seed", "9"]
        assert run_cli(argv) == 0
        first = capsys.readouterr().out
        assert run_cli(argv) == 0
        assert capsys.readouterr().out == first


class TestDumpGraph:
    def test_five_machine_golden(self, five_machine_file, capsys):
        assert run_cli(["dump-graph", five_machine_file]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "1 3 1", "1 4 1", "1 5 1", "2 3 1", "2 4 1", "2 5 1",
            "3 5 1", "4 5 1"]

    def test_fictive_and_constraint_flags(self, tmp_path, capsys):
        path = write_instance(tmp_path, "flags.txt", 4, 2,
                              [(1, (1, 2)), (2, (3, 4))],
                              cohabit=[(1, 2)], separate=[(3, 4)])
        assert run_cli(["dump-graph", path]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "1 2 1 sc", "1 3 0 fictive", "3 4 2 sn"]

    def test_zero_traffic_separate_edge(self, tmp_path, capsys):
        path = write_instance(tmp_path, "sn.txt", 3, 2, [(1, (1, 2))],
                              separate=[(1, 3)])
        assert run_cli(["dump-graph", path]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "1 2 1", "1 3 0 sn"]


class TestBench:
    def test_csv_to_stdout(self, five_machine_file, capsys):
        assert run_cli(["bench", five_machine_file, "--method", "scga",
                        "--pop", "10", "--gens", "5", "--reps", "2",
                        "--seed", "1"]) == 0
        out = capsys.readouterr().out
        lines = out.splitlines()
        assert lines[0] == ("method,pop,gens,avg_traffic,best_traffic,"
                            "avg_cpu_s,feasible_rate")
        assert len(lines) == 2
        assert lines[1].startswith("scga,10,5,")

    def test_timing_none_byte_identical(self, five_machine_file, capsys):
        argv = ["bench", five_machine_file, "--method", "scga,ega",
                "--pop", "10", "--gens", "5,3", "--reps", "2",
                "--seed", "2", "--timing", "none"]
        assert run_cli(argv) == 0
        first = capsys.readouterr().out
        assert run_cli(argv) == 0
        assert capsys.readouterr().out == first
        # the cpu column really is empty
        assert all(line.split(",")[5] == ""
                   for line in first.splitlines()[1:])

    def test_out_writes_csv_and_prints_table(self, five_machine_file,
                                             tmp_path, capsys):
        target = tmp_path / "rows.csv"
        assert run_cli(["bench", five_machine_file, "--method",
                        "scga,multikmeans", "--pop", "10", "--gens", "5",
                        "--reps", "2", "--seed", "3",
                        "--out", str(target)]) == 0
        table = capsys.readouterr().out
        assert "method" in table and "scga" in table
        assert "multikmeans" in table
        csv_text = target.read_text(encoding="utf-8")
        assert csv_text.startswith("method,pop,gens,")
        assert len(csv_text.splitlines()) == 3


class TestModuleEntryPoint:
    def test_python_dash_m(self):
        proc = subprocess.run([sys.executable, "-m", "cellform", "--help"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "solve" in proc.stdout
