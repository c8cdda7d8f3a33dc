import subprocess
import sys

import pytest

from sparsetls import cli_main, load_instance


def test_missing_subcommand_is_usage_error(capsys):
    assert cli_main([]) == 2
    assert "usage" in capsys.readouterr().err.lower()


def test_unknown_flag_is_usage_error(capsys):
    assert cli_main(["solve", "--frobnicate"]) == 2
    assert "usage" in capsys.readouterr().err.lower()


def test_solve_requires_lambda(capsys):
    assert cli_main(["solve", "--scenario", "s1"]) == 2
    assert "--lambda" in capsys.readouterr().err


def test_solve_prints_error_and_cost(capsys):
    rc = cli_main([
        "solve", "--algo", "pg", "--scenario", "s1",
        "--lambda", "0.02", "--xi", "0.01", "--seed", "0", "--iters", "50",
    ])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.startswith("pg sq_error=")
    assert "cost=" in out


def test_solve_both_algorithms(capsys):
    rc = cli_main(["solve", "--lambda", "0.05", "--iters", "30"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("pg ") and lines[1].startswith("adcd ")


def test_custom_scenario_requires_dimensions(capsys):
    rc = cli_main(["solve", "--scenario", "custom", "--lambda", "0.1"])
    assert rc == 2
    assert "custom" in capsys.readouterr().err


def test_custom_scenario_runs(capsys):
    rc = cli_main([
        "solve", "--scenario", "custom", "--n", "30", "--m", "15", "--k", "3",
        "--ensemble", "rademacher", "--lambda", "0.1", "--iters", "20",
    ])
    assert rc == 0


def test_invalid_custom_dimensions_exit_2(capsys):
    rc = cli_main([
        "solve", "--scenario", "custom", "--n", "10", "--m", "10", "--k", "3",
        "--ensemble", "gaussian", "--lambda", "0.1",
    ])
    assert rc == 2


def test_generate_writes_loadable_instance(tmp_path, capsys):
    rc = cli_main(["generate", "--scenario", "s1", "--seed", "3", "--trial", "1",
                   "--out", str(tmp_path)])
    assert rc == 0
    path = capsys.readouterr().out.strip()
    inst, header = load_instance(path)
    assert header.seed == 3
    assert inst.a.shape == (20, 40)


def test_trace_command(tmp_path, capsys):
    rc = cli_main(["trace", "--trials", "1", "--iters", "2", "--out", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "trace.csv").read_text().splitlines()
    assert len(lines) == 5  # header + 2 iterations x 2 algorithms


def test_sweep_lambda_with_grid(tmp_path):
    rc = cli_main([
        "sweep-lambda", "--grid", "0.05,0.2", "--trials", "1", "--iters", "10",
        "--out", str(tmp_path),
    ])
    assert rc == 0
    lines = (tmp_path / "lambda_sweep.csv").read_text().splitlines()
    assert len(lines) == 5


def test_sweep_xi_with_grid_including_zero(tmp_path):
    rc = cli_main([
        "sweep-xi", "--grid", "0,0.01", "--trials", "1", "--iters", "10",
        "--out", str(tmp_path),
    ])
    assert rc == 0
    lines = (tmp_path / "xi_sweep.csv").read_text().splitlines()
    assert len(lines) == 5


def test_bench_smoke(tmp_path, capsys):
    rc = cli_main([
        "bench", "--scenario", "s1", "--trials", "1", "--seed", "1",
        "--grid", "0.1", "--iters", "20", "--out", str(tmp_path),
    ])
    assert rc == 0
    lines = (tmp_path / "bench.csv").read_text().splitlines()
    assert lines[0] == "scenario,lambda,algo,mean_iter_ns,mean_iter_flops,ratio_vs_pg"
    assert len(lines) == 3


def test_bad_grid_is_usage_error(capsys):
    assert cli_main(["sweep-lambda", "--grid", "abc"]) == 2


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("lambda = 0.05\niters = 30\nalgo = pg\n# comment\n")
    rc = cli_main(["solve", "--config", str(cfg)])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.startswith("pg ")
    assert "iterations=30" in out


def test_cli_flag_overrides_config(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("lambda = 0.05\niters = 30\n")
    rc = cli_main(["solve", "--config", str(cfg), "--iters", "12"])
    assert rc == 0
    assert "iterations=12" in capsys.readouterr().out


def test_unknown_config_key_is_usage_error(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("wibble = 3\n")
    assert cli_main(["solve", "--config", str(cfg), "--lambda", "0.1"]) == 2


def test_missing_config_file_is_usage_error(tmp_path):
    assert cli_main(["solve", "--config", str(tmp_path / "nope.cfg")]) == 2


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "sparsetls", "solve", "--lambda", "0.1", "--iters", "10"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("pg ")


def test_help_exits_zero(capsys):
    assert cli_main(["--help"]) == 0
