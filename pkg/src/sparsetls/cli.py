"""Command-line entry point.

Subcommands: generate, solve, trace, sweep-lambda, sweep-xi, bench.
Exit codes: 0 success, 2 invalid arguments, 1 runtime failure.

A plain-text config file (`key = value` lines, # comments) can supply any
flag default via --config; explicit command-line flags win.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .experiments import (
    BENCH_HEADER,
    ExperimentConfig,
    _write_csv,
    bench_rows,
    default_lambda_grid,
    default_xi_grid,
    iteration_schedule,
    run_lambda_sweep,
    run_trace,
    run_xi_sweep,
    solve_instance,
)
from .problems import (
    SCENARIO_TAGS,
    Ensemble,
    ScenarioConfig,
    generate_instance,
    save_instance,
    scenario_config,
)
from .rng import derive_stream


class UsageError(Exception):
    """Bad arguments or config; maps to exit code 2."""


_CONFIG_KEYS = {
    "scenario": ("scenario", str),
    "lambda": ("lam", float),
    "xi": ("xi", float),
    "trials": ("trials", int),
    "seed": ("seed", int),
    "trial": ("trial", int),
    "iters": ("iters", int),
    "algo": ("algo", str),
    "out": ("out", str),
    "grid": ("grid", str),
    "n": ("n", int),
    "m": ("m", int),
    "k": ("k", int),
    "ensemble": ("ensemble", str),
}
_CONFIG_CHOICES = {
    "scenario": {"s1", "s2", "custom", "both"},
    "algo": {"pg", "adcd", "both"},
    "ensemble": {"gaussian", "rademacher"},
}


def _read_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    defaults = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        dest, conv = _CONFIG_KEYS[key]
        try:
            parsed = conv(value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key!r}: {exc}") from exc
        if key in _CONFIG_CHOICES and parsed not in _CONFIG_CHOICES[key]:
            raise UsageError(f"{path}:{lineno}: {key!r} must be one of {sorted(_CONFIG_CHOICES[key])}")
        defaults[dest] = parsed
    return defaults


def _config_defaults(argv: list[str]) -> dict:
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                raise UsageError("--config needs a path")
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    return _read_config(path) if path is not None else {}


def _add_common(p: argparse.ArgumentParser, scenario_choices: tuple, scenario_default: str) -> None:
    p.add_argument("--scenario", choices=scenario_choices, default=scenario_default)
    p.add_argument("--n", type=int, help="columns (custom scenario)")
    p.add_argument("--m", type=int, help="rows (custom scenario)")
    p.add_argument("--k", type=int, help="sparsity (custom scenario)")
    p.add_argument("--ensemble", choices=["gaussian", "rademacher"], help="matrix ensemble (custom scenario)")
    p.add_argument("--xi", type=float, default=0.01, help="perturbation-variance parameter")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--trial", type=int, default=0, help="trial index for single-instance commands")
    p.add_argument("--iters", type=int, help="override the iteration schedule")
    p.add_argument("--algo", choices=["pg", "adcd", "both"], default="both")
    p.add_argument("--out", default="results", help="output directory")
    p.add_argument("--config", help="config file with 'key = value' flag defaults")


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sparsetls",
        description="Sparse recovery from perturbed linear systems: solvers and benchmark experiments.",
    )
    sub = top.add_subparsers(dest="command", required=True)
    custom = ("s1", "s2", "custom")

    p = sub.add_parser("generate", help="write one instance file")
    _add_common(p, custom, "s1")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="solve one instance, print final error and cost")
    _add_common(p, custom, "s1")
    p.add_argument("--lambda", dest="lam", type=float, help="regularization weight (required)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trace", help="per-iteration error/cost averages -> trace.csv")
    _add_common(p, custom, "s1")
    p.add_argument("--lambda", dest="lam", type=float, default=0.02)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("sweep-lambda", help="converged error and support misses per lambda -> lambda_sweep.csv")
    _add_common(p, custom, "s1")
    p.add_argument("--grid", help="comma-separated lambda values (default: 25 log-spaced on [5e-4, 1])")
    p.set_defaults(func=cmd_sweep_lambda)

    p = sub.add_parser("sweep-xi", help="converged error per perturbation level -> xi_sweep.csv")
    _add_common(p, custom, "s1")
    p.add_argument("--lambda", dest="lam", type=float, default=0.02)
    p.add_argument("--grid", help="comma-separated xi values (default: 13 log-spaced on [1e-4, 1e-1])")
    p.set_defaults(func=cmd_sweep_xi)

    p = sub.add_parser("bench", help="per-iteration time and flop comparison -> bench.csv")
    _add_common(p, ("s1", "s2", "both"), "both")
    p.add_argument("--grid", help="comma-separated lambda values (default: 25 log-spaced on [5e-4, 1])")
    p.set_defaults(func=cmd_bench)

    if defaults:
        for action in sub.choices.values():
            action.set_defaults(**defaults)
    return top


def _parse_grid(text: str | None) -> list[float] | None:
    if text is None:
        return None
    try:
        grid = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --grid value: {exc}") from exc
    if not grid:
        raise UsageError("--grid must list at least one value")
    return grid


def _scenario(args) -> tuple[ScenarioConfig, str]:
    try:
        if args.scenario in ("s1", "s2"):
            return scenario_config(args.scenario, xi=args.xi, seed=args.seed), args.scenario
        if None in (args.n, args.m, args.k) or args.ensemble is None:
            raise UsageError("custom scenario requires --n, --m, --k and --ensemble")
        return (
            ScenarioConfig(
                n=args.n, m=args.m, k=args.k,
                ensemble=Ensemble(args.ensemble), xi=args.xi, seed=args.seed,
            ),
            "custom",
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _algos(args) -> tuple[str, ...]:
    return ("pg", "adcd") if args.algo == "both" else (args.algo,)


def _experiment_config(args, lambda_grid=None, xi_grid=None) -> ExperimentConfig:
    scen, kind = _scenario(args)
    try:
        return ExperimentConfig(
            scenario=scen,
            kind=kind,
            lambda_grid=lambda_grid if lambda_grid is not None else default_lambda_grid(),
            xi_grid=xi_grid if xi_grid is not None else default_xi_grid(),
            trials=args.trials,
            master_seed=args.seed,
            out_dir=Path(args.out),
            iters=args.iters,
            algos=_algos(args),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _single_instance(args):
    scen, kind = _scenario(args)
    rng = derive_stream(args.seed, SCENARIO_TAGS[kind], args.trial)
    return generate_instance(scen, rng), scen, kind


def cmd_generate(args) -> int:
    inst, scen, kind = _single_instance(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"instance_{kind}_seed{args.seed}_trial{args.trial}.txt"
    save_instance(inst, scen, path)
    print(path)
    return 0


def cmd_solve(args) -> int:
    if args.lam is None:
        raise UsageError("solve requires --lambda")
    inst, scen, kind = _single_instance(args)
    iters = args.iters
    if iters is None:
        iters = iteration_schedule(args.lam, kind if kind in ("s1", "s2") else "s1")
    for algo in _algos(args):
        res = solve_instance(algo, inst, args.lam, iters)
        last = res.trace[-1]
        print(f"{algo} sq_error={last.sq_error:.17g} cost={last.cost:.17g} iterations={iters}")
    return 0


def cmd_trace(args) -> int:
    cfg = _experiment_config(args, lambda_grid=[args.lam], xi_grid=[args.xi])
    print(run_trace(cfg, lam=args.lam, xi=args.xi))
    return 0


def cmd_sweep_lambda(args) -> int:
    cfg = _experiment_config(args, lambda_grid=_parse_grid(args.grid), xi_grid=[args.xi])
    print(run_lambda_sweep(cfg))
    return 0


def cmd_sweep_xi(args) -> int:
    cfg = _experiment_config(args, lambda_grid=[args.lam], xi_grid=_parse_grid(args.grid))
    print(run_xi_sweep(cfg, lam=args.lam))
    return 0


def cmd_bench(args) -> int:
    names = ["s1", "s2"] if args.scenario == "both" else [args.scenario]
    grid = _parse_grid(args.grid) or default_lambda_grid()
    rows = []
    for name in names:
        scen = scenario_config(name, xi=args.xi, seed=args.seed)
        try:
            cfg = ExperimentConfig(
                scenario=scen, kind=name, lambda_grid=sorted(grid), xi_grid=default_xi_grid(),
                trials=args.trials, master_seed=args.seed, out_dir=Path(args.out), iters=args.iters,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        rows.extend(bench_rows(cfg, grid))
    path = _write_csv(Path(args.out) / "bench.csv", BENCH_HEADER, rows)
    print(path)
    return 0


def cli_main(argv: list[str]) -> int:
    try:
        defaults = _config_defaults(argv)
        parser = build_parser(defaults)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors and --help
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))
