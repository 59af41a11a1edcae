"""Command line front end: solve, sweep, validate, bounds.

Flags override the corresponding config fields. Exit codes are categorical:
0 success, 1 a validation suite failed, 2 config problem, 3 the solver
reported a violated precondition, 4 an iteration cap fired.
"""

import argparse
import json
import sys

from .bounds import bound_curves
from .core import Termination
from .harness import (
    CSV_COLUMNS,
    ConfigError,
    ExperimentConfig,
    _fmt,
    _params_from,
    run_solve,
    run_sweep,
    validate,
)

EXIT_SUITE_FAILED = 1
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3
EXIT_CAP = 4


def _add_universal(parser):
    parser.add_argument("--seed", type=int, default=None,
                        help="override the config seed(s)")
    parser.add_argument("--mode", choices=("practical", "theoretical"),
                        default=None, help="override the config mode")
    parser.add_argument("--out", default=None,
                        help="override the config output path")


def _load(args, sweep: bool) -> ExperimentConfig:
    with open(args.config) as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ConfigError("config: expected a JSON object")
    if args.seed is not None:
        raw.pop("seeds", None)
        raw["seed"] = args.seed
    if args.mode is not None:
        raw["mode"] = args.mode
    if args.out is not None:
        raw["out"] = args.out
    cfg = ExperimentConfig.from_dict(raw)
    if sweep and cfg.sweep_parameter is None:
        raise ConfigError("sweep: missing sweep grid")
    if not sweep and cfg.sweep_parameter is not None:
        raise ConfigError("sweep: solve configs must not carry a sweep grid")
    return cfg


def _cmd_solve(args) -> int:
    cfg = _load(args, sweep=False)
    report, row = run_solve(cfg)
    for name, value in zip(CSV_COLUMNS, row.as_csv()):
        print(f"{name}: {value}")
    if report.termination is Termination.PreconditionViolated:
        return EXIT_PRECONDITION
    if report.termination is Termination.IterationCap:
        return EXIT_CAP
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load(args, sweep=True)
    rows, summary, _ = run_sweep(cfg)
    print(f"{len(rows)} rows, {len(summary)} summary cells"
          + (f", written to {cfg.out}" if cfg.out else ""))
    return 0


def _cmd_validate(args) -> int:
    result = validate(args.suite, seed_offset=args.seed or 0, out=args.out)
    for check in result["checks"]:
        print(f"{'pass' if check['passed'] else 'FAIL'}  {check['name']}"
              f"  worst_ratio={check['worst_ratio']:.3e}")
    print(f"suite {result['suite']}: "
          + ("pass" if result["passed"] else "FAIL"))
    return 0 if result["passed"] else EXIT_SUITE_FAILED


def _cmd_bounds(args) -> int:
    with open(args.config) as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ConfigError("config: expected a JSON object")
    params = _params_from(raw.get("params"), "params")
    grid = raw.get("grid")
    if not (isinstance(grid, list) and grid
            and all(isinstance(v, (int, float)) for v in grid)):
        raise ConfigError("grid: must be a nonempty list of numbers")
    epsilon = raw.get("epsilon", 1e-6)
    if not (isinstance(epsilon, (int, float)) and 0 < epsilon < 1):
        raise ConfigError("epsilon: must be in (0, 1)")
    curves = bound_curves(params, [float(v) for v in grid], float(epsilon))
    out = args.out or raw.get("out")
    lines = ["label,L_xy,complexity"]
    for curve in curves:
        for l_xy, complexity in curve.values:
            lines.append(f"{curve.label},{_fmt(l_xy)},{_fmt(complexity)}")
    text = "\n".join(lines) + "\n"
    if out is not None:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="saddlebench",
        description="saddle-point solver benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run one solver on one instance")
    p_solve.add_argument("--config", required=True)
    _add_universal(p_solve)
    p_solve.set_defaults(run=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="run a parameter grid")
    p_sweep.add_argument("--config", required=True)
    _add_universal(p_sweep)
    p_sweep.set_defaults(run=_cmd_sweep)

    p_val = sub.add_parser("validate", help="run a named property suite")
    p_val.add_argument("suite")
    _add_universal(p_val)
    p_val.set_defaults(run=_cmd_validate)

    p_bounds = sub.add_parser("bounds", help="emit complexity bound curves")
    p_bounds.add_argument("--config", required=True)
    _add_universal(p_bounds)
    p_bounds.set_defaults(run=_cmd_bounds)

    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
