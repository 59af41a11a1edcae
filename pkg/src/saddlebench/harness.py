"""Experiment runner: single solves, coupling/conditioning sweeps, validation
suites, and CSV/JSON emission.

Configs are JSON. A solve config names one instance, one solver, and a
target; a sweep config adds a parameter grid, a seed list, and a solver
list. Every run is reproducible from its config: instances come from the
seed's Philox stream 0, start points from stream 1, and all floats are
serialized with 17 significant digits so reruns are bit-for-bit identical
in every non-timing field.

The epsilon in a config is always the certified relative joint error
||z_T - z*|| / ||z0 - z*||. Internally each solver receives the tolerance
its own guarantee needs to certify that (summed-norm solvers get
epsilon/sqrt(2), the baselines get the Fact-3 gradient ratio).
"""

import csv
import json
import math
import pathlib
import time
from dataclasses import dataclass

import numpy as np

from .abr import AbrConfig, abr_round_contraction, abr_solve
from .agd import AgdConfig, agd, agd_error_bound
from .baselines import (
    BaselineConfig,
    eg_default_step,
    eg_solve,
    gda_default_step,
    gda_solve,
)
from .bounds import bound_curves
from .core import JointPoint, SmoothnessParams, Termination, weighted_error
from .problems import (
    InstanceSpec,
    SpectrumShape,
    best_response_maps,
    direct_saddle,
    duality_gap,
    load_instance,
    log_perturbed_instance,
    make_quadratic,
    quadratic_oracle,
)
from .prox import PbrConstants, pbr_solve, theorem2_iteration_bound
from .rhss import HssOperators, RhssConfig, contraction_factor, hss_exact_step, optimal_k, rhss_solve

SOLVERS = ("abr", "pbr", "rhss", "gda", "eg")
MODES = ("practical", "theoretical")
SWEEP_PARAMETERS = ("L_xy", "kappa")

CSV_COLUMNS = (
    "seed", "n", "m", "m_x", "m_y", "L_x", "L_xy", "L_y", "solver", "mode",
    "epsilon", "outer_iterations", "gradient_evals", "matvec_products",
    "final_relative_error", "wall_time", "termination",
)

SUMMARY_COLUMNS = (
    "solver", "mode", "parameter", "value", "runs", "median_gradient_evals",
    "median_matvec_products", "median_final_relative_error",
    "worst_final_relative_error",
)


class ConfigError(ValueError):
    """Configuration problem, reported with the offending field path."""


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, Termination):
        return str(value)
    return str(value)


@dataclass(frozen=True)
class SweepRow:
    seed: int
    n: int
    m: int
    params: SmoothnessParams
    solver: str
    mode: str
    epsilon: float
    outer_iterations: int
    gradient_evals: int
    matvec_products: int
    final_relative_error: float
    wall_time: float
    termination: str

    def as_csv(self) -> list:
        p = self.params
        return [_fmt(v) for v in (
            self.seed, self.n, self.m, p.m_x, p.m_y, p.L_x, p.L_xy, p.L_y,
            self.solver, self.mode, self.epsilon, self.outer_iterations,
            self.gradient_evals, self.matvec_products,
            self.final_relative_error, self.wall_time, self.termination)]


def _require(cond, path, message):
    if not cond:
        raise ConfigError(f"{path}: {message}")


def _params_from(obj, path) -> SmoothnessParams:
    _require(isinstance(obj, dict), path, "expected an object")
    for name in ("m_x", "m_y", "L_x", "L_xy", "L_y"):
        _require(name in obj, f"{path}.{name}", "missing")
        _require(isinstance(obj[name], (int, float)), f"{path}.{name}",
                 "must be a number")
    try:
        return SmoothnessParams(m_x=float(obj["m_x"]), m_y=float(obj["m_y"]),
                                L_x=float(obj["L_x"]), L_xy=float(obj["L_xy"]),
                                L_y=float(obj["L_y"]))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated solve/sweep description; see from_dict for the schema."""

    n: int
    m: int
    params: SmoothnessParams
    solvers: tuple
    mode: str = "practical"
    epsilon: float = 1e-6
    seeds: tuple = (0,)
    k: int | None = None
    spectrum: SpectrumShape = SpectrumShape.Endpoints
    rho: float = 0.0
    instance_path: str | None = None
    sweep_parameter: str | None = None
    sweep_values: tuple = ()
    iteration_cap: int | None = None
    out: str | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        _require(isinstance(raw, dict), "config", "expected a JSON object")
        known = {"instance", "solver", "solvers", "mode", "epsilon", "seed",
                 "seeds", "k", "sweep", "iteration_cap", "out"}
        for key in raw:
            _require(key in known, key, "unknown field")

        inst = raw.get("instance")
        _require(isinstance(inst, dict), "instance", "missing or not an object")
        path = inst.get("path")
        if path is not None:
            q = load_instance(path)
            _require(q.params is not None, "instance.path",
                     "stored instance lacks declared parameters")
            n, m, params = q.n, q.m, q.params
        else:
            for name in ("n", "m"):
                _require(isinstance(inst.get(name), int) and inst[name] >= 1,
                         f"instance.{name}", "must be a positive integer")
            n, m = inst["n"], inst["m"]
            params = _params_from(inst.get("params"), "instance.params")
        shape = inst.get("spectrum", "endpoints")
        try:
            spectrum = SpectrumShape(shape)
        except ValueError:
            raise ConfigError(f"instance.spectrum: unknown shape {shape!r}")
        rho = inst.get("rho", 0.0)
        _require(isinstance(rho, (int, float)) and rho >= 0, "instance.rho",
                 "must be a nonnegative number")
        _require(not (rho > 0 and path is not None), "instance.rho",
                 "perturbed instances are generated, not loaded from disk")

        if "solvers" in raw:
            solvers = raw["solvers"]
            _require(isinstance(solvers, list) and solvers, "solvers",
                     "must be a nonempty list")
        else:
            _require("solver" in raw, "solver", "missing")
            solvers = [raw["solver"]]
        for s in solvers:
            _require(s in SOLVERS, "solver", f"unknown solver {s!r}, "
                     f"expected one of {', '.join(SOLVERS)}")
            _require(not (s == "rhss" and rho > 0), "solver",
                     "rhss needs explicit matrices, not a perturbed oracle")

        mode = raw.get("mode", "practical")
        _require(mode in MODES, "mode", f"expected one of {', '.join(MODES)}")
        epsilon = raw.get("epsilon", 1e-6)
        _require(isinstance(epsilon, (int, float)) and 0 < epsilon < 1,
                 "epsilon", "must be in (0, 1)")

        if "seeds" in raw:
            seeds = raw["seeds"]
            _require(isinstance(seeds, list) and seeds
                     and all(isinstance(s, int) for s in seeds),
                     "seeds", "must be a nonempty list of integers")
        else:
            seed = raw.get("seed", 0)
            _require(isinstance(seed, int), "seed", "must be an integer")
            seeds = [seed]

        k = raw.get("k")
        if k is not None:
            _require(isinstance(k, int) and k >= 1, "k",
                     "must be a positive integer")
        cap = raw.get("iteration_cap")
        if cap is not None:
            _require(isinstance(cap, int) and cap >= 1, "iteration_cap",
                     "must be a positive integer")

        sweep_parameter, sweep_values = None, ()
        if "sweep" in raw:
            sw = raw["sweep"]
            _require(isinstance(sw, dict), "sweep", "expected an object")
            sweep_parameter = sw.get("parameter")
            _require(sweep_parameter in SWEEP_PARAMETERS, "sweep.parameter",
                     f"expected one of {', '.join(SWEEP_PARAMETERS)}")
            values = sw.get("values")
            _require(isinstance(values, list) and values, "sweep.values",
                     "must be a nonempty list")
            _require(all(isinstance(v, (int, float)) and v > 0 for v in values),
                     "sweep.values", "must be positive numbers")
            _require(all(a < b for a, b in zip(values, values[1:])),
                     "sweep.values", "must be strictly increasing")
            sweep_values = tuple(float(v) for v in values)
            _require(path is None, "sweep",
                     "sweeps rebuild instances, so they need a generated "
                     "instance, not instance.path")

        return cls(n=n, m=m, params=params, solvers=tuple(solvers), mode=mode,
                   epsilon=float(epsilon), seeds=tuple(seeds), k=k,
                   spectrum=spectrum, rho=float(rho), instance_path=path,
                   sweep_parameter=sweep_parameter, sweep_values=sweep_values,
                   iteration_cap=cap, out=raw.get("out"))

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"config line {exc.lineno} column {exc.colno}: {exc.msg}")
        return cls.from_dict(raw)


def _instance_params(base: SmoothnessParams, parameter, value) -> SmoothnessParams:
    if parameter is None:
        return base
    if parameter == "L_xy":
        return SmoothnessParams(m_x=base.m_x, m_y=base.m_y, L_x=base.L_x,
                                L_xy=value, L_y=base.L_y)
    # kappa: scale both blockwise constants to the requested conditioning
    return SmoothnessParams(m_x=base.m_x, m_y=base.m_y,
                            L_x=value * base.m_x, L_xy=base.L_xy,
                            L_y=value * base.m_y)


def start_point(n: int, m: int, seed: int) -> JointPoint:
    gen = np.random.Generator(np.random.Philox(key=[seed, 1]))
    return JointPoint(gen.standard_normal(n), gen.standard_normal(m))


def _solver_report(solver, oracle, q, z0, params, mode, epsilon, k, cap):
    root2 = math.sqrt(2.0)
    if solver == "abr":
        eps = epsilon / root2
        return abr_solve(oracle, z0, AbrConfig(
            epsilon=eps, params=params,
            **({} if cap is None else {"iteration_cap": cap})))
    if solver == "pbr":
        eps = epsilon / root2 if mode == "theoretical" else epsilon
        return pbr_solve(oracle, z0, eps, params, mode=mode,
                         iteration_cap=cap)
    if solver == "rhss":
        depth = k if k is not None else optimal_k(params)
        return rhss_solve(q, z0, RhssConfig(k=depth, epsilon=epsilon,
                                            mode=mode, iteration_cap=cap))
    grad_eps = epsilon * min(params.m_x, params.m_y) / (2.0 * params.L)
    step = gda_default_step(params) if solver == "gda" else eg_default_step(params)
    run = gda_solve if solver == "gda" else eg_solve
    return run(oracle, z0, BaselineConfig(
        step=step, epsilon=grad_eps,
        iteration_cap=5_000_000 if cap is None else cap))


def _run_cell(cfg: ExperimentConfig, params, seed, solver):
    if cfg.rho > 0:
        inst = log_perturbed_instance(
            InstanceSpec(cfg.n, cfg.m, params, seed,
                         spectrum_shape=cfg.spectrum), cfg.rho)
        q, oracle, run_params = None, inst.oracle(), inst.params
        z_star = inst.reference_saddle()
    else:
        if cfg.instance_path is not None:
            q = load_instance(cfg.instance_path)
        else:
            q = make_quadratic(InstanceSpec(cfg.n, cfg.m, params, seed,
                                            spectrum_shape=cfg.spectrum))
        oracle, run_params = quadratic_oracle(q), params
        z_star = direct_saddle(q)
    z0 = start_point(cfg.n, cfg.m, seed)
    err0 = weighted_error(z0, z_star)[1]

    begin = time.perf_counter()
    report = _solver_report(solver, oracle, q, z0, run_params, cfg.mode,
                            cfg.epsilon, cfg.k, cfg.iteration_cap)
    wall = time.perf_counter() - begin
    err = weighted_error(report.final_point, z_star)[1]
    rel = err / err0 if err0 > 0 else 0.0
    return SweepRow(
        seed=seed, n=cfg.n, m=cfg.m, params=params, solver=solver,
        mode=cfg.mode, epsilon=cfg.epsilon,
        outer_iterations=report.outer_iterations,
        gradient_evals=report.gradient_evals,
        matvec_products=report.matvec_products,
        final_relative_error=rel, wall_time=wall,
        termination=str(report.termination),
    ), report


def write_rows(path, rows):
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.as_csv())
    return path


def run_solve(cfg: ExperimentConfig):
    """One instance, one solver, one row. Returns (report, row)."""
    _require(cfg.sweep_parameter is None, "sweep",
             "run_solve takes a sweep-free config")
    _require(len(cfg.solvers) == 1, "solvers", "run_solve takes one solver")
    row, report = _run_cell(cfg, cfg.params, cfg.seeds[0], cfg.solvers[0])
    if cfg.out is not None:
        write_rows(cfg.out, [row])
    return report, row


def run_sweep(cfg: ExperimentConfig):
    """Grid x seeds x solvers rows, a median summary, and bound curves.

    A failing cell is recorded in its row's termination field and the sweep
    continues. Files land under cfg.out (a directory) when given: rows.csv,
    summary.csv, bounds.csv.
    """
    _require(cfg.sweep_parameter is not None, "sweep", "missing sweep grid")
    rows = []
    for value in cfg.sweep_values:
        params = _instance_params(cfg.params, cfg.sweep_parameter, value)
        for seed in cfg.seeds:
            for solver in cfg.solvers:
                try:
                    row, _ = _run_cell(cfg, params, seed, solver)
                except Exception as exc:  # recorded, never aborts the sweep
                    row = SweepRow(
                        seed=seed, n=cfg.n, m=cfg.m, params=params,
                        solver=solver, mode=cfg.mode, epsilon=cfg.epsilon,
                        outer_iterations=0, gradient_evals=0,
                        matvec_products=0, final_relative_error=math.nan,
                        wall_time=0.0,
                        termination=f"Error({type(exc).__name__})")
                rows.append(row)

    summary = []
    for value in cfg.sweep_values:
        for solver in cfg.solvers:
            cell = [r for r in rows
                    if r.solver == solver and _grid_value(r, cfg) == value]
            done = [r for r in cell if not math.isnan(r.final_relative_error)]
            if not done:
                continue
            summary.append((
                solver, cfg.mode, cfg.sweep_parameter, value, len(done),
                float(np.median([r.gradient_evals for r in done])),
                float(np.median([r.matvec_products for r in done])),
                float(np.median([r.final_relative_error for r in done])),
                max(r.final_relative_error for r in done),
            ))

    curves = []
    if cfg.sweep_parameter == "L_xy":
        curves = bound_curves(cfg.params, cfg.sweep_values, cfg.epsilon)

    if cfg.out is not None:
        out = pathlib.Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        write_rows(out / "rows.csv", rows)
        with open(out / "summary.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(SUMMARY_COLUMNS)
            for entry in summary:
                writer.writerow([_fmt(v) for v in entry])
        with open(out / "bounds.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("label", "L_xy", "complexity"))
            for curve in curves:
                for l_xy, complexity in curve.values:
                    writer.writerow([curve.label, _fmt(l_xy), _fmt(complexity)])
    return rows, summary, curves


def _grid_value(row: SweepRow, cfg: ExperimentConfig) -> float:
    if cfg.sweep_parameter == "L_xy":
        return row.params.L_xy
    return row.params.L_x / row.params.m_x


# ---------------------------------------------------------------------------
# Validation suites: named property checks over seeded instance families.

FACT_PARAMS = SmoothnessParams(m_x=1.0, m_y=2.0, L_x=12.0, L_xy=4.0, L_y=9.0)


def _fact_suite(seed_offset, instances=20, points=1000, slack=1e-9):
    checks = []
    worst = {"br_lipschitz": 0.0, "norm_sandwich": 0.0,
             "grad_sandwich": 0.0, "gap_quadratic": 0.0}
    for i in range(instances):
        q = make_quadratic(InstanceSpec(6, 5, FACT_PARAMS, seed_offset + i))
        p = FACT_PARAMS
        zs = direct_saddle(q)
        x_of, y_of = best_response_maps(q)
        gen = np.random.Generator(np.random.Philox(key=[seed_offset + i, 4]))
        xs = zs.x + gen.standard_normal((points, 6))
        ys = zs.y + gen.standard_normal((points, 5))
        for j in range(points):
            x1, x2 = xs[j], xs[(j + 1) % points]
            y1, y2 = ys[j], ys[(j + 1) % points]
            # best-response maps are coupling/modulus Lipschitz
            lip_y = np.linalg.norm(y_of(x1) - y_of(x2)) / (
                (p.L_xy / p.m_y) * np.linalg.norm(x1 - x2))
            lip_x = np.linalg.norm(x_of(y1) - x_of(y2)) / (
                (p.L_xy / p.m_x) * np.linalg.norm(y1 - y2))
            worst["br_lipschitz"] = max(worst["br_lipschitz"], lip_y, lip_x)
            # summed/joint norm sandwich
            z = JointPoint(x1, y1)
            s, j_norm = weighted_error(z, zs)
            worst["norm_sandwich"] = max(
                worst["norm_sandwich"], s / (math.sqrt(2.0) * j_norm),
                j_norm / s)
            # gradient norm sandwiched by distance
            gx, gy = q.grad(x1, y1)
            gnorm = math.hypot(np.linalg.norm(gx), np.linalg.norm(gy))
            worst["grad_sandwich"] = max(
                worst["grad_sandwich"],
                min(p.m_x, p.m_y) * j_norm / gnorm,
                gnorm / (2.0 * p.L * j_norm))
            # duality gap is at most quadratic in the distance
            gap = duality_gap(q, z)
            worst["gap_quadratic"] = max(
                worst["gap_quadratic"],
                gap / (p.L ** 2 / min(p.m_x, p.m_y) * j_norm ** 2))
    for name, ratio in worst.items():
        checks.append({"name": name, "worst_ratio": ratio,
                       "passed": bool(ratio <= 1.0 + slack)})
    return checks


def _contraction_suite(seed_offset, instances=20):
    checks = []
    params = SmoothnessParams(m_x=1.0, m_y=4.0, L_x=40.0, L_xy=0.8, L_y=40.0)
    worst_ratio, worst_final = 0.0, 0.0
    for i in range(instances):
        q = make_quadratic(InstanceSpec(12, 10, params, seed_offset + i))
        zs = direct_saddle(q)
        z0 = start_point(12, 10, seed_offset + i)
        for eps in (1e-2, 1e-4):
            trace = []
            report = abr_solve(quadratic_oracle(q), z0,
                               AbrConfig(eps, params), trace=trace)
            s0, _ = weighted_error(z0, zs)
            sT, _ = weighted_error(report.final_point, zs)
            worst_final = max(worst_final, sT / (eps * s0))
            ratios = abr_round_contraction(trace, zs, params)
            if len(ratios):
                worst_ratio = max(worst_ratio, float(np.max(ratios)))
    checks.append({"name": "round_weighted_contraction",
                   "worst_ratio": worst_ratio / 0.55,
                   "passed": bool(worst_ratio <= 0.55)})
    checks.append({"name": "summed_error_guarantee",
                   "worst_ratio": worst_final,
                   "passed": bool(worst_final <= 1.0)})

    worst_agd = 0.0
    for kappa in (10.0, 100.0, 1000.0):
        A = np.diag(np.geomspace(1.0, kappa, 12))
        x_star = np.linspace(-1.0, 1.0, 12)
        b = A @ x_star
        x = np.zeros(12)
        for T in (10, 40, 160):
            cfg = AgdConfig(l=kappa, m=1.0, T=T)
            out = agd(lambda v: A @ v - b, x, cfg)
            bound = agd_error_bound(cfg, float(np.linalg.norm(x - x_star) ** 2))
            err2 = float(np.linalg.norm(out - x_star) ** 2)
            worst_agd = max(worst_agd, err2 - bound)
    checks.append({"name": "agd_error_bound",
                   "worst_ratio": worst_agd,
                   "passed": bool(worst_agd <= 1e-9)})
    return checks


def _hss_spectral_suite(seed_offset, instances=20):
    params = SmoothnessParams(m_x=1.0, m_y=1.0, L_x=40.0, L_xy=8.0, L_y=40.0)
    import scipy.linalg
    worst = {"iteration_norm": 0.0, "step_ratio": 0.0, "symmetric_window": 0.0,
             "shifted_conditioning": 0.0, "saddle_window": 0.0}
    for i in range(instances):
        q = make_quadratic(InstanceSpec(7, 5, params, seed_offset + i))
        zs = direct_saddle(q)
        zv = np.concatenate([zs.x, zs.y])
        sv = np.linalg.svd(q.J, compute_uv=False)
        worst["saddle_window"] = max(
            worst["saddle_window"],
            (min(params.m_x, params.m_y) - sv.min()) / params.m_x,
            (sv.max() - (params.L_xy + params.L_x)) / params.L_x)
        gen = np.random.Generator(np.random.Philox(key=[seed_offset + i, 5]))
        for k in (2, 3):
            ops = HssOperators(q, params, k)
            lam = scipy.linalg.eigh(ops.g_matrix(), ops.p_matrix(),
                                    eigvals_only=True)
            worst["symmetric_window"] = max(
                worst["symmetric_window"],
                (params.m_y / 2.0 - lam.min()) / params.m_y,
                (lam.max() - 1.0 / ops.beta) * ops.beta)
            spectral = float(np.abs((lam - ops.eta) / (lam + ops.eta)).max())
            rho = float(np.abs(np.linalg.eigvals(ops.iteration_matrix())).max())
            worst["iteration_norm"] = max(worst["iteration_norm"],
                                          rho - spectral, spectral - 1.0)
            shifted = np.linalg.eigvalsh(ops.eta * ops.p_matrix() + ops.g_matrix())
            s = (params.m_y / params.L_xy) ** (1.0 / k)
            cond_bound = min(3.0 * params.kappa_x * s, params.kappa_x)
            worst["shifted_conditioning"] = max(
                worst["shifted_conditioning"],
                shifted.max() / shifted.min() / cond_bound - 1.0)
            factor = contraction_factor(params, k)
            for _ in range(10):
                z = zv + gen.standard_normal(12)
                z1 = hss_exact_step(ops, z, q.b)
                ratio = ops.split_norm(z1 - zv) / ops.split_norm(z - zv)
                worst["step_ratio"] = max(worst["step_ratio"],
                                          ratio - (factor + 1e-10))
    return [{"name": name, "worst_ratio": v, "passed": bool(v <= 1e-9)}
            for name, v in worst.items()]


def _theorem_conformance_suite(seed_offset, instances=2):
    checks = []
    # proximal best response in theoretical mode hits its a priori outer count
    params = SmoothnessParams(m_x=1.0, m_y=1.0, L_x=6.0, L_xy=2.0, L_y=6.0)
    worst_pbr, bound_matches = 0.0, True
    for i in range(instances):
        q = make_quadratic(InstanceSpec(6, 6, params, seed_offset + i))
        zs = direct_saddle(q)
        z0 = start_point(6, 6, seed_offset + i)
        eps = 1e-4
        report = pbr_solve(quadratic_oracle(q), z0, eps, params,
                           mode="theoretical")
        consts = PbrConstants.from_params(params)
        t_hat = theorem2_iteration_bound(params, consts.beta1, eps)
        bound_matches &= report.outer_iterations <= t_hat
        s0, _ = weighted_error(z0, zs)
        sT, _ = weighted_error(report.final_point, zs)
        worst_pbr = max(worst_pbr, sT / (eps * s0))
    checks.append({"name": "pbr_outer_iterations_within_bound",
                   "worst_ratio": 0.0 if bound_matches else 2.0,
                   "passed": bool(bound_matches)})
    checks.append({"name": "pbr_summed_error_guarantee",
                   "worst_ratio": worst_pbr, "passed": bool(worst_pbr <= 1.0)})

    # recursive split solver: residual certificate and outer contraction
    params = SmoothnessParams(m_x=1.0, m_y=1.0, L_x=40.0, L_xy=8.0, L_y=40.0)
    worst_cert, worst_contraction = 0.0, 0.0
    for i in range(1):
        q = make_quadratic(InstanceSpec(8, 6, params, seed_offset + i))
        zs = direct_saddle(q)
        z0 = start_point(8, 6, seed_offset + i)
        for k in (2, 3):
            eps = 1e-4
            trace = []
            report = rhss_solve(q, z0, RhssConfig(k=k, epsilon=eps,
                                                  mode="theoretical"),
                                trace=trace)
            _, e0 = weighted_error(z0, zs)
            _, eT = weighted_error(report.final_point, zs)
            worst_cert = max(worst_cert, eT / (eps * e0))
            bound = 1.0 - 0.25 * (params.m_y / params.L_xy) ** (1.0 / k)
            errs = [weighted_error(z, zs)[1] for z in trace]
            for prev, cur in zip(errs, errs[1:]):
                if prev > 1e-13:
                    worst_contraction = max(worst_contraction,
                                            cur / prev - bound)
    checks.append({"name": "rhss_residual_certificate",
                   "worst_ratio": worst_cert, "passed": bool(worst_cert <= 1.0)})
    checks.append({"name": "rhss_outer_contraction",
                   "worst_ratio": worst_contraction,
                   "passed": bool(worst_contraction <= 1e-10)})
    return checks


_SUITES = {
    "facts": _fact_suite,
    "contraction": _contraction_suite,
    "hss-spectral": _hss_spectral_suite,
    "spectral": _hss_spectral_suite,
    "theorem-conformance": _theorem_conformance_suite,
}


def validate(suite: str, seed_offset: int = 0, out=None) -> dict:
    """Run a named property suite; returns a machine-readable result."""
    if suite not in _SUITES:
        raise ConfigError(f"suite: unknown name {suite!r}, expected one of "
                          f"{', '.join(sorted(set(_SUITES)))}")
    checks = _SUITES[suite](seed_offset)
    result = {"suite": suite, "seed_offset": seed_offset,
              "passed": all(c["passed"] for c in checks), "checks": checks}
    if out is not None:
        out = pathlib.Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w") as fh:
            json.dump(result, fh, indent=2)
            fh.write("\n")
    return result
