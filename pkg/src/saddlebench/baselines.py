"""Reference first-order baselines: gradient descent-ascent and extragradient.

Both iterate on the monotone field F(z) = (grad_x f, -grad_y f), whose zero
is the saddle point, and stop on the gradient norm; the error sandwich
min{m} ||z - z*|| <= ||F(z)|| converts any gradient tolerance into an error
certificate. They are intentionally params-free: the caller picks the step
(helpers below compute the standard linearly convergent defaults) and the
gradient target.
"""

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import (
    EPS_FLOOR,
    GradientOracle,
    JointPoint,
    SmoothnessParams,
    SolveReport,
    Termination,
)


class Algorithm(enum.Enum):
    GDA = "gda"
    ExtraGradient = "eg"


def gda_default_step(params: SmoothnessParams) -> float:
    return min(params.m_x, params.m_y) / (2.0 * params.L ** 2)


def eg_default_step(params: SmoothnessParams) -> float:
    return 1.0 / (2.0 * params.L)


@dataclass(frozen=True)
class BaselineConfig:
    """Step size plus at least one of: a step budget T, a relative gradient
    target epsilon (||F(z_t)|| <= epsilon ||F(z0)||), or an absolute one."""

    step: float
    T: int | None = None
    epsilon: float | None = None
    abs_grad_tol: float | None = None
    algorithm: Algorithm | None = None
    iteration_cap: int = 1_000_000

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.T is None and self.epsilon is None and self.abs_grad_tol is None:
            raise ValueError("need a step budget T or a gradient target")
        if self.T is not None and self.T < 0:
            raise ValueError("T must be >= 0")
        if self.epsilon is not None and self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.abs_grad_tol is not None and self.abs_grad_tol <= 0:
            raise ValueError("abs_grad_tol must be positive")


def _field(oracle, z):
    gx, gy = oracle.eval(z)
    return np.concatenate([gx, -gy])


def _run(oracle: GradientOracle, z0: JointPoint, cfg: BaselineConfig,
         extragradient: bool) -> SolveReport:
    """Shared loop. The gradient at the current point opens each iteration
    and serves the stop check, the divergence check, and the (half) step,
    so a pure step-budget run costs exactly one eval per GDA step and two
    per extragradient iteration; a tolerance stop costs one final check."""
    z = np.concatenate([z0.x, z0.y])
    n = z0.x.size
    start = oracle.counter

    def field(v):
        return _field(oracle, JointPoint(v[:n], v[n:]))

    target = None
    g0 = None
    budget = min(cfg.T, cfg.iteration_cap) if cfg.T is not None else cfg.iteration_cap

    history = []
    steps = 0
    diverged = False
    reached = False
    while steps < budget or target is not None or (g0 is None and cfg.T is None):
        g = field(z)
        gnorm = float(np.linalg.norm(g))
        history.append((oracle.counter - start, gnorm))
        if g0 is None:
            g0 = gnorm
            targets = []
            if cfg.epsilon is not None:
                targets.append(max(cfg.epsilon * g0, EPS_FLOOR * max(1.0, g0)))
            if cfg.abs_grad_tol is not None:
                targets.append(cfg.abs_grad_tol)
            target = max(targets) if targets else None
        if target is not None and gnorm <= target:
            reached = True
            break
        if not math.isfinite(gnorm) or gnorm > 1e6 * max(g0, 1.0):
            diverged = True
            break
        if steps >= budget:
            break
        if extragradient:
            z = z - cfg.step * field(z - cfg.step * g)
        else:
            z = z - cfg.step * g
        steps += 1

    if diverged:
        warnings.warn("gradient norm grew by more than 1e6; divergence",
                      stacklevel=3)
        termination = Termination.IterationCap
    elif target is not None and not reached:
        termination = Termination.IterationCap
    else:
        termination = Termination.ToleranceMet
    evals = oracle.counter - start
    return SolveReport(
        outer_iterations=steps,
        gradient_evals=evals,
        matvec_products=evals * oracle.matvecs_per_eval,
        final_point=JointPoint(z[:n].copy(), z[n:].copy()),
        residual_history=history,
        termination=termination,
    )


def gda_solve(oracle: GradientOracle, z0: JointPoint,
              cfg: BaselineConfig) -> SolveReport:
    """Simultaneous gradient descent-ascent, one gradient eval per step."""
    if cfg.algorithm not in (None, Algorithm.GDA):
        raise ValueError(f"config is tagged {cfg.algorithm}, not GDA")
    return _run(oracle, z0, cfg, extragradient=False)


def eg_solve(oracle: GradientOracle, z0: JointPoint,
             cfg: BaselineConfig) -> SolveReport:
    """Extragradient: probe step then corrected step, two evals per iteration."""
    if cfg.algorithm not in (None, Algorithm.ExtraGradient):
        raise ValueError(f"config is tagged {cfg.algorithm}, not ExtraGradient")
    return _run(oracle, z0, cfg, extragradient=True)
