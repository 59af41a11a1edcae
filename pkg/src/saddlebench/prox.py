"""Inexact accelerated proximal point solvers for saddle problems.

Three nested layers. appa_minimax runs the extrapolated proximal outer loop
in x, delegating each augmented subproblem to a caller-supplied subsolver.
appa_abr is that subsolver's middle layer: the same proximal loop applied to
the y block (realized by flipping min and max), whose own subproblems are
weakly coupled enough for alternating best response. pbr_solve wires the
three levels together.

Theoretical mode honors the analysis constants exactly; Practical mode swaps
them for configurable inner tolerances and a certified gradient stopping
rule, since the theoretical constants are astronomically conservative.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .abr import AbrConfig, abr_solve
from .core import (
    EPS_FLOOR,
    GradientOracle,
    JointPoint,
    SmoothnessParams,
    SolveReport,
    Termination,
    flip_minmax,
    prox_augment_x,
    weighted_error,
)

MIDDLE_CAP = 100_000


@dataclass(frozen=True)
class AppaConfig:
    """Proximal loop constants; kappa is the prox-to-modulus ratio."""

    beta: float
    modulus: float
    M: float
    T: int | None = None
    iteration_cap: int = 100_000

    def __post_init__(self):
        if not (0 < self.modulus <= self.beta):
            raise ValueError(f"need beta >= modulus > 0, got beta={self.beta}, "
                             f"modulus={self.modulus}")
        if self.M <= 1:
            raise ValueError(f"inner precision multiplier must exceed 1, got {self.M}")
        if self.T is not None and self.T < 0:
            raise ValueError("outer iteration count must be >= 0")

    @property
    def kappa(self) -> float:
        return self.beta / self.modulus

    @property
    def theta(self) -> float:
        rk = 2.0 * math.sqrt(self.kappa)
        return (rk - 1.0) / (rk + 1.0)

    @property
    def tau(self) -> float:
        return 1.0 / (2.0 * math.sqrt(self.kappa) + 4.0 * self.kappa)


@dataclass(frozen=True)
class PbrConstants:
    beta1: float
    beta2: float
    M1: float
    M2: float

    @classmethod
    def from_params(cls, params: SmoothnessParams) -> "PbrConstants":
        L = params.L
        return cls(
            beta1=max(params.m_x, params.L_xy),
            beta2=max(params.m_y, params.L_xy),
            M1=80.0 * L**3 / (params.m_x * params.m_y) ** 1.5,
            M2=96.0 * L**2.5 / (params.m_x * params.m_y**1.5),
        )


def theorem2_iteration_bound(params: SmoothnessParams, beta: float,
                             epsilon: float) -> int:
    """Outer iterations sufficient for the proximal loop to reach ratio eps."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    kappa = beta / params.m_x
    L = params.L
    bracket = (28.0 * kappa**2 * (L / params.m_y)
               * math.sqrt(L**2 / (params.m_x * params.m_y)) / epsilon)
    return max(math.ceil(8.0 * math.sqrt(kappa) * math.log(bracket)), 0)


def theorem2_m_requirement(params: SmoothnessParams, beta: float) -> float:
    """Smallest inner multiplier M the outer convergence proof assumes."""
    kappa = beta / params.m_x
    L = params.L
    inner = (2.0 * kappa + L / params.m_x
             + params.L_xy**2 / (params.m_x * params.m_y))
    return 20.0 * kappa * math.sqrt(inner) * (1.0 + L / params.m_y)


def appa_minimax(oracle: GradientOracle, z0: JointPoint, cfg: AppaConfig,
                 subsolver, stop=None) -> SolveReport:
    """Extrapolated inexact proximal point loop on the x block.

    Each iteration solves min_x max_y f + beta ||x - x_hat||^2 through
    subsolver(augmented_oracle, warm_start) -> JointPoint, which must return
    a point whose summed error to the augmented saddle is at most 1/M of the
    warm start's. The anchor extrapolates as
    x_hat_t = x_t + theta (x_t - x_{t-1}) + tau (x_t - x_hat_{t-1}).

    stop(point), if given, is consulted at z0 and after every iteration; it
    owns any gradient evaluations it makes. Without it the loop runs cfg.T
    iterations (required in that case).
    """
    if cfg.T is None and stop is None:
        raise ValueError("need either an iteration count or a stopping rule")
    start = oracle.counter
    theta, tau = cfg.theta, cfg.tau

    z = z0.copy()
    x_prev = z0.x.copy()
    x_hat = z0.x.copy()
    history = []
    iterations = 0
    budget = cfg.T if cfg.T is not None else cfg.iteration_cap
    budget = min(budget, cfg.iteration_cap)
    termination = Termination.ToleranceMet

    if stop is not None and stop(z):
        pass
    else:
        while True:
            if iterations >= budget:
                if cfg.T is None or cfg.T > cfg.iteration_cap:
                    termination = Termination.IterationCap
                break
            aug = prox_augment_x(oracle, cfg.beta, x_hat)
            z_new = subsolver(aug, z)
            iterations += 1
            x_hat = z_new.x + theta * (z_new.x - x_prev) + tau * (z_new.x - x_hat)
            x_prev = z_new.x.copy()
            history.append((oracle.counter - start, weighted_error(z_new, z)[1]))
            z = z_new
            if stop is not None and stop(z):
                break

    evals = oracle.counter - start
    return SolveReport(
        outer_iterations=iterations,
        gradient_evals=evals,
        matvec_products=evals * oracle.matvecs_per_eval,
        final_point=z.copy(),
        residual_history=history,
        termination=termination,
    )


def appa_abr(oracle: GradientOracle, z0: JointPoint, M1: float,
             params: SmoothnessParams, beta1: float, M2: float | None = None,
             iteration_cap: int = MIDDLE_CAP, certified: bool = True,
             grad_floor: float = 0.0) -> SolveReport:
    """Middle layer of the proximal stack, run on the y block.

    oracle must already carry the beta1 x-augmentation of the base function
    whose class parameters are `params`. The y block is proximally augmented
    with beta2 = max(m_y, L_xy); the resulting doubly augmented problem is
    flipped (min and max swap) and handed to the same proximal loop, whose
    inner subproblems satisfy the weak-coupling hypothesis by construction
    and are solved by alternating best response to target 1/M2.

    With certified=True the loop stops once the augmented gradient norm
    falls to (min(m_x, m_y) / (9 L M1)) of its value at z0, which certifies
    a summed error ratio of at most 1/M1 against the augmented saddle, and
    the subproblem class bounds use the analysis' 3L smoothness. With
    certified=False the stop is a plain gradient-ratio test at 1/M1 and the
    subproblem declares the tighter L + 2 beta smoothness; cheaper, and
    adequate when the caller certifies its own final answer. grad_floor, if
    positive, ends the loop at that absolute gradient norm regardless.
    """
    beta2 = max(params.m_y, params.L_xy)
    L = params.L
    if M2 is None:
        M2 = PbrConstants.from_params(params).M2
    # the doubly augmented problem seen by the flipped proximal loop
    if certified:
        L_xx, L_yy = 3.0 * L, 3.0 * L
    else:
        L_xx, L_yy = L + 2.0 * beta2, L + 2.0 * beta1
    sub_params = SmoothnessParams(m_x=2.0 * beta2, m_y=2.0 * beta1,
                                  L_x=L_xx, L_xy=params.L_xy, L_y=L_yy)
    if params.L_xy > 0.5 * math.sqrt(4.0 * beta1 * beta2):
        raise AssertionError("coupling check failed despite beta construction")

    if certified:
        rel = max(min(params.m_x, params.m_y) / (9.0 * L * M1), EPS_FLOOR)
    else:
        rel = max(1.0 / M1, EPS_FLOOR)
    flipped = flip_minmax(oracle)
    z0_f = JointPoint(z0.y, z0.x)
    start = oracle.counter

    grad_history = []
    threshold = None
    norm0 = None
    diverged = False

    def stop(pt: JointPoint) -> bool:
        nonlocal threshold, norm0, diverged
        gp, gq = flipped.eval_xy(pt.x, pt.y)
        norm = float(np.hypot(np.linalg.norm(gp), np.linalg.norm(gq)))
        grad_history.append((oracle.counter - start, norm))
        if threshold is None:
            # absolute floor keeps the target representable when z0 is
            # already at (numerical) stationarity
            threshold = max(rel * norm, EPS_FLOOR * max(1.0, norm))
            norm0 = norm
        if not np.isfinite(norm) or norm > 1e6 * max(norm0, 1.0):
            diverged = True
            return True
        return norm <= max(threshold, grad_floor)

    abr_eps = 1.0 / M2

    def subsolver(aug: GradientOracle, warm: JointPoint) -> JointPoint:
        report = abr_solve(aug, warm, AbrConfig(abr_eps, sub_params,
                                                iteration_cap=iteration_cap))
        if report.termination is Termination.PreconditionViolated:
            raise AssertionError("inner coupling check cannot fail here")
        return report.final_point

    cfg = AppaConfig(beta=beta2, modulus=params.m_y, M=M1, T=None,
                     iteration_cap=iteration_cap)
    inner = appa_minimax(flipped, z0_f, cfg, subsolver, stop=stop)

    final = JointPoint(inner.final_point.y, inner.final_point.x)
    termination = inner.termination
    if diverged:
        warnings.warn("augmented gradient norm grew by more than 1e6; "
                      "stopping the middle proximal loop", stacklevel=2)
        termination = Termination.IterationCap
    return SolveReport(
        outer_iterations=inner.outer_iterations,
        gradient_evals=inner.gradient_evals,
        matvec_products=inner.matvec_products,
        final_point=final,
        residual_history=grad_history,
        termination=termination,
    )


def pbr_solve(oracle: GradientOracle, z0: JointPoint, epsilon: float,
              params: SmoothnessParams, mode: str = "practical",
              inner_tol: float = 2e-2, abr_tol: float | None = None,
              iteration_cap: int | None = None) -> SolveReport:
    """Proximal best response: the full three-level solver.

    Outer proximal loop in x with beta1 = max(m_x, L_xy); each subproblem
    goes to appa_abr. In theoretical mode all precision multipliers and the
    outer iteration count follow the analysis exactly and epsilon is a summed
    error ratio. In practical mode (the benchmark default) the middle layer
    stops at gradient ratio inner_tol per call, best response runs to abr_tol
    (defaults to inner_tol), and the outer loop stops at a gradient threshold
    that certifies ||z_T - z*|| <= epsilon ||z0 - z*|| regardless of how
    loose the inner layers were: ||grad f(z)|| <= epsilon * min(m)
    * ||grad f(z0)|| / (2L) suffices, since the gradient norm sandwiches the
    distance between min(m) and 2L times it.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    mode = mode.lower()
    if mode not in ("practical", "theoretical"):
        raise ValueError(f"unknown mode {mode!r}")
    consts = PbrConstants.from_params(params)
    beta1 = consts.beta1
    t_theory = theorem2_iteration_bound(params, beta1, epsilon)
    cap = iteration_cap if iteration_cap is not None else max(100 * t_theory, 100)
    diverged = False

    if mode == "theoretical":
        M1_eff, M2_eff = consts.M1, consts.M2
        required = theorem2_m_requirement(params, beta1)
        if M1_eff < required:
            warnings.warn(
                f"inner multiplier M1={M1_eff:.3g} is below the outer loop's "
                f"assumed {required:.3g}; the a priori iteration count may "
                "not certify the target", stacklevel=2)
        T = t_theory
        stop = None
        grad_history = None
    else:
        M1_eff = 1.0 / inner_tol
        M2_eff = 1.0 / (abr_tol if abr_tol is not None else inner_tol)
        T = None
        rel = max(epsilon * min(params.m_x, params.m_y) / (2.0 * params.L),
                  EPS_FLOOR)
        grad_history = []
        threshold = None
        norm0 = None
        start0 = oracle.counter

        def stop(pt: JointPoint) -> bool:
            nonlocal threshold, norm0, diverged
            gx, gy = oracle.eval_xy(pt.x, pt.y)
            norm = float(np.hypot(np.linalg.norm(gx), np.linalg.norm(gy)))
            grad_history.append((oracle.counter - start0, norm))
            if threshold is None:
                threshold = max(rel * norm, EPS_FLOOR * max(1.0, norm))
                norm0 = norm
            if not np.isfinite(norm) or norm > 1e6 * max(norm0, 1.0):
                diverged = True
                return True
            return norm <= threshold

    def subsolver(aug: GradientOracle, warm: JointPoint) -> JointPoint:
        if mode == "theoretical":
            return appa_abr(aug, warm, M1_eff, params, beta1=beta1,
                            M2=M2_eff).final_point
        # middle calls need not resolve below what the outer stop can use
        floor = 0.5 * threshold if threshold is not None else 0.0
        return appa_abr(aug, warm, M1_eff, params, beta1=beta1, M2=M2_eff,
                        certified=False, grad_floor=floor).final_point

    cfg = AppaConfig(beta=beta1, modulus=params.m_x, M=M1_eff, T=T,
                     iteration_cap=cap)
    report = appa_minimax(oracle, z0, cfg, subsolver, stop=stop)
    if grad_history is not None:
        report.residual_history = grad_history
    if mode == "practical" and diverged:
        warnings.warn("gradient norm grew by more than 1e6; divergence",
                      stacklevel=2)
        report.termination = Termination.IterationCap
    return report
