"""Nesterov's accelerated gradient descent for smooth strongly convex blocks.

This is the inner workhorse of the alternating best-response solver. The
iteration count is always supplied by the caller; there is no line search or
stopping rule inside, which keeps gradient accounting exact.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AgdConfig:
    l: float
    m: float
    T: int

    def __post_init__(self):
        if not (0 < self.m <= self.l):
            raise ValueError(f"need 0 < m <= l, got m={self.m}, l={self.l}")
        if self.T < 0 or int(self.T) != self.T:
            raise ValueError(f"iteration count must be a nonnegative integer, got {self.T}")

    @property
    def eta(self) -> float:
        return 1.0 / self.l

    @property
    def kappa(self) -> float:
        return self.l / self.m

    @property
    def theta(self) -> float:
        rk = math.sqrt(self.kappa)
        return (rk - 1.0) / (rk + 1.0)


def agd(g, x0, cfg: AgdConfig) -> np.ndarray:
    """Run exactly cfg.T accelerated gradient steps on gradient map g.

    Two-sequence recursion: x_t = x~_{t-1} - eta * g(x~_{t-1}) and
    x~_t = x_t + theta (x_t - x_{t-1}). Costs exactly T gradient evaluations.
    """
    eta, theta = cfg.eta, cfg.theta
    x_prev = np.asarray(x0, dtype=float).copy()
    x_tilde = x_prev.copy()
    for _ in range(cfg.T):
        x = x_tilde - eta * g(x_tilde)
        x_tilde = x + theta * (x - x_prev)
        x_prev = x
    return x_prev


def agd_error_bound(cfg: AgdConfig, initial_sq_error: float) -> float:
    """A priori bound on ||x_T - x*||^2 for an l-smooth m-strongly convex g."""
    kappa = cfg.kappa
    return (kappa + 1.0) * (1.0 - 1.0 / math.sqrt(kappa)) ** cfg.T * initial_sq_error


def abr_inner_steps(kappa: float) -> int:
    """Inner AGD step count ceil(2 sqrt(kappa) ln(24 kappa)) used per round."""
    if kappa < 1:
        raise ValueError(f"kappa must be >= 1, got {kappa}")
    return math.ceil(2.0 * math.sqrt(kappa) * math.log(24.0 * kappa))
