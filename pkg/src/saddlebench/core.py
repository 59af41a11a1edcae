"""Shared primitives for saddle-point solvers.

Points, smoothness parameters, the counted gradient-oracle access model,
proximal augmentation wrappers, and the coordinate rescaling that equalizes
the two blockwise smoothness constants.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

# Practical-mode stopping thresholds are never pushed below this relative floor.
EPS_FLOOR = 1e-12


@dataclass
class JointPoint:
    """A point (x, y) of the joint space R^n x R^m."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)

    @property
    def z(self) -> np.ndarray:
        """The stacked vector [x; y]."""
        return np.concatenate([self.x, self.y])

    @classmethod
    def from_z(cls, z, n: int) -> "JointPoint":
        z = np.asarray(z, dtype=float)
        return cls(z[:n].copy(), z[n:].copy())

    def copy(self) -> "JointPoint":
        return JointPoint(self.x.copy(), self.y.copy())


@dataclass(frozen=True)
class SmoothnessParams:
    """Class parameters (m_x, m_y, L_x, L_xy, L_y) of a saddle function.

    m_x, m_y are the strong convexity/concavity moduli, L_x, L_y the blockwise
    gradient Lipschitz constants, L_xy the coupling constant.
    """

    m_x: float
    m_y: float
    L_x: float
    L_xy: float
    L_y: float

    def __post_init__(self):
        if not (0 < self.m_x <= self.L_x):
            raise ValueError(f"need 0 < m_x <= L_x, got m_x={self.m_x}, L_x={self.L_x}")
        if not (0 < self.m_y <= self.L_y):
            raise ValueError(f"need 0 < m_y <= L_y, got m_y={self.m_y}, L_y={self.L_y}")
        if self.L_xy < 0:
            raise ValueError(f"need L_xy >= 0, got {self.L_xy}")

    @property
    def L(self) -> float:
        return max(self.L_x, self.L_xy, self.L_y)

    @property
    def kappa_x(self) -> float:
        return self.L_x / self.m_x

    @property
    def kappa_y(self) -> float:
        return self.L_y / self.m_y


def flipped_params(params: SmoothnessParams) -> SmoothnessParams:
    """Parameters of h(y, x) = -f(x, y): the two blocks swap roles."""
    return SmoothnessParams(
        m_x=params.m_y, m_y=params.m_x,
        L_x=params.L_y, L_xy=params.L_xy, L_y=params.L_x,
    )


class GradientOracle:
    """First-order access to f: eval(point) -> (grad_x, grad_y).

    The evaluation counter lives only at the root oracle; wrapper oracles
    (proximal augmentation, flips, rescales) delegate each of their
    evaluations to exactly one evaluation of the oracle they wrap, so the
    root counter is the gradient complexity of any composite run.
    """

    def __init__(self, n, m, eval_xy, root=None, matvecs_per_eval=0):
        self.n = int(n)
        self.m = int(m)
        self._eval_xy = eval_xy
        self._root = None if root is None else root.root()
        self._count = 0
        self._matvecs_per_eval = int(matvecs_per_eval)

    def root(self) -> "GradientOracle":
        return self if self._root is None else self._root

    @property
    def counter(self) -> int:
        """Total gradient evaluations charged to the root oracle."""
        return self.root()._count

    @property
    def matvecs_per_eval(self) -> int:
        """Matrix-vector products one evaluation costs (0 for non-matrix oracles)."""
        return self.root()._matvecs_per_eval

    def eval_xy(self, x, y):
        # Only the root increments; wrappers count through their inner call.
        if self._root is None:
            self._count += 1
        return self._eval_xy(x, y)

    def eval(self, point: JointPoint):
        return self.eval_xy(point.x, point.y)


def weighted_error(z: JointPoint, z_star: JointPoint):
    """Summed and joint Euclidean errors of z against z_star.

    Returns (sum_norm, joint_norm) with sum_norm = ||x - x*|| + ||y - y*||
    and joint_norm = ||z - z*||. They sandwich each other:
    sum_norm / sqrt(2) <= joint_norm <= sum_norm.
    """
    if z.x.shape != z_star.x.shape or z.y.shape != z_star.y.shape:
        raise ValueError("dimension mismatch between z and z_star")
    dx = np.linalg.norm(z.x - z_star.x)
    dy = np.linalg.norm(z.y - z_star.y)
    sum_norm = dx + dy
    joint_norm = float(np.hypot(dx, dy))
    return sum_norm, joint_norm


@dataclass(frozen=True)
class CoordinateMap:
    """Diagonal change of variables x = x_scale * x', y = y_scale * y'."""

    x_scale: float
    y_scale: float

    def to_original(self, point: JointPoint) -> JointPoint:
        return JointPoint(self.x_scale * point.x, self.y_scale * point.y)

    def to_transformed(self, point: JointPoint) -> JointPoint:
        return JointPoint(point.x / self.x_scale, point.y / self.y_scale)


def rescale(oracle: GradientOracle, params: SmoothnessParams):
    """Equalize the blockwise smoothness constants by rescaling coordinates.

    Defines g(x, y) = f(a x, c y) with a = (L_y/L_x)^(1/4), c = 1/a, so the
    rescaled function has L_x' = L_y' = sqrt(L_x L_y) while kappa_x, kappa_y,
    L_xy and the product m_x m_y are unchanged.

    Returns (rescaled oracle, rescaled params, map), where map carries the
    transformed point back to original coordinates.
    """
    a = (params.L_y / params.L_x) ** 0.25
    c = 1.0 / a

    if params.L_x == params.L_y:
        return oracle, params, CoordinateMap(1.0, 1.0)

    def eval_xy(x, y):
        gx, gy = oracle.eval_xy(a * x, c * y)
        return a * gx, c * gy

    new_params = SmoothnessParams(
        m_x=a * a * params.m_x,
        m_y=c * c * params.m_y,
        L_x=a * a * params.L_x,
        L_xy=params.L_xy,
        L_y=c * c * params.L_y,
    )
    wrapped = GradientOracle(oracle.n, oracle.m, eval_xy, root=oracle)
    return wrapped, new_params, CoordinateMap(a, c)


def prox_augment_x(oracle: GradientOracle, beta: float, x_hat) -> GradientOracle:
    """Oracle of f(x, y) + beta * ||x - x_hat||^2."""
    x_hat = np.asarray(x_hat, dtype=float)
    if x_hat.shape != (oracle.n,):
        raise ValueError(f"x_hat must have length {oracle.n}, got shape {x_hat.shape}")
    two_beta = 2.0 * beta

    def eval_xy(x, y):
        gx, gy = oracle.eval_xy(x, y)
        return gx + two_beta * (x - x_hat), gy

    return GradientOracle(oracle.n, oracle.m, eval_xy, root=oracle)


def prox_augment_y(oracle: GradientOracle, beta: float, y_hat) -> GradientOracle:
    """Oracle of f(x, y) - beta * ||y - y_hat||^2 (augmenting the max block)."""
    y_hat = np.asarray(y_hat, dtype=float)
    if y_hat.shape != (oracle.m,):
        raise ValueError(f"y_hat must have length {oracle.m}, got shape {y_hat.shape}")
    two_beta = 2.0 * beta

    def eval_xy(x, y):
        gx, gy = oracle.eval_xy(x, y)
        return gx, gy - two_beta * (y - y_hat)

    return GradientOracle(oracle.n, oracle.m, eval_xy, root=oracle)


def flip_minmax(oracle: GradientOracle) -> GradientOracle:
    """Oracle of h(p, q) = -f(q, p): block roles swap and signs negate.

    The returned oracle lives on R^m x R^n; its x-block gradient is -grad_y f
    and its y-block gradient is -grad_x f, both evaluated at (q, p).
    """

    def eval_xy(p, q):
        gx, gy = oracle.eval_xy(q, p)
        return -gy, -gx

    return GradientOracle(oracle.m, oracle.n, eval_xy, root=oracle)


class Termination(enum.Enum):
    ToleranceMet = "ToleranceMet"
    IterationCap = "IterationCap"
    PreconditionViolated = "PreconditionViolated"

    def __str__(self):
        return self.value


@dataclass
class SolveReport:
    """What a solver run did and produced."""

    outer_iterations: int
    gradient_evals: int
    matvec_products: int
    final_point: JointPoint
    residual_history: list = field(default_factory=list)
    termination: Termination = Termination.ToleranceMet

    def __post_init__(self):
        counts = [c for c, _ in self.residual_history]
        if any(b < a for a, b in zip(counts, counts[1:])):
            raise ValueError("residual_history eval counts must be nondecreasing")
