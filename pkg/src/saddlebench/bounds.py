"""Complexity-bound calculators for the solver family and its competitors.

Each bound comes in two variants: the full expression with its log factors,
and the leading term alone. Ordering claims (lower bound below the upper
bounds, tighter methods below looser ones) are only clean for leading terms,
so curve emission produces both as separately labeled series.
"""

import math
from dataclasses import dataclass

from .core import SmoothnessParams
from .rhss import optimal_k, theorem4_bound


def _check_epsilon(epsilon: float):
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")


def lower_leading(params: SmoothnessParams) -> float:
    return math.sqrt(params.kappa_x
                     + params.L_xy ** 2 / (params.m_x * params.m_y)
                     + params.kappa_y)


def lower_bound(params: SmoothnessParams, epsilon: float) -> float:
    _check_epsilon(epsilon)
    return lower_leading(params) * math.log(1.0 / epsilon)


def pbr_leading(params: SmoothnessParams) -> float:
    return math.sqrt(params.kappa_x
                     + params.L * params.L_xy / (params.m_x * params.m_y)
                     + params.kappa_y)


def pbr_bound(params: SmoothnessParams, epsilon: float) -> float:
    """Leading term times ln(1/eps); the remaining log factors are omitted."""
    _check_epsilon(epsilon)
    return pbr_leading(params) * math.log(1.0 / epsilon)


def linetal_leading(params: SmoothnessParams) -> float:
    return math.sqrt(params.L ** 2 / (params.m_x * params.m_y))


def linetal_bound(params: SmoothnessParams, epsilon: float) -> float:
    _check_epsilon(epsilon)
    return linetal_leading(params) * math.log(1.0 / epsilon) ** 3


def rhss_leading(params: SmoothnessParams, k: int) -> float:
    """Depth-k leading term; depth 1 is the proximal best response base case,
    so its bound is that algorithm's."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return pbr_leading(params)
    rho = params.L_xy / max(params.m_x, params.m_y)
    return math.sqrt(params.L_xy ** 2 / (params.m_x * params.m_y)
                     + (params.kappa_x + params.kappa_y)
                     * (1.0 + rho ** (1.0 / k)))


def rhss_bound(params: SmoothnessParams, k: int, epsilon: float) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_epsilon(epsilon)
    if k == 1:
        return pbr_bound(params, epsilon)
    return theorem4_bound(params, k, epsilon, z0_error=1.0)


@dataclass(frozen=True)
class BoundCurve:
    label: str
    values: tuple

    def __post_init__(self):
        grid = [l for l, _ in self.values]
        if any(a >= b for a, b in zip(grid, grid[1:])):
            raise ValueError("coupling grid must be strictly increasing")
        if any(v <= 0 for _, v in self.values):
            raise ValueError("complexities must be positive")


_LEADING = {
    "lower": lambda p, k: lower_leading(p),
    "rhss": lambda p, k: rhss_leading(p, k),
    "pbr": lambda p, k: pbr_leading(p),
    "linetal": lambda p, k: linetal_leading(p),
}

_WITH_LOGS = {
    "lower": lambda p, k, e: lower_bound(p, e),
    "rhss": lambda p, k, e: rhss_bound(p, k, e),
    "pbr": lambda p, k, e: pbr_bound(p, e),
    "linetal": lambda p, k, e: linetal_bound(p, e),
}


def bound_curves(params: SmoothnessParams, grid, epsilon: float) -> list:
    """Evaluate all four bounds over a coupling grid, leading-term and
    with-logs variants, at the per-point optimal recursion depth."""
    _check_epsilon(epsilon)
    points = []
    for l_xy in grid:
        p = SmoothnessParams(m_x=params.m_x, m_y=params.m_y, L_x=params.L_x,
                             L_xy=float(l_xy), L_y=params.L_y)
        points.append((float(l_xy), p, optimal_k(p)))
    curves = []
    for name, fn in _LEADING.items():
        curves.append(BoundCurve(
            label=f"{name}-leading",
            values=tuple((l, fn(p, k)) for l, p, k in points)))
    for name, fn in _WITH_LOGS.items():
        curves.append(BoundCurve(
            label=f"{name}-logs",
            values=tuple((l, fn(p, k, epsilon)) for l, p, k in points)))
    return curves
