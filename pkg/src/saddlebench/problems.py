"""Quadratic saddle test instances with prescribed spectra and ground truth.

Instances are f(x, y) = 0.5 x'Ax + x'By - 0.5 y'Cy + u'x + v'y with the
spectral extremes of A, B, C placed exactly at the declared class parameters,
so theory/practice comparisons are honest. All randomness is Philox
counter-based and fully determined by the instance seed.
"""

from __future__ import annotations

import enum
import json
import math
import pathlib
from dataclasses import dataclass

import numpy as np
import scipy.io
import scipy.linalg

from .core import (
    CoordinateMap,
    GradientOracle,
    JointPoint,
    SmoothnessParams,
    flipped_params,
)


class SpectrumShape(enum.Enum):
    Endpoints = "endpoints"
    LogUniform = "loguniform"
    Clustered = "clustered"


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    m: int
    params: SmoothnessParams
    seed: int
    spectrum_shape: SpectrumShape = SpectrumShape.Endpoints

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("dimensions must be >= 1")
        if self.n == 1 and self.params.m_x != self.params.L_x:
            raise ValueError("n = 1 forces m_x = L_x")
        if self.m == 1 and self.params.m_y != self.params.L_y:
            raise ValueError("m = 1 forces m_y = L_y")


@dataclass
class QuadraticSaddle:
    """Dense quadratic saddle problem data."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    u: np.ndarray
    v: np.ndarray
    params: SmoothnessParams | None = None

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.C.shape[0]

    def value(self, x, y) -> float:
        return float(0.5 * x @ self.A @ x + x @ self.B @ y
                     - 0.5 * y @ self.C @ y + self.u @ x + self.v @ y)

    def grad(self, x, y):
        """Uncounted gradient, for tests and ground-truth checks."""
        return (self.A @ x + self.B @ y + self.u,
                self.B.T @ x - self.C @ y + self.v)

    @property
    def J(self) -> np.ndarray:
        """The saddle system matrix [[A, B], [-B', C]] with J z* = b."""
        return np.block([[self.A, self.B], [-self.B.T, self.C]])

    @property
    def b(self) -> np.ndarray:
        return np.concatenate([-self.u, self.v])


def _fixed_qr(gen: np.random.Generator, size: int) -> np.ndarray:
    """Orthogonal factor with deterministic sign convention."""
    q, r = np.linalg.qr(gen.standard_normal((size, size)))
    s = np.sign(np.diag(r))
    s[s == 0] = 1.0
    return q * s


def _spectrum(gen, lo, hi, size, shape: SpectrumShape):
    """Eigenvalue placement with the extremes pinned exactly."""
    if size == 1:
        if not np.isclose(lo, hi, rtol=1e-14):
            raise ValueError("size-1 spectrum needs lo == hi")
        return np.array([lo], dtype=float)
    if shape is SpectrumShape.Endpoints:
        vals = np.geomspace(lo, hi, size)
    elif shape is SpectrumShape.LogUniform:
        interior = np.exp(gen.uniform(np.log(lo), np.log(hi), size - 2))
        vals = np.concatenate([[lo], np.sort(interior), [hi]])
    else:  # Clustered: interior splits into groups near each extreme
        k = size - 2
        near_lo = np.full(k // 2 + k % 2, lo * (hi / lo) ** 0.02)
        near_hi = np.full(k // 2, hi * (lo / hi) ** 0.02)
        vals = np.concatenate([[lo], near_lo, near_hi, [hi]])
    vals[0], vals[-1] = lo, hi
    return vals


def make_quadratic(spec: InstanceSpec) -> QuadraticSaddle:
    """Construct a seeded instance achieving the declared extremes exactly.

    A = Qa Da Qa', C = Qc Dc Qc' with one eigenvalue pinned at each of
    (m_x, L_x) and (m_y, L_y); B = Ub diag(s) Vb' with top singular value
    exactly L_xy. Orthogonal factors come from QR of seeded Gaussians with a
    sign-fixed R diagonal, so the same spec is bitwise reproducible.
    """
    p = spec.params
    gen = np.random.Generator(np.random.Philox(key=[spec.seed, 0]))

    Qa = _fixed_qr(gen, spec.n)
    da = _spectrum(gen, p.m_x, p.L_x, spec.n, spec.spectrum_shape)
    A = (Qa * da) @ Qa.T
    A = 0.5 * (A + A.T)

    Qc = _fixed_qr(gen, spec.m)
    dc = _spectrum(gen, p.m_y, p.L_y, spec.m, spec.spectrum_shape)
    C = (Qc * dc) @ Qc.T
    C = 0.5 * (C + C.T)

    if p.L_xy == 0.0:
        B = np.zeros((spec.n, spec.m))
    else:
        Ub = _fixed_qr(gen, spec.n)
        Vb = _fixed_qr(gen, spec.m)
        k = min(spec.n, spec.m)
        if k == 1:
            sv = np.array([p.L_xy])
        else:
            # only the top singular value is contract-relevant; the rest
            # spread one decade below it following the same shape rule
            sv = _spectrum(gen, p.L_xy / 10.0, p.L_xy, k, spec.spectrum_shape)[::-1]
        B = (Ub[:, :k] * sv) @ Vb[:, :k].T

    u = gen.standard_normal(spec.n)
    v = gen.standard_normal(spec.m)

    q = QuadraticSaddle(A=A, B=B, C=C, u=u, v=v, params=p)
    _verify_spectra(q)
    return q


def _verify_spectra(q: QuadraticSaddle, rtol=1e-10):
    p = q.params
    eig_a = np.linalg.eigvalsh(q.A)
    eig_c = np.linalg.eigvalsh(q.C)
    checks = [
        (eig_a[0], p.m_x), (eig_a[-1], p.L_x),
        (eig_c[0], p.m_y), (eig_c[-1], p.L_y),
    ]
    if p.L_xy > 0:
        checks.append((np.linalg.svd(q.B, compute_uv=False)[0], p.L_xy))
    for got, want in checks:
        if abs(got - want) > rtol * max(want, 1e-300):
            raise AssertionError(f"spectral extreme {got!r} misses target {want!r}")


def measured_params(q: QuadraticSaddle) -> SmoothnessParams:
    """Tight class parameters of an instance, by dense decomposition."""
    eig_a = np.linalg.eigvalsh(q.A)
    eig_c = np.linalg.eigvalsh(q.C)
    top_b = 0.0 if q.B.size == 0 else float(np.linalg.svd(q.B, compute_uv=False)[0])
    return SmoothnessParams(m_x=eig_a[0], m_y=eig_c[0], L_x=eig_a[-1],
                            L_xy=top_b, L_y=eig_c[-1])


def flip_quadratic(q: QuadraticSaddle) -> QuadraticSaddle:
    """Block-swapped instance realizing h(p, q) = -f(q, p).

    Swaps the roles of the two players at the matrix level; the flipped
    saddle is (y*, x*). Declared params swap accordingly.
    """
    params = None if q.params is None else flipped_params(q.params)
    return QuadraticSaddle(A=q.C.copy(), B=-q.B.T, C=q.A.copy(),
                           u=-q.v.copy(), v=-q.u.copy(), params=params)


def rescale_quadratic(q: QuadraticSaddle,
                      params: SmoothnessParams | None = None):
    """Equalize the blockwise smoothness at the matrix level.

    Returns (q', map) where q' has L_x' = L_y' = sqrt(L_x L_y) under the
    change of variables x = a x', y = y'/a with a = (L_y/L_x)^(1/4); map
    carries points between the two coordinate systems. The cross block is
    untouched (a * (1/a) = 1).
    """
    params = params if params is not None else q.params
    if params is None:
        raise ValueError("needs declared or explicit params")
    if params.L_x == params.L_y:
        return q, CoordinateMap(1.0, 1.0)
    a = (params.L_y / params.L_x) ** 0.25
    c = 1.0 / a
    ell = math.sqrt(params.L_x * params.L_y)
    scaled = SmoothnessParams(m_x=a * a * params.m_x, m_y=c * c * params.m_y,
                              L_x=ell, L_xy=params.L_xy, L_y=ell)
    q2 = QuadraticSaddle(A=a * a * q.A, B=q.B.copy(), C=c * c * q.C,
                         u=a * q.u, v=c * q.v, params=scaled)
    return q2, CoordinateMap(a, c)


def quadratic_oracle(q: QuadraticSaddle) -> GradientOracle:
    """Counted gradient oracle; one eval costs one matvec pair.

    The gradient is affine, [g_x; g_y] = K z + c with K = [[A, B], [B', -C]],
    evaluated as a single stacked product to keep the per-eval cost flat.
    """
    n, m = q.n, q.m
    K = np.block([[q.A, q.B], [q.B.T, -q.C]])
    c = np.concatenate([q.u, q.v])

    def eval_xy(x, y):
        g = K @ np.concatenate([x, y]) + c
        return g[:n], g[n:]

    return GradientOracle(n, m, eval_xy, matvecs_per_eval=2)


def direct_saddle(q: QuadraticSaddle) -> JointPoint:
    """Ground-truth saddle via dense LU with iterative refinement."""
    J, b = q.J, q.b
    try:
        lu = scipy.linalg.lu_factor(J)
    except scipy.linalg.LinAlgError as exc:  # cannot occur for valid q
        raise RuntimeError(f"saddle system unexpectedly singular: {exc}") from exc
    z = scipy.linalg.lu_solve(lu, b)
    norm_b = np.linalg.norm(b)
    for _ in range(5):
        r = b - J @ z
        if np.linalg.norm(r) <= 1e-12 * norm_b:
            break
        z = z + scipy.linalg.lu_solve(lu, r)
    if np.linalg.norm(b - J @ z) > 1e-10 * norm_b:
        raise RuntimeError("direct solve failed to reach residual tolerance")
    zs = JointPoint.from_z(z, q.n)
    gx, gy = q.grad(zs.x, zs.y)
    if np.hypot(np.linalg.norm(gx), np.linalg.norm(gy)) > 1e-10 * max(norm_b, 1.0):
        raise RuntimeError("direct solve gradient check failed")
    return zs


def best_response_maps(q: QuadraticSaddle):
    """Exact blockwise argmin/argmax maps (x*(y), y*(x)) via Cholesky."""
    cho_a = scipy.linalg.cho_factor(q.A)
    cho_c = scipy.linalg.cho_factor(q.C)

    def x_star_of_y(y):
        return scipy.linalg.cho_solve(cho_a, -(q.B @ y + q.u))

    def y_star_of_x(x):
        return scipy.linalg.cho_solve(cho_c, q.B.T @ x + q.v)

    return x_star_of_y, y_star_of_x


def duality_gap(q: QuadraticSaddle, z: JointPoint) -> float:
    """max_y f(x, .) - min_x f(., y), clamped at zero for reporting."""
    x_star_of_y, y_star_of_x = best_response_maps(q)
    phi = q.value(z.x, y_star_of_x(z.x))
    psi = q.value(x_star_of_y(z.y), z.y)
    gap = phi - psi
    if gap < -1e-10 * max(abs(phi), abs(psi), 1.0):
        raise RuntimeError(f"duality gap came out negative beyond rounding: {gap}")
    return max(gap, 0.0)


def separable_instance(n, m, spectra, seed=0,
                       shape=SpectrumShape.Endpoints) -> QuadraticSaddle:
    """B = 0 instance; spectra = (m_x, L_x, m_y, L_y)."""
    m_x, L_x, m_y, L_y = spectra
    params = SmoothnessParams(m_x=m_x, m_y=m_y, L_x=L_x, L_xy=0.0, L_y=L_y)
    return make_quadratic(InstanceSpec(n, m, params, seed, shape))


# ---------------------------------------------------------------------------
# Smooth non-quadratic family: f_quad + rho * sum_i log(1 + x_i^2).
# The perturbation's Hessian lies in [-rho/4, 2 rho] per coordinate, so the
# conservative declared parameters below stay valid.

@dataclass
class LogPerturbedSaddle:
    quad: QuadraticSaddle
    rho: float

    def __post_init__(self):
        base = self.quad.params
        if base is None:
            raise ValueError("underlying quadratic must carry declared params")
        if not 0 <= self.rho < base.m_x / 2:
            raise ValueError("need 0 <= rho < m_x/2 to keep strong convexity")

    @property
    def n(self):
        return self.quad.n

    @property
    def m(self):
        return self.quad.m

    @property
    def params(self) -> SmoothnessParams:
        base = self.quad.params
        return SmoothnessParams(m_x=base.m_x - 2 * self.rho, m_y=base.m_y,
                                L_x=base.L_x + 2 * self.rho, L_xy=base.L_xy,
                                L_y=base.L_y)

    def value(self, x, y) -> float:
        return self.quad.value(x, y) + self.rho * float(np.sum(np.log1p(x * x)))

    def oracle(self) -> GradientOracle:
        q = self.quad
        K = np.block([[q.A, q.B], [q.B.T, -q.C]])
        c = np.concatenate([q.u, q.v])
        n, rho = q.n, self.rho

        def eval_xy(x, y):
            g = K @ np.concatenate([x, y]) + c
            gx = g[:n] + rho * 2.0 * x / (1.0 + x * x)
            return gx, g[n:]

        return GradientOracle(q.n, q.m, eval_xy, matvecs_per_eval=0)

    def reference_saddle(self, tol=1e-12) -> JointPoint:
        """High-precision saddle from an extragradient run to ||F|| <= tol."""
        from .baselines import BaselineConfig, eg_solve

        z0 = JointPoint(np.zeros(self.n), np.zeros(self.m))
        cfg = BaselineConfig(step=1.0 / (2.0 * self.params.L), epsilon=None,
                             abs_grad_tol=tol, iteration_cap=2_000_000)
        report = eg_solve(self.oracle(), z0, cfg)
        return report.final_point


def log_perturbed_instance(spec: InstanceSpec, rho: float) -> LogPerturbedSaddle:
    return LogPerturbedSaddle(quad=make_quadratic(spec), rho=rho)


# ---------------------------------------------------------------------------
# Matrix Market import/export with a JSON sidecar for declared parameters.

_MTX_FIELDS = ("A", "B", "C", "u", "v")


def save_instance(q: QuadraticSaddle, directory) -> pathlib.Path:
    """Write A, B, C, u, v as Matrix Market array files plus instance.json."""
    directory = pathlib.Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name in _MTX_FIELDS:
        arr = getattr(q, name)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        # 17 significant digits round-trips binary64 exactly
        scipy.io.mmwrite(directory / f"{name}.mtx", arr, precision=17)
    sidecar = {"n": q.n, "m": q.m}
    if q.params is not None:
        p = q.params
        sidecar["params"] = {"m_x": p.m_x, "m_y": p.m_y, "L_x": p.L_x,
                             "L_xy": p.L_xy, "L_y": p.L_y}
    (directory / "instance.json").write_text(json.dumps(sidecar, indent=2, sort_keys=True))
    return directory


def load_instance(directory) -> QuadraticSaddle:
    directory = pathlib.Path(directory)
    arrays = {}
    for name in _MTX_FIELDS:
        arr = np.asarray(scipy.io.mmread(directory / f"{name}.mtx"), dtype=float)
        arrays[name] = arr.ravel() if name in ("u", "v") else arr
    sidecar = json.loads((directory / "instance.json").read_text())
    params = None
    if "params" in sidecar:
        params = SmoothnessParams(**sidecar["params"])
    return QuadraticSaddle(params=params, **arrays)
