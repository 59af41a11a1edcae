import numpy as np
import pytest

from saddlebench.baselines import (
    Algorithm,
    BaselineConfig,
    eg_default_step,
    eg_solve,
    gda_default_step,
    gda_solve,
)
from saddlebench.core import JointPoint, SmoothnessParams, Termination
from saddlebench.problems import (
    InstanceSpec,
    QuadraticSaddle,
    direct_saddle,
    log_perturbed_instance,
    make_quadratic,
    quadratic_oracle,
)


def rng(seed, stream=0):
    return np.random.Generator(np.random.Philox(key=[seed, stream]))


MILD = SmoothnessParams(m_x=1.0, m_y=2.0, L_x=4.0, L_xy=2.0, L_y=6.0)


def mild_instance(seed, n=10, m=8):
    return make_quadratic(InstanceSpec(n, m, MILD, seed))


def start_near(zs, seed, scale=1.0):
    g = rng(seed, 1)
    return JointPoint(zs.x + scale * g.standard_normal(zs.x.size),
                      zs.y + scale * g.standard_normal(zs.y.size))


def joint_err(z, zs):
    return float(np.hypot(np.linalg.norm(z.x - zs.x), np.linalg.norm(z.y - zs.y)))


def test_config_validation():
    with pytest.raises(ValueError, match="step"):
        BaselineConfig(step=0.0, T=5)
    with pytest.raises(ValueError, match="target"):
        BaselineConfig(step=0.1)
    with pytest.raises(ValueError, match="T"):
        BaselineConfig(step=0.1, T=-1)
    with pytest.raises(ValueError, match="epsilon"):
        BaselineConfig(step=0.1, epsilon=0.0)
    with pytest.raises(ValueError, match="abs_grad_tol"):
        BaselineConfig(step=0.1, abs_grad_tol=-1.0)


def test_algorithm_tag_routes_strictly():
    q = mild_instance(0)
    z0 = JointPoint(np.ones(10), np.ones(8))
    cfg = BaselineConfig(step=0.01, T=1, algorithm=Algorithm.GDA)
    gda_solve(quadratic_oracle(q), z0, cfg)
    with pytest.raises(ValueError, match="not ExtraGradient"):
        eg_solve(quadratic_oracle(q), z0, cfg)


def test_default_steps_match_their_formulas():
    assert gda_default_step(MILD) == pytest.approx(1.0 / (2.0 * 36.0))
    assert eg_default_step(MILD) == pytest.approx(1.0 / 12.0)


@pytest.mark.parametrize("solver", [gda_solve, eg_solve])
def test_stationary_at_saddle(solver):
    q = mild_instance(1)
    zs = direct_saddle(q)
    report = solver(quadratic_oracle(q), zs, BaselineConfig(step=0.01, epsilon=1e-6))
    assert report.termination is Termination.ToleranceMet
    assert report.outer_iterations == 0
    assert joint_err(report.final_point, zs) <= 1e-9


def test_gda_budget_mode_costs_one_eval_per_step():
    q = mild_instance(2)
    z0 = JointPoint(np.ones(10), np.ones(8))
    report = gda_solve(quadratic_oracle(q), z0,
                       BaselineConfig(step=gda_default_step(MILD), T=17))
    assert report.outer_iterations == 17
    assert report.gradient_evals == 17
    assert report.matvec_products == 34
    assert report.termination is Termination.ToleranceMet


def test_eg_budget_mode_costs_two_evals_per_iteration():
    q = mild_instance(3)
    z0 = JointPoint(np.ones(10), np.ones(8))
    report = eg_solve(quadratic_oracle(q), z0,
                      BaselineConfig(step=eg_default_step(MILD), T=23))
    assert report.outer_iterations == 23
    assert report.gradient_evals == 46


def test_gda_reaches_certified_relative_error():
    q = mild_instance(4)
    zs = direct_saddle(q)
    z0 = start_near(zs, 4)
    p = MILD
    # Fact-3 conversion: this gradient ratio certifies relative error 1e-6
    eps_grad = 1e-6 * min(p.m_x, p.m_y) / (2.0 * p.L)
    report = gda_solve(quadratic_oracle(q), z0,
                       BaselineConfig(step=gda_default_step(p), epsilon=eps_grad))
    assert report.termination is Termination.ToleranceMet
    assert joint_err(report.final_point, zs) <= 1e-6 * joint_err(z0, zs)


def test_eg_converges_with_geometric_residuals():
    q = mild_instance(5)
    zs = direct_saddle(q)
    z0 = start_near(zs, 5)
    report = eg_solve(quadratic_oracle(q), z0,
                      BaselineConfig(step=eg_default_step(MILD), epsilon=1e-10))
    assert report.termination is Termination.ToleranceMet
    assert joint_err(report.final_point, zs) <= 1e-8 * joint_err(z0, zs)
    norms = [g for _, g in report.residual_history]
    # overall geometric decay: log-linear fit has negative slope
    slope = np.polyfit(np.arange(len(norms)), np.log(norms), 1)[0]
    assert slope < 0
    assert norms[-1] < 1e-9 * norms[0]


def test_tolerance_run_is_fixed_point_consistent():
    q = mild_instance(6)
    z0 = JointPoint(np.ones(10), -np.ones(8))
    oracle = quadratic_oracle(q)
    report = eg_solve(oracle, z0, BaselineConfig(step=eg_default_step(MILD),
                                                 epsilon=1e-8))
    gx, gy = oracle.eval(report.final_point)
    gnorm = float(np.hypot(np.linalg.norm(gx), np.linalg.norm(gy)))
    g0 = report.residual_history[0][1]
    assert gnorm <= 1e-8 * g0
    # Fact 3's lower sandwich turns that into an error bound
    zs = direct_saddle(q)
    assert joint_err(report.final_point, zs) <= gnorm / min(MILD.m_x, MILD.m_y)


def test_gda_diverges_on_bilinear_dominant_instance_with_large_step():
    n = 6
    A = 0.01 * np.eye(n)
    B = np.diag(np.full(n, 10.0))
    q = QuadraticSaddle(A=A, B=B, C=A.copy(), u=np.ones(n), v=np.ones(n),
                        params=SmoothnessParams(0.01, 0.01, 0.01, 10.0, 0.01))
    z0 = JointPoint(np.ones(n), np.ones(n))
    with pytest.warns(UserWarning, match="1e6"):
        report = gda_solve(quadratic_oracle(q), z0,
                           BaselineConfig(step=1.0, T=10_000))
    assert report.termination is Termination.IterationCap
    assert report.outer_iterations < 100


def test_unmet_tolerance_reports_iteration_cap():
    q = mild_instance(7)
    z0 = JointPoint(np.ones(10), np.ones(8))
    report = gda_solve(quadratic_oracle(q), z0,
                       BaselineConfig(step=gda_default_step(MILD), epsilon=1e-10,
                                      iteration_cap=5))
    assert report.termination is Termination.IterationCap
    assert report.outer_iterations == 5


def test_absolute_gradient_target_for_reference_points():
    params = SmoothnessParams(m_x=1.0, m_y=1.0, L_x=3.0, L_xy=1.0, L_y=3.0)
    inst = log_perturbed_instance(InstanceSpec(6, 6, params, seed=8), rho=0.05)
    ref = inst.reference_saddle(tol=1e-12)
    gx, gy = inst.oracle().eval(ref)
    assert float(np.hypot(np.linalg.norm(gx), np.linalg.norm(gy))) <= 1e-12


def test_runs_are_deterministic():
    q = mild_instance(9)
    z0 = JointPoint(np.ones(10), np.ones(8))
    cfg = BaselineConfig(step=eg_default_step(MILD), epsilon=1e-8)
    a = eg_solve(quadratic_oracle(q), z0, cfg)
    b = eg_solve(quadratic_oracle(q), z0, cfg)
    np.testing.assert_array_equal(a.final_point.z, b.final_point.z)
    assert a.residual_history == b.residual_history
