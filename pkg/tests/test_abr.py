import numpy as np
import pytest

from saddlebench.abr import AbrConfig, abr_round_contraction, abr_rounds, abr_solve
from saddlebench.agd import AgdConfig, abr_inner_steps, agd_error_bound
from saddlebench.core import JointPoint, SmoothnessParams, Termination, weighted_error
from saddlebench.problems import (
    InstanceSpec,
    direct_saddle,
    make_quadratic,
    quadratic_oracle,
    separable_instance,
)


def rng(seed, stream=0):
    return np.random.Generator(np.random.Philox(key=[seed, stream]))


def weak_instance(seed, n=20, m=20, m_x=1.0, m_y=4.0, L=40.0, frac=0.4):
    L_xy = frac * np.sqrt(m_x * m_y)
    params = SmoothnessParams(m_x=m_x, m_y=m_y, L_x=L, L_xy=L_xy, L_y=L)
    return make_quadratic(InstanceSpec(n, m, params, seed))


def test_precondition_violation_reported():
    params = SmoothnessParams(m_x=1.0, m_y=1.0, L_x=10.0, L_xy=0.6, L_y=10.0)
    q = make_quadratic(InstanceSpec(5, 5, params, seed=0))
    z0 = JointPoint(np.ones(5), np.ones(5))
    report = abr_solve(quadratic_oracle(q), z0, AbrConfig(1e-3, params))
    assert report.termination is Termination.PreconditionViolated
    assert report.gradient_evals == 0


def test_degenerate_epsilon_runs_zero_rounds():
    q = weak_instance(1)
    z0 = JointPoint(np.ones(20), np.ones(20))
    report = abr_solve(quadratic_oracle(q), z0, AbrConfig(1.5, q.params))
    assert report.outer_iterations == 0
    np.testing.assert_array_equal(report.final_point.z, z0.z)


def test_iteration_cap_reported_and_respected():
    q = weak_instance(2)
    z0 = JointPoint(np.ones(20), np.ones(20))
    report = abr_solve(quadratic_oracle(q), z0,
                       AbrConfig(1e-6, q.params, iteration_cap=2))
    assert report.termination is Termination.IterationCap
    assert report.outer_iterations == 2


@pytest.mark.parametrize("epsilon", [1e-2, 1e-4])
def test_summed_error_guarantee(epsilon):
    q = weak_instance(3)
    oracle = quadratic_oracle(q)
    z_star = direct_saddle(q)
    g = rng(4)
    z0 = JointPoint(z_star.x + g.standard_normal(20), z_star.y + g.standard_normal(20))
    report = abr_solve(oracle, z0, AbrConfig(epsilon, q.params))
    s0, _ = weighted_error(z0, z_star)
    sT, _ = weighted_error(report.final_point, z_star)
    assert report.termination is Termination.ToleranceMet
    assert sT <= epsilon * s0


def test_gradient_accounting_exact():
    q = weak_instance(5)
    oracle = quadratic_oracle(q)
    z0 = JointPoint(np.ones(20), np.zeros(20))
    cfg = AbrConfig(1e-3, q.params)
    report = abr_solve(oracle, z0, cfg)
    T = abr_rounds(q.params, 1e-3)
    per_round = abr_inner_steps(q.params.kappa_x) + abr_inner_steps(q.params.kappa_y)
    assert report.outer_iterations == T
    assert report.gradient_evals == T * per_round
    assert report.gradient_evals == oracle.counter
    assert report.matvec_products == 2 * report.gradient_evals


def test_round_contraction_below_half_plus_slack():
    q = weak_instance(6, m_x=0.5, m_y=2.0, L=25.0)
    oracle = quadratic_oracle(q)
    z_star = direct_saddle(q)
    g = rng(7)
    z0 = JointPoint(z_star.x + g.standard_normal(20), z_star.y + g.standard_normal(20))
    trace = []
    abr_solve(oracle, z0, AbrConfig(1e-4, q.params), trace=trace)
    ratios = abr_round_contraction(trace, z_star, q.params)
    assert len(ratios) == len(trace) - 1
    assert np.all(ratios <= 0.55)


def test_round_contraction_zero_once_converged():
    q = weak_instance(8, n=6, m=6)
    z_star = direct_saddle(q)
    trace = [z_star, z_star]
    ratios = abr_round_contraction(trace, z_star, q.params)
    np.testing.assert_array_equal(ratios, [0.0])


def test_separable_first_round_is_within_inner_tolerance():
    q = separable_instance(8, 8, (1.0, 16.0, 2.0, 32.0), seed=9)
    oracle = quadratic_oracle(q)
    z_star = direct_saddle(q)
    g = rng(10)
    z0 = JointPoint(z_star.x + g.standard_normal(8), z_star.y + g.standard_normal(8))
    trace = []
    abr_solve(oracle, z0, AbrConfig(1e-3, q.params), trace=trace)
    # with no coupling, one round is a pair of decoupled AGD runs
    z1 = trace[1]
    bx = agd_error_bound(AgdConfig(16.0, 1.0, abr_inner_steps(16.0)),
                         float(np.sum((z0.x - z_star.x) ** 2)))
    by = agd_error_bound(AgdConfig(32.0, 2.0, abr_inner_steps(16.0)),
                         float(np.sum((z0.y - z_star.y) ** 2)))
    s1, _ = weighted_error(z1, z_star)
    assert s1 <= np.sqrt(bx) + np.sqrt(by) + 1e-12

    ratios = abr_round_contraction(trace, z_star, q.params)
    factor_x = np.sqrt(agd_error_bound(AgdConfig(16.0, 1.0, abr_inner_steps(16.0)), 1.0))
    factor_y = np.sqrt(agd_error_bound(AgdConfig(32.0, 2.0, abr_inner_steps(16.0)), 1.0))
    assert ratios[0] <= max(factor_x, factor_y) + 1e-12


def test_unbalanced_smoothness_still_meets_guarantee():
    # L_x != L_y exercises the internal rescale path
    params = SmoothnessParams(m_x=1.0, m_y=1.0, L_x=64.0, L_xy=0.4, L_y=4.0)
    q = make_quadratic(InstanceSpec(12, 12, params, seed=11))
    oracle = quadratic_oracle(q)
    z_star = direct_saddle(q)
    g = rng(12)
    z0 = JointPoint(z_star.x + g.standard_normal(12), z_star.y + g.standard_normal(12))
    report = abr_solve(oracle, z0, AbrConfig(1e-4, params))
    s0, _ = weighted_error(z0, z_star)
    sT, _ = weighted_error(report.final_point, z_star)
    assert sT <= 1e-4 * s0


def test_config_validation():
    params = SmoothnessParams(m_x=1, m_y=1, L_x=2, L_xy=0.1, L_y=2)
    with pytest.raises(ValueError):
        AbrConfig(0.0, params)
    with pytest.raises(ValueError):
        AbrConfig(1e-3, params, iteration_cap=0)
