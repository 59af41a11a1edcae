"""Smallest possible tour: build a quadratic saddle instance, solve it five
ways, and check every answer against the direct linear-algebra solution.

Run from the repository root:

    python3 demos/quickstart.py
"""

from saddlebench.baselines import BaselineConfig, eg_default_step, eg_solve, gda_default_step, gda_solve
from saddlebench.core import SmoothnessParams, weighted_error
from saddlebench.harness import start_point
from saddlebench.problems import InstanceSpec, direct_saddle, make_quadratic, quadratic_oracle
from saddlebench.prox import pbr_solve
from saddlebench.rhss import RhssConfig, optimal_k, rhss_solve

# A mildly conditioned instance: kappa_x = kappa_y = 8, coupling between the
# strong-convexity moduli and the smoothness constants.
params = SmoothnessParams(m_x=1.0, m_y=1.0, L_x=8.0, L_xy=2.0, L_y=8.0)
q = make_quadratic(InstanceSpec(n=6, m=5, params=params, seed=0))

z_star = direct_saddle(q)
z0 = start_point(6, 5, seed=0)
err0 = weighted_error(z0, z_star)[1]
eps = 1e-6

print(f"instance: n=6 m=5, kappa_x={params.kappa_x:.0f}, "
      f"L_xy={params.L_xy}, target relative error {eps:.0e}")
print(f"start distance ||z0 - z*|| = {err0:.3f}\n")

runs = {}

report = pbr_solve(quadratic_oracle(q), z0, eps, params)
runs["pbr (practical)"] = report

depth = optimal_k(params)
report = rhss_solve(q, z0, RhssConfig(k=max(depth, 2), epsilon=eps))
runs[f"rhss (k={max(depth, 2)})"] = report

grad_eps = eps * min(params.m_x, params.m_y) / (2.0 * params.L)
report = gda_solve(quadratic_oracle(q), z0,
                   BaselineConfig(step=gda_default_step(params), epsilon=grad_eps))
runs["gda"] = report

report = eg_solve(quadratic_oracle(q), z0,
                  BaselineConfig(step=eg_default_step(params), epsilon=grad_eps))
runs["eg"] = report

print(f"{'solver':18s} {'rel error':>12s} {'grad evals':>12s} {'matvecs':>10s}")
for name, rep in runs.items():
    rel = weighted_error(rep.final_point, z_star)[1] / err0
    print(f"{name:18s} {rel:12.2e} {rep.gradient_evals:12d} "
          f"{rep.matvec_products:10d}")

# Every solver receives a tolerance that certifies the final column above,
# so all the relative errors land at or below eps.
