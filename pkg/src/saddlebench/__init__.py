"""Solvers and benchmarks for smooth strongly-convex-strongly-concave saddle problems."""

from .abr import AbrConfig, abr_round_contraction, abr_rounds, abr_solve
from .agd import AgdConfig, abr_inner_steps, agd, agd_error_bound
from .baselines import (
    Algorithm,
    BaselineConfig,
    eg_default_step,
    eg_solve,
    gda_default_step,
    gda_solve,
)
from .bounds import (
    BoundCurve,
    bound_curves,
    linetal_bound,
    linetal_leading,
    lower_bound,
    lower_leading,
    pbr_bound,
    pbr_leading,
    rhss_bound,
    rhss_leading,
)
from .core import (
    EPS_FLOOR,
    CoordinateMap,
    GradientOracle,
    JointPoint,
    SmoothnessParams,
    SolveReport,
    Termination,
    flipped_params,
    weighted_error,
)
from .harness import (
    ConfigError,
    ExperimentConfig,
    SweepRow,
    run_solve,
    run_sweep,
    start_point,
    validate,
)
from .problems import (
    InstanceSpec,
    LogPerturbedSaddle,
    QuadraticSaddle,
    SpectrumShape,
    best_response_maps,
    direct_saddle,
    duality_gap,
    flip_quadratic,
    load_instance,
    log_perturbed_instance,
    make_quadratic,
    measured_params,
    quadratic_oracle,
    rescale_quadratic,
    save_instance,
    separable_instance,
)
from .prox import (
    AppaConfig,
    PbrConstants,
    appa_abr,
    appa_minimax,
    pbr_solve,
    theorem2_iteration_bound,
    theorem2_m_requirement,
)
from .rhss import (
    HssOperators,
    RhssConfig,
    cg,
    cg_iteration_bound,
    contraction_factor,
    hss_exact_step,
    optimal_k,
    rhss_solve,
    theorem4_bound,
)

__version__ = "0.1.0"

__all__ = [
    "AbrConfig", "abr_round_contraction", "abr_rounds", "abr_solve",
    "AgdConfig", "abr_inner_steps", "agd", "agd_error_bound",
    "Algorithm", "BaselineConfig", "eg_default_step", "eg_solve",
    "gda_default_step", "gda_solve",
    "BoundCurve", "bound_curves", "linetal_bound", "linetal_leading",
    "lower_bound", "lower_leading", "pbr_bound", "pbr_leading",
    "rhss_bound", "rhss_leading",
    "EPS_FLOOR", "CoordinateMap", "GradientOracle", "JointPoint",
    "SmoothnessParams", "SolveReport", "Termination", "flipped_params",
    "weighted_error",
    "ConfigError", "ExperimentConfig", "SweepRow", "run_solve", "run_sweep",
    "start_point", "validate",
    "InstanceSpec", "LogPerturbedSaddle", "QuadraticSaddle", "SpectrumShape",
    "best_response_maps", "direct_saddle", "duality_gap", "flip_quadratic",
    "load_instance", "log_perturbed_instance", "make_quadratic",
    "measured_params", "quadratic_oracle", "rescale_quadratic",
    "save_instance", "separable_instance",
    "AppaConfig", "PbrConstants", "appa_abr", "appa_minimax", "pbr_solve",
    "theorem2_iteration_bound", "theorem2_m_requirement",
    "HssOperators", "RhssConfig", "cg", "cg_iteration_bound",
    "contraction_factor", "hss_exact_step", "optimal_k", "rhss_solve",
    "theorem4_bound",
    "__version__",
]
