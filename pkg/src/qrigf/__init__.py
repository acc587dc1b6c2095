"""Quantile-domain relative information generating functions.

Evaluate the generating functional of a pair of distributions through
their quantile functions, together with its residual- and past-lifetime
versions and the divergence measures they generate; estimate all three
nonparametrically from samples via order-statistic spacings; run seeded
bias/MSE studies; and drive everything from a CLI.
"""
from ._kernels import HAVE_COMPILED, backend_name
from .config import DEFAULT_CONFIG, EvalConfig
from .errors import (
    DegenerateDensity,
    DivergentIntegral,
    DomainError,
    NoConvergence,
    ParamError,
    QrigfError,
    SupportMismatch,
    TooSmall,
    ZeroSpacing,
)
from .estimation import (
    EstimateReport,
    OrderedSample,
    empirical_Q3_sample,
    estimate_igf,
    estimate_kl,
    estimate_past,
    estimate_residual,
    order_sample,
    parzen_Q3,
    parzen_q3,
    read_sample_file,
    sample_from_Q3,
    write_sample_file,
)
from .igf import (
    DivergencePanel,
    IgfValue,
    divergence_panel,
    generalized_kl,
    igf,
    igf_bounds,
    igf_past,
    igf_residual,
    igf_series,
    kl_by_derivative,
    kl_divergence,
    log_moment,
)
from .models import (
    FAMILIES,
    ComposedModel,
    Exponential,
    Govindarajulu,
    LinearHazardQuantile,
    ParetoI,
    ParetoII,
    Power,
    PowerPareto,
    QuantileModel,
    ReciprocalExponential,
    compose,
    eval_Q,
    eval_q,
    hazard_quantile,
    invert_Q,
    make_model,
    reversed_hazard_quantile,
)
from .semiparam import (
    ConstancyReport,
    DistortionSpec,
    MonotoneTransform,
    UnitDistribution,
    affine_transform,
    distortion_to_composed,
    exp_transform,
    identity_transform,
    log_transform,
    odds_cdf_g,
    odds_survival_g,
    past_constancy_check,
    power_g,
    power_transform,
    residual_constancy_check,
    table_g,
    transformed_igf,
)
from .simulate import SimResult, SimRow, SimScenario, run_simulation

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "HAVE_COMPILED",
    "backend_name",
    "EvalConfig",
    "DEFAULT_CONFIG",
    # errors
    "QrigfError", "ParamError", "DomainError", "SupportMismatch",
    "NoConvergence", "DivergentIntegral", "DegenerateDensity",
    "ZeroSpacing", "TooSmall",
    # models
    "QuantileModel", "Exponential", "ParetoI", "ParetoII", "Power",
    "PowerPareto", "Govindarajulu", "LinearHazardQuantile",
    "ReciprocalExponential", "FAMILIES", "make_model", "ComposedModel",
    "compose", "eval_Q", "eval_q", "invert_Q", "hazard_quantile",
    "reversed_hazard_quantile",
    # functionals
    "IgfValue", "DivergencePanel", "igf", "igf_residual", "igf_past",
    "kl_divergence", "kl_by_derivative", "generalized_kl", "log_moment",
    "igf_series", "igf_bounds", "divergence_panel",
    # semiparametric
    "UnitDistribution", "power_g", "odds_survival_g", "odds_cdf_g",
    "table_g", "DistortionSpec", "distortion_to_composed",
    "MonotoneTransform", "log_transform", "exp_transform",
    "affine_transform", "power_transform", "identity_transform",
    "transformed_igf", "ConstancyReport", "residual_constancy_check",
    "past_constancy_check",
    # estimation
    "OrderedSample", "order_sample", "parzen_Q3", "parzen_q3",
    "EstimateReport", "estimate_igf", "estimate_kl", "estimate_residual",
    "estimate_past", "sample_from_Q3", "empirical_Q3_sample",
    "read_sample_file", "write_sample_file",
    # simulation
    "SimScenario", "SimRow", "SimResult", "run_simulation",
]
