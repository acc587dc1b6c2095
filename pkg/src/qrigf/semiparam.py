"""Distortions built from semiparametric relationships and monotone
transformations, without two explicit marginal models.

Proportional hazards, proportional odds (both survival- and cdf-ratio
forms), proportional reversed hazards, and general transforms of the
survival or cdf scale by a unit-interval distribution G all induce the
composed distortion directly.  Constancy diagnostics operationalise the
characterisations: residual constancy holds exactly for proportional
hazards, past constancy for proportional reversed hazards.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .config import DEFAULT_CONFIG, EvalConfig
from .errors import DomainError, ParamError, SupportMismatch
from .igf import IgfValue, _check_alpha, _quad, igf, igf_past, igf_residual
from .models import (
    ComposedModel,
    GTransformDistortion,
    OddsDistortion,
    PowerCdfDistortion,
    PowerSurvivalDistortion,
    QuantileModel,
    invert_Q,
)

__all__ = [
    "UnitDistribution",
    "power_g",
    "odds_survival_g",
    "odds_cdf_g",
    "table_g",
    "DistortionSpec",
    "distortion_to_composed",
    "MonotoneTransform",
    "log_transform",
    "exp_transform",
    "affine_transform",
    "power_transform",
    "identity_transform",
    "transformed_igf",
    "ConstancyReport",
    "residual_constancy_check",
    "past_constancy_check",
]


# ---------------------------------------------------------------------------
# unit-interval distributions for G-transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitDistribution:
    """A distribution function G on [0,1] with density g."""

    name: str
    cdf: Callable
    pdf: Callable
    breakpoints: tuple = ()


def power_g(theta: float) -> UnitDistribution:
    """G(x) = x^theta."""
    if theta <= 0:
        raise ParamError("theta must be positive")
    return UnitDistribution(
        f"power({theta:g})",
        cdf=lambda x: x ** theta,
        pdf=lambda x: theta * x ** (theta - 1.0),
    )


def odds_survival_g(r: float) -> UnitDistribution:
    """G(x) = r x / (1 - (1-r) x), the survival-odds kernel, 0 < r < 1."""
    if not 0.0 < r < 1.0:
        raise ParamError("r must lie in (0, 1)")
    return UnitDistribution(
        f"odds_survival({r:g})",
        cdf=lambda x: r * x / (1.0 - (1.0 - r) * x),
        pdf=lambda x: r / (1.0 - (1.0 - r) * x) ** 2,
    )


def odds_cdf_g(theta: float) -> UnitDistribution:
    """G(x) = x / (theta + x (1 - theta)), the cdf-odds kernel."""
    if theta <= 0:
        raise ParamError("theta must be positive")
    return UnitDistribution(
        f"odds_cdf({theta:g})",
        cdf=lambda x: x / (theta + x * (1.0 - theta)),
        pdf=lambda x: theta / (theta + x * (1.0 - theta)) ** 2,
    )


def table_g(xs, gs) -> UnitDistribution:
    """Monotone interpolation of tabulated cdf values on [0,1].

    Uses a PCHIP interpolant, which preserves monotonicity of the data;
    the density is its derivative.
    """
    from scipy.interpolate import PchipInterpolator

    xs = np.asarray(xs, dtype=float)
    gs = np.asarray(gs, dtype=float)
    if xs.ndim != 1 or xs.shape != gs.shape or len(xs) < 2:
        raise ParamError("need matching 1-d arrays with at least 2 nodes")
    if xs[0] != 0.0 or xs[-1] != 1.0 or gs[0] != 0.0 or gs[-1] != 1.0:
        raise ParamError("table must span (0,0) to (1,1)")
    if np.any(np.diff(xs) <= 0) or np.any(np.diff(gs) < 0):
        raise ParamError("table must be strictly increasing in x and "
                         "nondecreasing in G")
    interp = PchipInterpolator(xs, gs)
    deriv = interp.derivative()
    return UnitDistribution(
        f"table({len(xs)} nodes)",
        cdf=lambda x: np.clip(interp(x), 0.0, 1.0),
        pdf=lambda x: np.maximum(deriv(x), 0.0),
        breakpoints=tuple(float(x) for x in xs[1:-1]),
    )


# ---------------------------------------------------------------------------
# distortion specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistortionSpec:
    """A semiparametric relationship inducing a distortion directly.

    kind is one of 'ph', 'po_survival', 'po_cdf', 'reversed_ph',
    'g_survival', 'g_cdf'.  Scalar kinds use ``theta``; the G kinds
    take a :class:`UnitDistribution`.
    """

    kind: str
    theta: Optional[float] = None
    g: Optional[UnitDistribution] = None

    def __post_init__(self):
        scalar = {"ph", "po_survival", "po_cdf", "reversed_ph"}
        if self.kind in scalar:
            if self.theta is None:
                raise ParamError(f"{self.kind} requires a constant")
        elif self.kind in {"g_survival", "g_cdf"}:
            if self.g is None:
                raise ParamError(f"{self.kind} requires a unit distribution")
        else:
            raise ParamError(f"unknown distortion kind {self.kind!r}")


def distortion_to_composed(spec: DistortionSpec,
                           cfg: EvalConfig = DEFAULT_CONFIG) -> ComposedModel:
    """Materialise a distortion spec as a ComposedModel with closed-form
    Q3 and q3."""
    if spec.kind == "ph":
        strat = PowerSurvivalDistortion(spec.theta)
    elif spec.kind == "po_survival":
        strat = OddsDistortion(spec.theta, kind="po_survival")
    elif spec.kind == "po_cdf":
        strat = OddsDistortion(spec.theta, kind="po_cdf")
    elif spec.kind == "reversed_ph":
        strat = PowerCdfDistortion(spec.theta)
    elif spec.kind == "g_survival":
        strat = GTransformDistortion(spec.g, "survival")
    else:
        strat = GTransformDistortion(spec.g, "cdf")
    return ComposedModel(None, None, strat, spec.kind, cfg)


# ---------------------------------------------------------------------------
# monotone transformations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotoneTransform:
    """A continuous nondecreasing invertible map with its inverse."""

    name: str
    forward: Callable
    inverse: Callable
    params: tuple = ()

    def check_roundtrip(self, xs, tol=1e-9):
        xs = np.asarray(xs, dtype=float)
        back = self.inverse(self.forward(xs))
        err = np.max(np.abs(back - xs) / np.maximum(1.0, np.abs(xs)))
        if not err <= tol:
            raise ParamError(
                f"{self.name}: inverse(forward(x)) differs by {err:g}")


def log_transform() -> MonotoneTransform:
    return MonotoneTransform("log", np.log, np.exp)


def exp_transform() -> MonotoneTransform:
    return MonotoneTransform("exp", np.exp, np.log)


def affine_transform(a: float, b: float = 0.0) -> MonotoneTransform:
    if a <= 0:
        raise ParamError("slope must be positive")
    return MonotoneTransform(
        f"affine({a:g},{b:g})",
        forward=lambda x: a * np.asarray(x, dtype=float) + b,
        inverse=lambda y: (np.asarray(y, dtype=float) - b) / a,
        params=(a, b),
    )


def power_transform(k: float) -> MonotoneTransform:
    """x -> x^k on the nonnegative half line, k > 0."""
    if k <= 0:
        raise ParamError("exponent must be positive")
    return MonotoneTransform(
        f"power({k:g})",
        forward=lambda x: np.asarray(x, dtype=float) ** k,
        inverse=lambda y: np.asarray(y, dtype=float) ** (1.0 / k),
        params=(k,),
    )


def identity_transform() -> MonotoneTransform:
    return MonotoneTransform("identity", lambda x: x, lambda x: x)


def transformed_igf(q1: QuantileModel, q2: QuantileModel,
                    t1: MonotoneTransform, t2: MonotoneTransform,
                    alpha: float, cfg: EvalConfig = DEFAULT_CONFIG) -> IgfValue:
    """Generating function of the pair (T1(X1), T2(X2)).

    Composes p -> F2(T2^{-1}(T1(Q1(p)))), differentiates it by central
    differences with the configured step, and integrates the power by
    quadrature.
    """
    alpha = _check_alpha(alpha)
    eps = cfg.endpoint_eps
    probe = np.linspace(0.05, 0.95, 19)
    t1.check_roundtrip(q1.Q(probe))
    t2.check_roundtrip(q2.Q(probe))

    lo2, hi2 = q2.support()

    def mapped(p):
        y = t2.inverse(t1.forward(q1.Q(p)))
        y = np.clip(y, lo2, hi2)
        return invert_Q(q2, y, cfg)

    # support compatibility at the clipped endpoints
    try:
        a0, a1 = mapped(eps), mapped(1.0 - eps)
    except Exception as exc:
        raise SupportMismatch(
            f"transformed pair is not composable: {exc}") from exc
    if not a1 >= a0:
        raise SupportMismatch("transformed composition is not nondecreasing")

    if alpha == 1.0:
        return IgfValue(1.0, "closed_form")

    def derivative(p):
        h = min(cfg.fd_step, p / 2.0, (1.0 - p) / 2.0)
        d = (mapped(p + h) - mapped(p - h)) / (2.0 * h)
        return d if d > 0.0 else 0.0

    def integrand(p):
        d = derivative(p)
        if d == 0.0:
            return 0.0 if alpha < 1.0 else math.inf
        return d ** (1.0 - alpha)

    value, err = _quad(integrand, eps, 1.0 - eps, cfg)
    return IgfValue(value, "quadrature", err)


# ---------------------------------------------------------------------------
# constancy diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstancyReport:
    """Outcome of a constancy scan over a grid of truncation points."""

    is_constant: bool
    max_dev: float
    ref_value: float
    values: tuple


def _constancy(values, rel_tol=1e-6):
    ref = values[0]
    max_dev = max(abs(v - ref) for v in values)
    return ConstancyReport(
        is_constant=bool(max_dev <= rel_tol * abs(ref)),
        max_dev=max_dev,
        ref_value=ref,
        values=tuple(values),
    )


def residual_constancy_check(m: ComposedModel, alpha: float, grid,
                             cfg: EvalConfig = DEFAULT_CONFIG,
                             method: str = "auto") -> ConstancyReport:
    """Is the residual generating function constant in u over ``grid``?

    Constant behaviour characterises proportional hazards; the
    tolerance 1e-6 (relative) absorbs quadrature error only.
    """
    grid = [float(u) for u in grid]
    if not grid or not all(0.0 < u < 1.0 for u in grid):
        raise DomainError("grid must be a nonempty subset of (0, 1)")
    vals = [igf_residual(m, alpha, u, cfg, method).value for u in grid]
    return _constancy(vals)


def past_constancy_check(m: ComposedModel, alpha: float, grid,
                         cfg: EvalConfig = DEFAULT_CONFIG,
                         method: str = "auto") -> ConstancyReport:
    """Is the past generating function constant in u over ``grid``?

    Constant behaviour characterises proportional reversed hazards.
    """
    grid = [float(u) for u in grid]
    if not grid or not all(0.0 < u < 1.0 for u in grid):
        raise DomainError("grid must be a nonempty subset of (0, 1)")
    vals = [igf_past(m, alpha, u, cfg, method).value for u in grid]
    return _constancy(vals)
