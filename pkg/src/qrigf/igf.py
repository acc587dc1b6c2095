"""Relative information generating functionals of a distortion model.

Everything here is a functional of q3: the generating function
``igf(m, a) = int_0^1 q3(p)^(1-a) dp``, its residual and past-lifetime
versions, the quantile Kullback-Leibler divergence and its relatives,
series expansion, bounds, and a panel of derived divergence measures.

Closed forms are used when the model carries a distortion strategy and
``method`` permits; otherwise adaptive Gauss-Kronrod quadrature.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .config import DEFAULT_CONFIG, EvalConfig
from .errors import DivergentIntegral, DomainError, ParamError
from .models import ComposedModel

__all__ = [
    "IgfValue",
    "DivergencePanel",
    "igf",
    "igf_residual",
    "igf_past",
    "kl_divergence",
    "kl_by_derivative",
    "generalized_kl",
    "log_moment",
    "igf_series",
    "igf_bounds",
    "divergence_panel",
]


@dataclass(frozen=True)
class IgfValue:
    """A nonnegative functional value with its evaluation provenance."""

    value: float
    method: str  # "closed_form" | "quadrature"
    est_abs_error: float = 0.0

    def __post_init__(self):
        if not (self.value >= 0.0):
            raise DivergentIntegral(
                f"generating function must be nonnegative, got {self.value!r}")

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class DivergencePanel:
    """K-L, Hellinger, Bhattacharyya and Renyi measures derived from the
    same underlying generating-function evaluations."""

    kl: float
    i_half: float
    hellinger: float
    bhattacharyya: float
    renyi: dict = field(default_factory=dict)


def _check_alpha(alpha):
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ParamError(f"alpha must be a finite positive number, got {alpha!r}")
    return float(alpha)


def _quad(fn, lo, hi, cfg: EvalConfig, points=()):
    """Adaptive quadrature with an explicit divergence verdict."""
    inner = [p for p in points if lo < p < hi]
    kwargs = dict(epsabs=cfg.quad_abs_tol, epsrel=cfg.quad_rel_tol,
                  limit=cfg.max_subdivisions)
    if inner:
        kwargs["points"] = inner
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            value, err = integrate.quad(fn, lo, hi, **kwargs)
        except Exception as exc:
            raise DivergentIntegral(f"quadrature failed: {exc}") from exc
    if not math.isfinite(value):
        raise DivergentIntegral("integral evaluated to a non-finite value")
    for w in caught:
        if "divergent" in str(w.message).lower():
            raise DivergentIntegral(
                f"quadrature reports a divergent integral on [{lo:g}, {hi:g}]")
    if err > 1e-3 * (abs(value) + 1.0):
        raise DivergentIntegral(
            f"quadrature did not converge: estimate {value:g} with error "
            f"bound {err:g}")
    return value, err


_INTERIOR_LO = 5e-324
_INTERIOR_HI = float(np.nextafter(1.0, 0.0))


def _interior(p: float) -> float:
    """Clamp a quadrature node into the open interval (0, 1).

    Deep adaptive subdivision against an endpoint singularity can round
    a node onto the endpoint itself; the nearest representable interior
    point carries the intended limit behaviour.
    """
    return min(max(p, _INTERIOR_LO), _INTERIOR_HI)


def _integrand_power(m: ComposedModel, expo: float):
    def fn(p):
        q = m.q3(_interior(p))
        if q < 0.0:
            raise DivergentIntegral(f"q3({p!r}) is negative")
        if q == 0.0:
            return 0.0 if expo > 0.0 else (1.0 if expo == 0.0 else math.inf)
        return q ** expo
    return fn


def _dispatch(m: ComposedModel, method: str, name: str):
    """Return the closed-form callable or None, honouring ``method``."""
    if method not in ("auto", "closed", "quadrature"):
        raise ParamError("method must be 'auto', 'closed' or 'quadrature'")
    closed = getattr(m.distortion, name, None) if m.distortion else None
    if method == "closed" and closed is None:
        raise ParamError(f"no closed form available for {name} on {m!r}")
    if method == "quadrature":
        return None
    return closed


def igf(m: ComposedModel, alpha: float, cfg: EvalConfig = DEFAULT_CONFIG,
        method: str = "auto") -> IgfValue:
    """Generating function int_0^1 q3(p)^(1-alpha) dp for alpha > 0.

    alpha = 1 is the identity case and returns exactly 1.
    """
    alpha = _check_alpha(alpha)
    if alpha == 1.0:
        return IgfValue(1.0, "closed_form")
    closed = _dispatch(m, method, "igf_closed")
    if closed is not None:
        return IgfValue(closed(alpha), "closed_form")
    value, err = _quad(_integrand_power(m, 1.0 - alpha), 0.0, 1.0, cfg,
                       m.breakpoints())
    return IgfValue(value, "quadrature", err)


def _residual_prefactor(m, alpha, u):
    return (1.0 - m.Q3(u)) ** (alpha - 1.0) / (1.0 - u) ** alpha


def igf_residual(m: ComposedModel, alpha: float, u: float,
                 cfg: EvalConfig = DEFAULT_CONFIG,
                 method: str = "auto") -> IgfValue:
    """Residual-lifetime generating function at truncation probability u.

    Equals ``(1 - Q3(u))^(alpha-1) / (1-u)^alpha * int_u^1 q3^(1-alpha)``;
    u = 0 reduces to :func:`igf`.
    """
    alpha = _check_alpha(alpha)
    if not (0.0 <= u < 1.0):
        raise DomainError("u must lie in [0, 1)")
    if u == 0.0:
        return igf(m, alpha, cfg, method)
    if alpha == 1.0:
        return IgfValue(1.0, "closed_form")
    closed = _dispatch(m, method, "residual_closed")
    if closed is not None:
        return IgfValue(closed(alpha, u), "closed_form")
    value, err = _quad(_integrand_power(m, 1.0 - alpha), u, 1.0, cfg,
                       m.breakpoints())
    return IgfValue(_residual_prefactor(m, alpha, u) * value, "quadrature", err)


def igf_past(m: ComposedModel, alpha: float, u: float,
             cfg: EvalConfig = DEFAULT_CONFIG,
             method: str = "auto") -> IgfValue:
    """Past-lifetime generating function at truncation probability u.

    Equals ``Q3(u)^(alpha-1) / u^alpha * int_0^u q3^(1-alpha)``;
    u = 1 reduces to :func:`igf`.
    """
    alpha = _check_alpha(alpha)
    if not (0.0 < u <= 1.0):
        raise DomainError("u must lie in (0, 1]")
    if u == 1.0:
        return igf(m, alpha, cfg, method)
    if alpha == 1.0:
        return IgfValue(1.0, "closed_form")
    closed = _dispatch(m, method, "past_closed")
    if closed is not None:
        return IgfValue(closed(alpha, u), "closed_form")
    value, err = _quad(_integrand_power(m, 1.0 - alpha), 0.0, u, cfg,
                       m.breakpoints())
    pref = m.Q3(u) ** (alpha - 1.0) / u ** alpha
    return IgfValue(pref * value, "quadrature", err)


def _log_q3_integrand(m, k):
    def fn(p):
        q = m.q3(_interior(p))
        if q <= 0.0:
            return math.inf
        return math.log(q) ** k
    return fn


def log_moment(m: ComposedModel, k: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """S_k = int_0^1 (log q3(p))^k dp, the k-th log-density moment."""
    if k < 0:
        raise ParamError("k must be a nonnegative integer")
    if k == 0:
        return 1.0
    value, _ = _quad(_log_q3_integrand(m, k), 0.0, 1.0, cfg, m.breakpoints())
    return value


def kl_divergence(m: ComposedModel, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Quantile Kullback-Leibler divergence, -int_0^1 log q3(p) dp."""
    return -log_moment(m, 1, cfg)


def kl_by_derivative(m: ComposedModel, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """K-L divergence via the centered alpha-derivative of igf at 1.

    Cross-check for :func:`kl_divergence`; the two agree within
    max(1e-4, 10*fd_step**2) on models with integrable log q3.
    """
    h = cfg.fd_step
    upper = igf(m, 1.0 + h, cfg).value
    lower = igf(m, 1.0 - h, cfg).value
    return (upper - lower) / (2.0 * h)


def generalized_kl(m: ComposedModel, k: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Generalized K-L divergence int_0^1 (-log q3(p))^k dp, k >= 1.

    k = 1 recovers :func:`kl_divergence`; the signed moments S_k are
    available separately as :func:`log_moment`.
    """
    if k < 1:
        raise ParamError("k must be a positive integer")
    return (-1.0) ** k * log_moment(m, k, cfg)


def igf_series(m: ComposedModel, alpha: float, K: int,
               cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Partial Maclaurin sum sum_{k<=K} (1-alpha)^k / k! * S_k.

    Converges to igf(m, alpha) as K grows when log q3 is bounded.
    """
    alpha = _check_alpha(alpha)
    if K < 0:
        raise ParamError("K must be a nonnegative integer")
    if alpha == 1.0 or K == 0:
        return 1.0
    total = 1.0
    x = 1.0 - alpha
    for k in range(1, K + 1):
        total += x ** k / math.factorial(k) * log_moment(m, k, cfg)
    return total


def igf_bounds(m: ComposedModel, alpha: float,
               cfg: EvalConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Lower and upper envelopes (L, U) for the generating function.

    L = max(0, (1-alpha) S_1) holds for every alpha > 0.  U integrates
    the hazard-quantile power (H3(p))^(alpha-1) and bounds igf from
    above only for alpha >= 1; below 1 the same integral drops under
    igf, so the pair should be read as a sandwich only on alpha >= 1.
    Raises DivergentIntegral naming the side that failed.
    """
    alpha = _check_alpha(alpha)
    try:
        s1 = log_moment(m, 1, cfg)
    except DivergentIntegral as exc:
        raise DivergentIntegral(f"lower bound failed: {exc}") from exc
    lower = max(0.0, (1.0 - alpha) * s1)

    def hazard_power(p):
        p = _interior(p)
        q = m.q3(p)
        if q <= 0.0:
            return math.inf if alpha < 1.0 else 0.0
        return ((1.0 - p) * q) ** (1.0 - alpha)

    try:
        upper, _ = _quad(hazard_power, 0.0, 1.0, cfg, m.breakpoints())
    except DivergentIntegral as exc:
        raise DivergentIntegral(f"upper bound failed: {exc}") from exc
    return lower, upper


def divergence_panel(m: ComposedModel, renyi_orders=(0.25, 0.5, 0.75),
                     cfg: EvalConfig = DEFAULT_CONFIG,
                     method: str = "auto") -> DivergencePanel:
    """Assemble K-L, Hellinger, Bhattacharyya and Renyi measures.

    Hellinger and Bhattacharyya are algebraic recombinations of one
    igf evaluation at alpha = 1/2; Renyi orders must differ from 1
    (the K-L field covers the limit).
    """
    orders = tuple(renyi_orders)
    for a in orders:
        _check_alpha(a)
        if a == 1.0:
            raise ParamError("Renyi order 1 is the K-L limit; it is "
                             "reported separately as kl")
    i_half = igf(m, 0.5, cfg, method).value
    renyi = {a: math.log(igf(m, a, cfg, method).value) / (a - 1.0)
             for a in orders}
    return DivergencePanel(
        kl=kl_divergence(m, cfg),
        i_half=i_half,
        hellinger=1.0 - i_half,
        bhattacharyya=-math.log(i_half),
        renyi=renyi,
    )
