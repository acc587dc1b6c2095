"""Parametric quantile-function families and their composition.

The central object is the distortion ``Q3 = Q2^{-1}(Q1(p))`` of a pair of
quantile functions, a nondecreasing map of [0,1] into [0,1] whose
derivative ``q3`` drives every divergence functional in :mod:`qrigf.igf`.
Pairs that admit closed-form distortions are detected by family matching
and carry an analytic strategy; everything else is evaluated through
closed-form or bisection inversion of ``Q2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import DEFAULT_CONFIG, EvalConfig
from .errors import (
    DegenerateDensity,
    DivergentIntegral,
    DomainError,
    NoConvergence,
    ParamError,
    SupportMismatch,
)

__all__ = [
    "QuantileModel",
    "Exponential",
    "ParetoI",
    "ParetoII",
    "Power",
    "PowerPareto",
    "Govindarajulu",
    "LinearHazardQuantile",
    "ReciprocalExponential",
    "FAMILIES",
    "make_model",
    "ComposedModel",
    "compose",
    "eval_Q",
    "eval_q",
    "invert_Q",
    "hazard_quantile",
    "reversed_hazard_quantile",
]


def _maybe_scalar(value, template):
    if np.ndim(template) == 0:
        return float(value)
    return np.asarray(value, dtype=float)


def _require_positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise ParamError(f"{name} must be a finite positive number, got {value!r}")
    return float(value)


class QuantileModel:
    """A parametric quantile function Q on (0,1) with density q = dQ/dp.

    Subclasses provide vectorised ``_Q``/``_q`` and, where a closed form
    exists, the cdf ``_inverse``.  Instances are immutable and safe to
    share between threads.
    """

    family: str = ""

    _params: tuple

    @property
    def params(self) -> tuple:
        return self._params

    # -- subclass hooks ------------------------------------------------
    def _Q(self, p):
        raise NotImplementedError

    def _q(self, p):
        raise NotImplementedError

    def _inverse(self, x):
        """Closed-form cdf, or None if the family needs bisection."""
        return None

    def support(self) -> tuple[float, float]:
        """Closure of the support, as limits of Q at 0 and 1."""
        raise NotImplementedError

    # -- public surface ------------------------------------------------
    def Q(self, p):
        """Quantile function; endpoints are evaluated as limits where
        the limit is finite."""
        arr = np.asarray(p, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError("probability must lie in [0, 1]")
        lo, hi = self.support()
        if np.any(arr == 0.0) and not math.isfinite(lo):
            raise DomainError("Q diverges at p=0 for this family")
        if np.any(arr == 1.0) and not math.isfinite(hi):
            raise DomainError("Q diverges at p=1 for this family")
        inner = np.clip(arr, 1e-300, None)
        out = np.where(arr == 0.0, lo, np.where(arr == 1.0, hi, self._Q(inner)))
        return _maybe_scalar(out, p)

    def q(self, p):
        """Quantile density dQ/dp on the open interval (0,1)."""
        arr = np.asarray(p, dtype=float)
        if np.any(arr <= 0.0) or np.any(arr >= 1.0):
            raise DomainError("probability must lie strictly inside (0, 1)")
        return _maybe_scalar(self._q(arr), p)

    def __eq__(self, other):
        return (type(other) is type(self)) and other._params == self._params

    def __hash__(self):
        return hash((type(self), self._params))

    def __repr__(self):
        args = ", ".join(f"{v:g}" for v in self._params)
        return f"{type(self).__name__}({args})"


class Exponential(QuantileModel):
    """Q(p) = -lam * log(1-p); lam is the mean."""

    family = "exponential"

    def __init__(self, lam: float):
        self.lam = _require_positive("lam", lam)
        self._params = (self.lam,)

    def _Q(self, p):
        return -self.lam * np.log1p(-p)

    def _q(self, p):
        return self.lam / (1.0 - p)

    def _inverse(self, x):
        return -np.expm1(-np.asarray(x, dtype=float) / self.lam)

    def support(self):
        return (0.0, math.inf)


class ParetoI(QuantileModel):
    """Q(p) = (1-p)^(-gamma), supported on [1, inf)."""

    family = "pareto1"

    def __init__(self, gamma: float):
        self.gamma = _require_positive("gamma", gamma)
        self._params = (self.gamma,)

    def _Q(self, p):
        return (1.0 - p) ** (-self.gamma)

    def _q(self, p):
        return self.gamma * (1.0 - p) ** (-self.gamma - 1.0)

    def _inverse(self, x):
        return 1.0 - np.asarray(x, dtype=float) ** (-1.0 / self.gamma)

    def support(self):
        return (1.0, math.inf)


class ParetoII(QuantileModel):
    """Q(p) = (1-p)^(-1/beta) - 1."""

    family = "pareto2"

    def __init__(self, beta: float):
        self.beta = _require_positive("beta", beta)
        self._params = (self.beta,)

    def _Q(self, p):
        return (1.0 - p) ** (-1.0 / self.beta) - 1.0

    def _q(self, p):
        return (1.0 / self.beta) * (1.0 - p) ** (-1.0 / self.beta - 1.0)

    def _inverse(self, x):
        return 1.0 - (1.0 + np.asarray(x, dtype=float)) ** (-self.beta)

    def support(self):
        return (0.0, math.inf)


class Power(QuantileModel):
    """Q(p) = b1 * p^(1/b2), supported on [0, b1]."""

    family = "power"

    def __init__(self, b1: float, b2: float):
        self.b1 = _require_positive("b1", b1)
        self.b2 = _require_positive("b2", b2)
        self._params = (self.b1, self.b2)

    def _Q(self, p):
        return self.b1 * p ** (1.0 / self.b2)

    def _q(self, p):
        return (self.b1 / self.b2) * p ** (1.0 / self.b2 - 1.0)

    def _inverse(self, x):
        return (np.asarray(x, dtype=float) / self.b1) ** self.b2

    def support(self):
        return (0.0, self.b1)


class PowerPareto(QuantileModel):
    """Q(p) = c * p^l1 * (1-p)^(-l2)."""

    family = "powerpareto"

    def __init__(self, c: float, l1: float, l2: float):
        self.c = _require_positive("c", c)
        self.l1 = _require_positive("l1", l1)
        self.l2 = _require_positive("l2", l2)
        self._params = (self.c, self.l1, self.l2)

    def _Q(self, p):
        return self.c * p ** self.l1 * (1.0 - p) ** (-self.l2)

    def _q(self, p):
        # c p^(l1-1) (1-p)^(-l2-1) [l1 + p(l2-l1)]
        return (self.c * p ** (self.l1 - 1.0) * (1.0 - p) ** (-self.l2 - 1.0)
                * (self.l1 + p * (self.l2 - self.l1)))

    def support(self):
        return (0.0, math.inf)


class Govindarajulu(QuantileModel):
    """Q(p) = sigma * ((beta+1) p^beta - beta p^(beta+1)).

    sigma=1, beta=1 gives the unit form 2p - p^2.
    """

    family = "govindarajulu"

    def __init__(self, sigma: float, beta: float):
        self.sigma = _require_positive("sigma", sigma)
        self.beta = _require_positive("beta", beta)
        self._params = (self.sigma, self.beta)

    def _Q(self, p):
        b = self.beta
        return self.sigma * ((b + 1.0) * p ** b - b * p ** (b + 1.0))

    def _q(self, p):
        b = self.beta
        return self.sigma * b * (b + 1.0) * p ** (b - 1.0) * (1.0 - p)

    def support(self):
        return (0.0, self.sigma)


class LinearHazardQuantile(QuantileModel):
    """Family whose hazard quantile function is the line a + b*p.

    Q(p) = (1/(a+b)) * log((a + b p) / (a (1-p))) and
    q(p) = 1 / ((1-p)(a + b p)), which is positive on (0,1) whenever
    a > 0 and a + b > 0; no further ordering of a and b is required.
    """

    family = "lhq"

    def __init__(self, a: float, b: float):
        self.a = _require_positive("a", a)
        if not (a + b > 0 and math.isfinite(b)):
            raise ParamError("requires a + b > 0")
        self.b = float(b)
        self._params = (self.a, self.b)

    def _Q(self, p):
        return np.log((self.a + self.b * p) / (self.a * (1.0 - p))) / (self.a + self.b)

    def _q(self, p):
        return 1.0 / ((1.0 - p) * (self.a + self.b * p))

    def _inverse(self, x):
        # solve (a+bp) = a e^{(a+b)x} (1-p)
        e = np.exp((self.a + self.b) * np.asarray(x, dtype=float))
        return self.a * (e - 1.0) / (self.a * e + self.b)

    def support(self):
        return (0.0, math.inf)


class ReciprocalExponential(QuantileModel):
    """Q(p) = -lam / log(p)."""

    family = "recipexp"

    def __init__(self, lam: float):
        self.lam = _require_positive("lam", lam)
        self._params = (self.lam,)

    def _Q(self, p):
        return -self.lam / np.log(p)

    def _q(self, p):
        logp = np.log(p)
        return self.lam / (p * logp * logp)

    def _inverse(self, x):
        return np.exp(-self.lam / np.asarray(x, dtype=float))

    def support(self):
        return (0.0, math.inf)


FAMILIES = {
    cls.family: cls
    for cls in (Exponential, ParetoI, ParetoII, Power, PowerPareto,
                Govindarajulu, LinearHazardQuantile, ReciprocalExponential)
}


def make_model(family: str, params) -> QuantileModel:
    """Instantiate a family by name with a positional parameter list."""
    try:
        cls = FAMILIES[family]
    except KeyError:
        raise ParamError(f"unknown family {family!r}; "
                         f"choose from {sorted(FAMILIES)}") from None
    return cls(*params)


# ---------------------------------------------------------------------------
# functional surface
# ---------------------------------------------------------------------------

def eval_Q(model: QuantileModel, p):
    """Evaluate a model's quantile function."""
    return model.Q(p)


def eval_q(model: QuantileModel, p):
    """Evaluate a model's quantile density."""
    return model.q(p)


def _bisect_inverse(model: QuantileModel, x, cfg: EvalConfig):
    """Vectorised bisection of Q on [eps, 1-eps]; Q is nondecreasing so
    the bracket is guaranteed."""
    x = np.asarray(x, dtype=float)
    lo = np.full(x.shape, cfg.endpoint_eps)
    hi = np.full(x.shape, 1.0 - cfg.endpoint_eps)
    qlo = np.asarray(model.Q(lo), dtype=float)
    qhi = np.asarray(model.Q(hi), dtype=float)
    tol = cfg.root_tol * np.maximum(1.0, np.abs(x))
    # clamp targets into the bracket range: values at or beyond the
    # evaluable range resolve to the corresponding endpoint
    xc = np.clip(x, qlo, qhi)
    mid = 0.5 * (lo + hi)
    for _ in range(cfg.max_subdivisions):
        mid = 0.5 * (lo + hi)
        f = np.asarray(model.Q(mid), dtype=float) - xc
        if np.all(np.abs(f) <= tol):
            return mid
        go_right = f < 0.0
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
    f = np.asarray(model.Q(mid), dtype=float) - xc
    if np.all(np.abs(f) <= tol):
        return mid
    raise NoConvergence(
        f"bisection did not reach |Q(p)-x| <= root_tol*max(1,|x|) within "
        f"{cfg.max_subdivisions} steps")


def invert_Q(model: QuantileModel, x, cfg: EvalConfig = DEFAULT_CONFIG):
    """Probability p with Q(p) = x, i.e. the cdf of the model at x.

    Closed-form inverses are used where the family has one; otherwise
    bisection on [endpoint_eps, 1-endpoint_eps].
    """
    arr = np.asarray(x, dtype=float)
    lo, hi = model.support()
    slack = cfg.root_tol * np.maximum(1.0, np.abs(arr))
    if np.any(arr < lo - slack) or np.any(arr > hi + slack):
        raise DomainError(
            f"value outside the support [{lo:g}, {hi:g}] of {model!r}")
    closed = model._inverse(arr)
    if closed is not None:
        out = np.clip(closed, 0.0, 1.0)
    else:
        out = _bisect_inverse(model, arr, cfg)
    return _maybe_scalar(out, x)


def hazard_quantile(model, p, cfg: EvalConfig = DEFAULT_CONFIG):
    """Hazard rate on the probability scale, 1 / ((1-p) q(p)).

    Accepts a QuantileModel or a ComposedModel (using q3 for the latter).
    """
    q = model.q3(p) if isinstance(model, ComposedModel) else model.q(p)
    if np.any(np.asarray(q) == 0.0):
        raise DegenerateDensity("quantile density vanishes at the requested point")
    return 1.0 / ((1.0 - np.asarray(p, dtype=float)) * q)


def reversed_hazard_quantile(model, p, cfg: EvalConfig = DEFAULT_CONFIG):
    """Reversed hazard rate on the probability scale, 1 / (p q(p))."""
    q = model.q3(p) if isinstance(model, ComposedModel) else model.q(p)
    if np.any(np.asarray(q) == 0.0):
        raise DegenerateDensity("quantile density vanishes at the requested point")
    return 1.0 / (np.asarray(p, dtype=float) * q)


# ---------------------------------------------------------------------------
# closed-form distortion strategies
# ---------------------------------------------------------------------------

class PowerSurvivalDistortion:
    """Q3(p) = 1 - (1-p)^theta.

    Covers proportional hazards, exponential pairs (theta = lam1/lam2)
    and Pareto II pairs (theta = beta2/beta1).  All three functionals
    have closed forms with denominator D = alpha + theta (1 - alpha).
    """

    def __init__(self, theta: float):
        self.theta = _require_positive("theta", theta)

    def Q3(self, p):
        return 1.0 - (1.0 - p) ** self.theta

    def q3(self, p):
        return self.theta * (1.0 - p) ** (self.theta - 1.0)

    def breakpoints(self):
        return ()

    def _denom(self, alpha):
        return alpha + self.theta * (1.0 - alpha)

    def igf_closed(self, alpha):
        d = self._denom(alpha)
        if d <= 0.0:
            raise DivergentIntegral(
                f"closed form requires alpha + theta(1-alpha) > 0; got {d:g}")
        return self.theta ** (1.0 - alpha) / d

    def residual_closed(self, alpha, u):
        return self.igf_closed(alpha)  # free of u

    def past_closed(self, alpha, u):
        th, e = self.theta, self._denom(alpha)
        if e == 0.0:
            tail = math.log(1.0 / (1.0 - u))
        else:
            tail = (1.0 - (1.0 - u) ** e) / e
        return ((1.0 - (1.0 - u) ** th) ** (alpha - 1.0) * u ** (-alpha)
                * th ** (1.0 - alpha) * tail)


class PowerCdfDistortion:
    """Q3(p) = p^c (proportional reversed hazards with constant c)."""

    def __init__(self, c: float):
        self.c = _require_positive("c", c)

    def Q3(self, p):
        return p ** self.c

    def q3(self, p):
        return self.c * p ** (self.c - 1.0)

    def breakpoints(self):
        return ()

    def _denom(self, alpha):
        return alpha + self.c * (1.0 - alpha)

    def igf_closed(self, alpha):
        e = self._denom(alpha)
        if e <= 0.0:
            raise DivergentIntegral(
                f"closed form requires alpha + c(1-alpha) > 0; got {e:g}")
        return self.c ** (1.0 - alpha) / e

    def past_closed(self, alpha, u):
        return self.igf_closed(alpha)  # free of u

    def residual_closed(self, alpha, u):
        c, e = self.c, self._denom(alpha)
        if e == 0.0:
            tail = math.log(1.0 / u)
        else:
            tail = (1.0 - u ** e) / e
        return ((1.0 - u ** c) ** (alpha - 1.0) * (1.0 - u) ** (-alpha)
                * c ** (1.0 - alpha) * tail)


class OddsDistortion:
    """Q3(p) = p / (theta + p (1 - theta)), the proportional-odds map.

    The survival-ratio and cdf-ratio formulations induce the same
    distortion when their constants agree, so one kernel serves both.
    """

    def __init__(self, theta: float, kind: str = "po_cdf"):
        self.theta = _require_positive("theta", theta)
        if kind == "po_survival" and not self.theta < 1.0:
            raise ParamError("survival-odds constant must lie in (0, 1)")
        self.kind = kind

    def Q3(self, p):
        return p / (self.theta + p * (1.0 - self.theta))

    def q3(self, p):
        w = self.theta + p * (1.0 - self.theta)
        return self.theta / (w * w)

    def breakpoints(self):
        return ()

    def _w(self, u):
        return self.theta + u * (1.0 - self.theta)

    def _tail(self, alpha, w_lo, w_hi):
        """int of q3^(1-alpha) over the w-interval [w_lo, w_hi]."""
        th = self.theta
        if alpha == 0.5:
            core = math.log(w_hi / w_lo)
        else:
            core = (w_hi ** (2.0 * alpha - 1.0) - w_lo ** (2.0 * alpha - 1.0)
                    ) / (2.0 * alpha - 1.0)
        return th ** (1.0 - alpha) * core / (1.0 - th)

    def igf_closed(self, alpha):
        if self.theta == 1.0:
            return 1.0
        return self._tail(alpha, self.theta, 1.0)

    def residual_closed(self, alpha, u):
        # the survival-ratio formulation documents alpha > 1/2 as the
        # validity window of its closed form; enforced as a contract
        if self.kind == "po_survival" and not alpha > 0.5:
            raise DivergentIntegral(
                "the survival-odds residual closed form is only stated "
                "for alpha > 1/2; evaluate with method='quadrature' instead")
        th = self.theta
        if th == 1.0:
            return 1.0
        w = self._w(u)
        pref = (1.0 - u / w) ** (alpha - 1.0) * (1.0 - u) ** (-alpha)
        return pref * self._tail(alpha, w, 1.0)

    def past_closed(self, alpha, u):
        th = self.theta
        if th == 1.0:
            return 1.0
        w = self._w(u)
        pref = (u / w) ** (alpha - 1.0) * u ** (-alpha)
        return pref * self._tail(alpha, th, w)


class GovindarajuluRecipExpDistortion:
    """Q3(p) = exp(-lam / Q1(p)) for Govindarajulu Q1 composed with a
    reciprocal-exponential Q2.  The distortion is defective: Q3(1) =
    exp(-lam / sigma) < 1, because Q2's support extends beyond Q1's
    upper bound.  Functionals are evaluated by quadrature."""

    def __init__(self, q1: "Govindarajulu", lam: float):
        self.q1 = q1
        self.lam = _require_positive("lam", lam)

    def Q3(self, p):
        arr = np.clip(np.asarray(p, dtype=float), 1e-300, None)
        with np.errstate(divide="ignore"):
            out = np.exp(-self.lam / self.q1._Q(arr))
        return out

    def q3(self, p):
        arr = np.asarray(p, dtype=float)
        base = self.q1._Q(arr)
        return self.Q3(arr) * self.lam * self.q1._q(arr) / (base * base)

    def breakpoints(self):
        return ()


class PowerParetoPowerDistortion:
    """Power-Pareto Q1 against a bounded-support power Q2.

    Q1 is unbounded while Q2 lives on [0, b1], so the generalised
    inverse saturates: Q3 = 1 and q3 = 0 beyond the probability p_cap
    at which Q1 reaches b1.  This matches the density-domain integral,
    where the power density vanishes outside its support.
    """

    def __init__(self, q1: "PowerPareto", q2: "Power"):
        self.q1 = q1
        self.q2 = q2
        self.p_cap = self._find_cap()

    def _find_cap(self):
        lo, hi = 1e-15, 1.0 - 1e-15
        target = self.q2.b1
        if self.q1._Q(np.float64(lo)) >= target:
            return 0.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.q1._Q(np.float64(mid)) < target:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def Q3(self, p):
        arr = np.asarray(p, dtype=float)
        raw = (self.q1._Q(np.clip(arr, 1e-300, self.p_cap)) / self.q2.b1) ** self.q2.b2
        return np.where(arr >= self.p_cap, 1.0, np.minimum(raw, 1.0))

    def q3(self, p):
        arr = np.asarray(p, dtype=float)
        c, l1, l2 = self.q1.c, self.q1.l1, self.q1.l2
        b1, b2 = self.q2.b1, self.q2.b2
        safe = np.clip(arr, 1e-300, self.p_cap)
        raw = (b2 * (c / b1) ** b2 * safe ** (l1 * b2 - 1.0)
               * (1.0 - safe) ** (-l2 * b2 - 1.0)
               * (l1 + safe * (l2 - l1)))
        return np.where(arr >= self.p_cap, 0.0, raw)

    def breakpoints(self):
        return (self.p_cap,)


class GTransformDistortion:
    """Distortion induced by a unit-interval distribution G.

    On the survival scale Q3(p) = 1 - G(1-p) and q3(p) = g(1-p); on the
    cdf scale Q3(p) = G(p) and q3(p) = g(p).
    """

    def __init__(self, g, scale: str):
        if scale not in ("survival", "cdf"):
            raise ParamError("scale must be 'survival' or 'cdf'")
        self.g = g
        self.scale = scale

    def Q3(self, p):
        arr = np.asarray(p, dtype=float)
        if self.scale == "survival":
            return 1.0 - self.g.cdf(1.0 - arr)
        return self.g.cdf(arr)

    def q3(self, p):
        arr = np.asarray(p, dtype=float)
        if self.scale == "survival":
            return self.g.pdf(1.0 - arr)
        return self.g.pdf(arr)

    def breakpoints(self):
        return tuple(getattr(self.g, "breakpoints", ()))


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComposedModel:
    """The distortion Q3 = Q2^{-1} o Q1 with its density q3.

    ``distortion`` carries a closed-form strategy when the pair matches
    a known family combination (tag in ``closed_form``); otherwise Q3
    and q3 are computed through inversion of Q2.  Instances are
    immutable and reentrant.
    """

    q1_model: Optional[QuantileModel]
    q2_model: Optional[QuantileModel]
    distortion: Optional[object] = None
    closed_form: Optional[str] = None
    cfg: EvalConfig = DEFAULT_CONFIG

    def Q3(self, p):
        arr = np.asarray(p, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError("probability must lie in [0, 1]")
        if self.distortion is not None:
            out = self.distortion.Q3(arr)
        else:
            out = self._generic_Q3(arr)
        return _maybe_scalar(np.clip(out, 0.0, 1.0), p)

    def q3(self, p):
        arr = np.asarray(p, dtype=float)
        if np.any(arr <= 0.0) or np.any(arr >= 1.0):
            raise DomainError("probability must lie strictly inside (0, 1)")
        if self.distortion is not None:
            out = self.distortion.q3(arr)
        else:
            out = self._generic_q3(arr)
        return _maybe_scalar(out, p)

    def breakpoints(self) -> tuple:
        """Interior points where q3 may be non-smooth (quadrature hints)."""
        if self.distortion is not None:
            return tuple(self.distortion.breakpoints())
        return ()

    # -- numeric route ---------------------------------------------------
    def _generic_Q3(self, arr):
        eps = self.cfg.endpoint_eps
        inner = np.clip(arr, eps, 1.0 - eps)
        x = self.q1_model.Q(inner)
        return invert_Q(self.q2_model, x, self.cfg)

    def _generic_q3(self, arr):
        # q3(p) = q1(p) * f2(Q1(p)) with f2 = 1 / q2(Q2^{-1}(.)); the
        # inverted probability is clamped to the representable interior
        # only, so tail behaviour is preserved down to underflow
        u2 = self._generic_Q3(arr)
        u2 = np.clip(u2, 5e-324, np.nextafter(1.0, 0.0))
        with np.errstate(divide="ignore", over="ignore"):
            out = self.q1_model.q(arr) / self.q2_model.q(u2)
        return np.where(np.isfinite(out), out, 0.0)

    def __repr__(self):
        if self.closed_form and self.q1_model is None:
            return f"ComposedModel(<{self.closed_form}>)"
        return (f"ComposedModel({self.q1_model!r}, {self.q2_model!r}, "
                f"closed_form={self.closed_form!r})")


def _detect_closed_form(q1, q2):
    if isinstance(q1, Exponential) and isinstance(q2, Exponential):
        return "exp_pair", PowerSurvivalDistortion(q1.lam / q2.lam)
    if isinstance(q1, ParetoII) and isinstance(q2, ParetoII):
        return "pareto2_pair", PowerSurvivalDistortion(q2.beta / q1.beta)
    if isinstance(q1, Govindarajulu) and isinstance(q2, ReciprocalExponential):
        return "govindarajulu_recipexp", GovindarajuluRecipExpDistortion(q1, q2.lam)
    if isinstance(q1, PowerPareto) and isinstance(q2, Power):
        return "powerpareto_power", PowerParetoPowerDistortion(q1, q2)
    return None, None


def _check_support(q1, q2, cfg):
    lo1, hi1 = q1.support()
    lo2, hi2 = q2.support()
    eps = cfg.endpoint_eps
    left = q1.Q(eps) if not math.isfinite(lo1) else lo1
    right = q1.Q(1.0 - eps) if not math.isfinite(hi1) else hi1
    atol = 1e-12 * max(1.0, abs(right) if math.isfinite(right) else 1.0)
    if left < lo2 - atol or (math.isfinite(hi2) and right > hi2 + atol):
        raise SupportMismatch(
            f"support of {q1!r} reaches [{left:g}, {right:g}] which is not "
            f"contained in the support [{lo2:g}, {hi2:g}] of {q2!r}")


def compose(q1: QuantileModel, q2: QuantileModel,
            cfg: EvalConfig = DEFAULT_CONFIG) -> ComposedModel:
    """Build the distortion model for the pair (Q1, Q2).

    Pairs matching a known closed form are tagged and evaluated
    analytically (including the saturating power-Pareto/power pair);
    any other pair must have the support of Q1 contained in the closure
    of the support of Q2.
    """
    tag, strategy = _detect_closed_form(q1, q2)
    if strategy is None:
        _check_support(q1, q2, cfg)
    return ComposedModel(q1, q2, strategy, tag, cfg)
