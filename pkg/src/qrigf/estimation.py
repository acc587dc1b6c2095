"""Nonparametric estimation from samples of the distortion distribution.

A sample Z_1..Z_n from Q3 (values in [0,1]) is summarised by its order
statistics with the anchoring convention Z_(0) = 0; the distortion is
estimated by the piecewise-linear interpolant with knots at j/n and the
quantile density by the cell slopes n (Z_(j) - Z_(j-1)).  All three
generating functionals then have exact plug-in forms built from powers
of the spacings.

The plug-in integrals use the cell-index reading of the truncation
point: the cell containing u contributes its [u, r/n] (or [(r-1)/n, u])
portion, so the estimator integrates the step density exactly and the
u = 0 / u = 1 limits coincide bitwise with the untruncated statistic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels as kern
from .errors import DomainError, TooSmall, ZeroSpacing
from .models import ComposedModel

__all__ = [
    "OrderedSample",
    "order_sample",
    "parzen_Q3",
    "parzen_q3",
    "EstimateReport",
    "estimate_igf",
    "estimate_kl",
    "estimate_residual",
    "estimate_past",
    "sample_from_Q3",
    "empirical_Q3_sample",
    "read_sample_file",
    "write_sample_file",
]

TIE_DELTA = 1e-12
RANGE_SLACK = 1e-12


@dataclass(frozen=True)
class OrderedSample:
    """Nondecreasing sample of the distortion distribution on [0,1].

    z0 is the Z_(0) anchoring convention (0 by construction: the
    distortion starts at 0).  seed/source are provenance metadata.
    """

    z: np.ndarray
    z0: float = 0.0
    seed: Optional[int] = None
    source: str = "raw"

    def __post_init__(self):
        arr = np.asarray(self.z, dtype=np.float64)
        if arr.ndim != 1:
            raise DomainError("sample must be one-dimensional")
        if arr.shape[0] < 2:
            raise TooSmall("need at least two observations")
        if np.any(np.diff(arr) < 0):
            raise DomainError("sample must be sorted nondecreasing")
        if arr[0] < 0.0 or arr[-1] > 1.0:
            raise DomainError("sample values must lie in [0, 1]")
        object.__setattr__(self, "z", arr)

    @property
    def n(self) -> int:
        return int(self.z.shape[0])


def order_sample(raw, *, seed: Optional[int] = None,
                 source: str = "raw") -> OrderedSample:
    """Sort a raw sample, clamp 1e-12-scale overshoots, separate ties.

    Ties are opened into a deterministic ladder with step 1e-12 so that
    every spacing is strictly positive; continuous models produce ties
    with probability zero, so ties indicate discretised input.
    """
    arr = np.sort(np.asarray(raw, dtype=np.float64))
    if arr.ndim != 1:
        raise DomainError("sample must be one-dimensional")
    if arr.shape[0] < 2:
        raise TooSmall("need at least two observations")
    if arr[0] < -RANGE_SLACK or arr[-1] > 1.0 + RANGE_SLACK:
        raise DomainError(
            f"values outside [0, 1]: range [{arr[0]!r}, {arr[-1]!r}]")
    np.clip(arr, 0.0, 1.0, out=arr)
    for i in range(1, len(arr)):
        if arr[i] <= arr[i - 1]:
            arr[i] = arr[i - 1] + TIE_DELTA
    if arr[-1] > 1.0:
        # ladder overflowed past 1; rebuild it downward from the top
        arr[-1] = 1.0
        for i in range(len(arr) - 2, -1, -1):
            if arr[i] >= arr[i + 1]:
                arr[i] = arr[i + 1] - TIE_DELTA
        if arr[0] < 0.0:
            raise DomainError("too many tied values to separate inside [0, 1]")
    return OrderedSample(arr, seed=seed, source=source)


def _check_u(u, lo_open=False, hi_open=False):
    u = float(u)
    if not (0.0 <= u <= 1.0):
        raise DomainError("u must lie in [0, 1]")
    if lo_open and u == 0.0:
        raise DomainError("u must be positive")
    if hi_open and u == 1.0:
        raise DomainError("u must be below 1")
    return u


def parzen_Q3(s: OrderedSample, u):
    """Piecewise-linear estimate of the distortion at u.

    Interpolates between Z_(r-1) and Z_(r) inside cell r = ceil(n u);
    exact at the knots, 0 at u = 0, Z_(n) at u = 1.
    """
    us = np.atleast_1d(np.asarray(u, dtype=np.float64))
    if np.any(us < 0.0) or np.any(us > 1.0):
        raise DomainError("u must lie in [0, 1]")
    out = kern.step_quantile(s.z, s.z0, us)
    return float(out[0]) if np.ndim(u) == 0 else out


def parzen_q3(s: OrderedSample, u):
    """Step estimate of the quantile density: the slope of the cell
    containing u."""
    us = np.atleast_1d(np.asarray(u, dtype=np.float64))
    if np.any(us <= 0.0) or np.any(us > 1.0):
        raise DomainError("u must lie in (0, 1]")
    out = kern.step_density(s.z, s.z0, us)
    return float(out[0]) if np.ndim(u) == 0 else out


@dataclass(frozen=True)
class EstimateReport:
    """A point estimate with its provenance."""

    alpha: float
    u: Optional[float]
    estimate: float
    kind: str  # "igf" | "residual" | "past"
    n: int
    seed: Optional[int] = None
    source: str = "raw"


def _check_alpha_est(s: OrderedSample, alpha):
    alpha = float(alpha)
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise DomainError("alpha must be a finite positive number")
    if alpha > 1.0:
        d = np.diff(s.z, prepend=s.z0)
        if np.any(d == 0.0):
            raise ZeroSpacing(
                "zero spacing makes the power diverge for alpha > 1; "
                "run the sample through order_sample to apply the tie policy")
    return alpha


def _report(s, alpha, u, value, kind):
    return EstimateReport(alpha=alpha, u=u, estimate=float(value), kind=kind,
                          n=s.n, seed=s.seed, source=s.source)


def estimate_igf(s: OrderedSample, alpha: float) -> EstimateReport:
    """Spacing statistic (1/n) sum_j [n (Z_(j) - Z_(j-1))]^(1-alpha).

    alpha = 1 returns exactly 1 for any sample.
    """
    alpha = _check_alpha_est(s, alpha)
    if alpha == 1.0:
        return _report(s, alpha, None, 1.0, "igf")
    value = kern.power_mean(s.z, s.z0, 1.0 - alpha)
    return _report(s, alpha, None, value, "igf")


def estimate_kl(s: OrderedSample) -> EstimateReport:
    """Log-spacing statistic -(1/n) sum_j log[n (Z_(j) - Z_(j-1))].

    Plug-in form of the quantile K-L divergence (the alpha-derivative
    of the generating-function statistic at 1).
    """
    d = np.diff(s.z, prepend=s.z0)
    if np.any(d == 0.0):
        raise ZeroSpacing(
            "zero spacing makes the log statistic diverge; run the sample "
            "through order_sample to apply the tie policy")
    value = -float(np.mean(np.log(s.n * d)))
    return EstimateReport(alpha=1.0, u=None, estimate=value, kind="kl",
                          n=s.n, seed=s.seed, source=s.source)


def estimate_residual(s: OrderedSample, alpha: float, u: float) -> EstimateReport:
    """Plug-in residual statistic at truncation probability u in [0, 1).

    u = 0 coincides bitwise with :func:`estimate_igf`.
    """
    u = _check_u(u, hi_open=True)
    alpha = _check_alpha_est(s, alpha)
    if alpha == 1.0:
        return _report(s, alpha, u, 1.0, "residual")
    if u == 0.0:
        value = kern.power_mean(s.z, s.z0, 1.0 - alpha)
    else:
        tail = kern.tail_sums(s.z, s.z0, 1.0 - alpha, np.asarray([u]))[0]
        pref = (1.0 - parzen_Q3(s, u)) ** (alpha - 1.0) / (1.0 - u) ** alpha
        value = pref * tail
    return _report(s, alpha, u, value, "residual")


def estimate_past(s: OrderedSample, alpha: float, u: float) -> EstimateReport:
    """Plug-in past statistic at truncation probability u in (0, 1].

    u = 1 coincides bitwise with :func:`estimate_igf`.
    """
    u = _check_u(u, lo_open=True)
    alpha = _check_alpha_est(s, alpha)
    if alpha == 1.0:
        return _report(s, alpha, u, 1.0, "past")
    if u == 1.0:
        value = kern.power_mean(s.z, s.z0, 1.0 - alpha)
    else:
        head = kern.head_sums(s.z, s.z0, 1.0 - alpha, np.asarray([u]))[0]
        pref = parzen_Q3(s, u) ** (alpha - 1.0) / u ** alpha
        value = pref * head
    return _report(s, alpha, u, value, "past")


def sample_from_Q3(m: ComposedModel, n: int, seed: int) -> OrderedSample:
    """Inverse-transform sample Z_i = Q3(U_i), U_i from a seeded PCG64
    stream (numpy default_rng); deterministic per (seed, n, version)."""
    if n < 2:
        raise TooSmall("need n >= 2")
    rng = np.random.default_rng(seed)
    u = rng.uniform(size=n)
    z = np.asarray(m.Q3(u), dtype=np.float64)
    return order_sample(z, seed=seed, source="model")


def empirical_Q3_sample(x1, x2) -> OrderedSample:
    """Two-sample mode: Z_i is the empirical cdf of x2 evaluated at x1_i.

    Ranks are scaled by 1/(n2+1) and clamped to [1/(n2+1), n2/(n2+1)]
    so Z stays inside (0, 1); repeated Z values (several x1 points in
    one x2 gap) are separated by the tie ladder.
    """
    x1 = np.asarray(x1, dtype=np.float64)
    x2 = np.asarray(x2, dtype=np.float64)
    if x1.size < 2 or x2.size < 1:
        raise TooSmall("need at least two x1 values and one x2 value")
    ranks = np.searchsorted(np.sort(x2), x1, side="right")
    z = np.clip(ranks, 1, x2.size) / (x2.size + 1.0)
    return order_sample(z, source="two_sample")


def read_sample_file(path) -> np.ndarray:
    """Read one value per line; blank lines and '#' comments ignored."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise DomainError(
                    f"{path}:{lineno}: not a number: {text!r}") from None
    return np.asarray(values, dtype=np.float64)


def write_sample_file(path, values, header: str = "") -> None:
    """Write one value per line at full round-trip precision."""
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for v in np.asarray(values, dtype=np.float64):
            fh.write(format(v, ".17g") + "\n")
