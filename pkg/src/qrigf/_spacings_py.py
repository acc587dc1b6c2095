"""Pure-NumPy spacing kernels (fallback backend).

Mirrors qrigf._spacings exactly, including the knot guard: the cell
index for a probability u is ceil(n*u - 1e-9) clamped to [1, n], so an
exact knot u = j/n falls in cell j even under float rounding.
"""
import numpy as np

BACKEND = "python"


def _spacings(z, z0):
    d = np.empty_like(z)
    d[0] = z[0] - z0
    d[1:] = z[1:] - z[:-1]
    return d


def _cells(n, us):
    r = np.ceil(n * us - 1e-9).astype(np.int64)
    return np.clip(r, 1, n)


def power_mean(z, z0, expo):
    """(1/n) * sum_j (n * (z_j - z_{j-1}))**expo."""
    n = z.shape[0]
    return float(np.mean((n * _spacings(z, z0)) ** expo))


def tail_sums(z, z0, expo, us):
    """Plug-in integral of the step density power over [u, 1] per u.

    Partial first cell (r/n - u) * t_r plus full cells above r, with
    t_j = (n * spacing_j)**expo.
    """
    n = z.shape[0]
    us = np.asarray(us, dtype=np.float64)
    t = (n * _spacings(z, z0)) ** expo
    suffix = np.zeros(n + 1)
    suffix[:n] = np.cumsum(t[::-1])[::-1]
    r = _cells(n, us)
    partial = np.maximum(r / n - us, 0.0) * t[r - 1]
    return partial + suffix[r] / n


def head_sums(z, z0, expo, us):
    """Plug-in integral of the step density power over [0, u] per u."""
    n = z.shape[0]
    us = np.asarray(us, dtype=np.float64)
    t = (n * _spacings(z, z0)) ** expo
    prefix = np.zeros(n + 1)
    prefix[1:] = np.cumsum(t)
    r = _cells(n, us)
    partial = np.maximum(us - (r - 1) / n, 0.0) * t[r - 1]
    return prefix[r - 1] / n + partial


def step_quantile(z, z0, us):
    """Piecewise-linear quantile interpolant anchored at z0, knots j/n."""
    n = z.shape[0]
    us = np.asarray(us, dtype=np.float64)
    r = _cells(n, us)
    zlo = np.where(r == 1, z0, z[np.maximum(r - 2, 0)])
    vals = n * (r / n - us) * zlo + n * (us - (r - 1) / n) * z[r - 1]
    vals = np.where(us == 0.0, 0.0, vals)
    vals = np.where(us == 1.0, z[n - 1], vals)
    return vals


def step_density(z, z0, us):
    """Cell slope n * (z_r - z_{r-1}) for the cell containing each u."""
    n = z.shape[0]
    us = np.asarray(us, dtype=np.float64)
    d = _spacings(z, z0)
    r = _cells(n, us)
    return n * d[r - 1]
