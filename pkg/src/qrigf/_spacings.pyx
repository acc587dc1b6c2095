# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled spacing kernels.

Hot loops behind the nonparametric estimators: spacing power sums,
plug-in tail/head integrals over grids of truncation points, and the
piecewise step quantile/density evaluators.  Must stay semantically
identical to qrigf._spacings_py (same knot guard, same partial-cell
rule); tests compare both backends.
"""
from libc.math cimport ceil, pow

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


cdef inline Py_ssize_t _cell(Py_ssize_t n, double u) nogil:
    cdef double raw = ceil(n * u - 1e-9)
    cdef Py_ssize_t r = <Py_ssize_t> raw
    if r < 1:
        r = 1
    if r > n:
        r = n
    return r


def power_mean(double[::1] z, double z0, double expo):
    """(1/n) * sum_j (n * (z_j - z_{j-1}))**expo."""
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t j
    cdef double acc = 0.0
    cdef double prev = z0
    cdef double nn = <double> n
    for j in range(n):
        acc += pow(nn * (z[j] - prev), expo)
        prev = z[j]
    return acc / nn


def tail_sums(double[::1] z, double z0, double expo, double[::1] us):
    """Plug-in integral of the step density power over [u, 1] per u."""
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t m = us.shape[0]
    cdef double nn = <double> n
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] suffix = np.zeros(n + 1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double[::1] tv = t
    cdef double[::1] sv = suffix
    cdef double[::1] ov = out
    cdef Py_ssize_t j, i, r
    cdef double prev = z0
    cdef double width
    for j in range(n):
        tv[j] = pow(nn * (z[j] - prev), expo)
        prev = z[j]
    for j in range(n - 1, -1, -1):
        sv[j] = sv[j + 1] + tv[j]
    for i in range(m):
        r = _cell(n, us[i])
        width = (<double> r) / nn - us[i]
        if width < 0.0:
            width = 0.0
        ov[i] = width * tv[r - 1] + sv[r] / nn
    return out


def head_sums(double[::1] z, double z0, double expo, double[::1] us):
    """Plug-in integral of the step density power over [0, u] per u."""
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t m = us.shape[0]
    cdef double nn = <double> n
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] prefix = np.zeros(n + 1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double[::1] tv = t
    cdef double[::1] pv = prefix
    cdef double[::1] ov = out
    cdef Py_ssize_t j, i, r
    cdef double prev = z0
    cdef double width
    for j in range(n):
        tv[j] = pow(nn * (z[j] - prev), expo)
        prev = z[j]
    for j in range(n):
        pv[j + 1] = pv[j] + tv[j]
    for i in range(m):
        r = _cell(n, us[i])
        width = us[i] - (<double> (r - 1)) / nn
        if width < 0.0:
            width = 0.0
        ov[i] = pv[r - 1] / nn + width * tv[r - 1]
    return out


def step_quantile(double[::1] z, double z0, double[::1] us):
    """Piecewise-linear quantile interpolant anchored at z0, knots j/n."""
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t m = us.shape[0]
    cdef double nn = <double> n
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, r
    cdef double u, zlo
    for i in range(m):
        u = us[i]
        if u == 0.0:
            ov[i] = 0.0
            continue
        if u == 1.0:
            ov[i] = z[n - 1]
            continue
        r = _cell(n, u)
        zlo = z0 if r == 1 else z[r - 2]
        ov[i] = nn * ((<double> r) / nn - u) * zlo + nn * (u - (<double> (r - 1)) / nn) * z[r - 1]
    return out


def step_density(double[::1] z, double z0, double[::1] us):
    """Cell slope n * (z_r - z_{r-1}) for the cell containing each u."""
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t m = us.shape[0]
    cdef double nn = <double> n
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, r
    cdef double prev
    for i in range(m):
        r = _cell(n, us[i])
        prev = z0 if r == 1 else z[r - 2]
        ov[i] = nn * (z[r - 1] - prev)
    return out
