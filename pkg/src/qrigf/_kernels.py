"""Backend selection for the spacing kernels.

The compiled extension is preferred when importable; the pure-NumPy
fallback is used otherwise, or when QRIGF_FORCE_PYTHON is set.  Both
backends implement the same five functions with identical index
conventions.
"""
import os

from . import _spacings_py

if os.environ.get("QRIGF_FORCE_PYTHON"):
    _impl = _spacings_py
else:
    try:
        from . import _spacings as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _spacings_py

BACKEND = _impl.BACKEND
HAVE_COMPILED = BACKEND == "compiled"

power_mean = _impl.power_mean
tail_sums = _impl.tail_sums
head_sums = _impl.head_sums
step_quantile = _impl.step_quantile
step_density = _impl.step_density


def backend_name() -> str:
    """Which kernel backend is active: 'compiled' or 'python'."""
    return BACKEND
