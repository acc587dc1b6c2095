"""Numerical policy shared by quadrature, inversion and differentiation."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParamError


@dataclass(frozen=True)
class EvalConfig:
    """Tolerances and guard parameters for all numerical routines.

    endpoint_eps guards pointwise evaluation near 0 and 1 (bisection
    brackets, support checks, limit probes).  Definite integrals are
    delegated to adaptive Gauss-Kronrod quadrature over the full
    interval; integrable endpoint singularities are handled by the
    integrator itself, which only ever evaluates interior nodes.
    """

    quad_rel_tol: float = 1e-9
    quad_abs_tol: float = 1e-12
    endpoint_eps: float = 1e-10
    root_tol: float = 1e-12
    fd_step: float = 1e-5
    max_subdivisions: int = 200

    def __post_init__(self):
        for name in ("quad_rel_tol", "quad_abs_tol", "endpoint_eps",
                     "root_tol", "fd_step"):
            if getattr(self, name) <= 0:
                raise ParamError(f"{name} must be strictly positive")
        if not self.endpoint_eps < 1e-3:
            raise ParamError("endpoint_eps must be below 1e-3")
        if self.max_subdivisions < 1:
            raise ParamError("max_subdivisions must be a positive integer")


DEFAULT_CONFIG = EvalConfig()
