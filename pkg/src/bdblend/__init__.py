"""Blending-type Bernstein-Durrmeyer operators.

A library plus CLI for the one-parameter blend of Bernstein bases combined
with a beta-type Durrmeyer integral modification: operator application,
closed-form moments validated against an adaptive quadrature oracle, moduli
of smoothness, and empirical audits of the associated convergence theorems.

All public functions are pure and reentrant; nothing mutates shared state
beyond internal read-only caches, so concurrent use is safe.
"""

from ._core import backend_name
from .basis import OperatorParams, basis_weight, basis_weights, durrmeyer_log_density, kernel
from .bounds import BoundReport
from .moments import MomentReport, central_moment, raw_moment, scaled_limit
from .operator import (ErrorSummary, ScalarFunction, apply, apply_grid,
                       classical_durrmeyer, sup_error)
from .quadrature import (ConvergenceError, QuadratureSpec, beta_weighted_integral,
                         integrate)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ConvergenceError",
    "ErrorSummary",
    "MomentReport",
    "OperatorParams",
    "QuadratureSpec",
    "ScalarFunction",
    "apply",
    "apply_grid",
    "backend_name",
    "basis_weight",
    "basis_weights",
    "beta_weighted_integral",
    "central_moment",
    "classical_durrmeyer",
    "durrmeyer_log_density",
    "integrate",
    "kernel",
    "raw_moment",
    "scaled_limit",
    "sup_error",
    "__version__",
]
