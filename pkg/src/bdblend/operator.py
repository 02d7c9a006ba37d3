"""Applying the blending-type operator and the classical Durrmeyer operator.

The operator value at x is an exact sum over k of basis weights times
beta-weighted integrals of f. The integrals do not depend on x, so grid
evaluation computes them once (``weighted_moments``) and reduces each grid
point to a dot product.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import specfun
from .basis import OperatorParams, basis_weights, bernstein_weights
from .quadrature import (DEFAULT_SPEC, QuadratureSpec, beta_weighted_integral,
                         density_breakpoints, integrate)


@dataclass(frozen=True)
class ScalarFunction:
    """A real function on [0, 1], with optional analytic derivatives.

    ``value`` (and ``d1``/``d2`` when present) must accept numpy arrays.
    ``d1_left_at``/``d1_right_at`` give one-sided derivative limits at a
    point, for functions whose derivative jumps.
    """

    value: Callable
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    d1_left_at: Optional[Callable] = None
    d1_right_at: Optional[Callable] = None
    name: str = ""

    def __call__(self, x):
        return self.value(x)


@dataclass(frozen=True)
class ErrorSummary:
    """Grid max of |G f - f| with its arg-max; a proxy for the sup norm."""

    sup_error: float
    argmax_x: float
    grid_size: int


def weighted_moments(params: OperatorParams, f, spec: QuadratureSpec = DEFAULT_SPEC) -> np.ndarray:
    """The n+1 integrals of mu_k f; independent of x and of alpha."""
    return np.array([beta_weighted_integral(f, params, k, spec)
                     for k in range(params.n + 1)])


def apply(params: OperatorParams, f, x: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Operator value at a single point x."""
    return float(np.dot(basis_weights(params, x), weighted_moments(params, f, spec)))


def apply_grid(params: OperatorParams, f, xs, spec: QuadratureSpec = DEFAULT_SPEC) -> np.ndarray:
    """Operator values on a grid, sharing one set of weighted moments."""
    moments = weighted_moments(params, f, spec)
    return np.array([float(np.dot(basis_weights(params, x), moments)) for x in xs])


def apply_with_moments(params: OperatorParams, x: float, moments: np.ndarray) -> float:
    """Operator value from precomputed weighted moments."""
    return float(np.dot(basis_weights(params, x), moments))


def _bernstein_integrals(n: int, f, spec: QuadratureSpec) -> np.ndarray:
    """(n+1) * integral of p_{n,k}(t) f(t) dt for k = 0..n, own code path."""
    row = specfun.log_binomial_row(n)
    vals = np.empty(n + 1)
    params = OperatorParams(n, 1.0, 1.0)  # only for the breakpoint heuristic
    for k in range(n + 1):
        logc = row[k] + np.log1p(n)  # ln((n+1) C(n,k))

        def integrand(t, k=k, logc=logc):
            t = np.asarray(t, dtype=float)
            with np.errstate(divide="ignore", invalid="ignore"):
                lt = np.where(t > 0, np.log(np.where(t > 0, t, 0.5)), -np.inf)
                l1 = np.where(t < 1, np.log1p(np.where(t < 1, -t, -0.5)), -np.inf)
                expo = logc
                expo = expo + (k * lt if k else 0.0)
                expo = expo + ((n - k) * l1 if n - k else 0.0)
            return np.exp(expo) * np.asarray(f(t), dtype=float)

        vals[k] = integrate(integrand, 0.0, 1.0, spec,
                            points=density_breakpoints(params, k))
    return vals


def classical_durrmeyer(n: int, f, x: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Classical Bernstein-Durrmeyer operator D_n(f; x).

    Implemented independently of ``apply`` (own basis and plain integrals) so
    the two routes cross-check each other; they must agree with the blending
    operator at alpha = 1, rho = 1.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    return float(np.dot(bernstein_weights(n, x), _bernstein_integrals(n, f, spec)))


def classical_durrmeyer_grid(n: int, f, xs, spec: QuadratureSpec = DEFAULT_SPEC) -> np.ndarray:
    """D_n(f; x) on a grid, sharing one set of integrals."""
    vals = _bernstein_integrals(n, f, spec)
    return np.array([float(np.dot(bernstein_weights(n, x), vals)) for x in xs])


def sup_error(params: OperatorParams, f, grid_size: int = 257,
              spec: QuadratureSpec = DEFAULT_SPEC) -> ErrorSummary:
    """Max of |G(f;x) - f(x)| over a uniform grid including the endpoints."""
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size}")
    xs = np.linspace(0.0, 1.0, grid_size)
    errs = np.abs(apply_grid(params, f, xs, spec) - np.asarray(f(xs), dtype=float))
    i = int(np.argmax(errs))
    return ErrorSummary(sup_error=float(errs[i]), argmax_x=float(xs[i]), grid_size=grid_size)
