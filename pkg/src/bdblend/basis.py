"""Blending-type basis, beta-type integral density, and the operator kernel.

The basis is evaluated in the expanded three-term form

    (1-a) C(n-2,k) x^k (1-x)^(n-k-1)
  + (1-a) C(n-2,k-2) x^(k-1) (1-x)^(n-k)
  + a C(n,k) x^k (1-x)^(n-k)

which agrees with the factored form on (0,1) and is total at the endpoints
(0^0 = 1). Everything is computed in log space with one exponentiation per
term; all terms are nonnegative so the linear-space sum has no cancellation.
"""

from dataclasses import dataclass

import numpy as np

from . import _core, specfun


@dataclass(frozen=True)
class OperatorParams:
    """The triple (n, alpha, rho) identifying one operator."""

    n: int
    alpha: float
    rho: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho}")

    @property
    def nrho(self) -> float:
        return self.n * self.rho


def basis_weights(params: OperatorParams, x: float) -> np.ndarray:
    """All n+1 basis weights at the point x, as a fresh array."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    n = params.n
    out = np.empty(n + 1)
    _core.basis_weights(params.alpha, float(x),
                        specfun.log_binomial_row(n - 2),
                        specfun.log_binomial_row(n),
                        out)
    return out


def basis_weight(params: OperatorParams, k: int, x: float) -> float:
    """Single basis weight p_k(x); k must lie in 0..n."""
    if not 0 <= k <= params.n:
        raise ValueError(f"k must be in 0..{params.n}, got {k}")
    return float(basis_weights(params, x)[k])


def bernstein_weights(n: int, x: float) -> np.ndarray:
    """Classical Bernstein weights C(n,k) x^k (1-x)^(n-k), k = 0..n."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    out = np.empty(n + 1)
    _core.bernstein_weights(float(x), specfun.log_binomial_row(n), out)
    return out


def density_log_norm(params: OperatorParams, k: int) -> float:
    """ln B(k rho + 1, (n-k) rho + 1), the density normalizer for slot k."""
    return specfun.log_beta(k * params.rho + 1.0, (params.n - k) * params.rho + 1.0)


def durrmeyer_log_density(params: OperatorParams, k: int, t) -> np.ndarray | float:
    """ln of the beta-type density for slot k, elementwise over t.

    Returns -inf where the density vanishes (t at an endpoint with a positive
    exponent). Scalar t in, scalar out.
    """
    if not 0 <= k <= params.n:
        raise ValueError(f"k must be in 0..{params.n}, got {k}")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any((t_arr < 0.0) | (t_arr > 1.0)):
        raise ValueError("t must lie in [0, 1]")
    out = np.empty(t_arr.shape)
    _core.beta_log_density(k * params.rho, (params.n - k) * params.rho,
                           density_log_norm(params, k), t_arr, out)
    return float(out[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else out


def kernel(params: OperatorParams, x: float, t) -> np.ndarray | float:
    """Operator kernel U(x, t) = sum_k p_k(x) mu_k(t); integrates to 1 in t."""
    w = basis_weights(params, x)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any((t_arr < 0.0) | (t_arr > 1.0)):
        raise ValueError("t must lie in [0, 1]")
    total = np.zeros(t_arr.shape)
    logmu = np.empty(t_arr.shape)
    for k in range(params.n + 1):
        if w[k] == 0.0:
            continue
        _core.beta_log_density(k * params.rho, (params.n - k) * params.rho,
                               density_log_norm(params, k), t_arr, logmu)
        total += w[k] * np.exp(logmu)
    return float(total[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else total
