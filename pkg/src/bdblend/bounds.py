"""Right-hand sides of the convergence theorems, compared against measured
left-hand sides.

Theorems with an unspecified absolute constant are audited as
boundedness-of-ratio claims, never as fixed-constant inequalities. The
bounded-variation theorem's first term is printed without an absolute value
although it multiplies a nonnegative quantity; the right-hand side here uses
|1 - 2x| and the report flags this in ``extras['first_term_abs']``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import OperatorParams
from .moments import central_moment
from .operator import ScalarFunction, apply
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .smoothness import (DEFAULT_MODULUS_SPEC, ModulusSpec, jump_decompose,
                         modulus, modulus2, modulus_dt, total_variation)

THEOREM_IDS = ("voronovskaja", "local_smoothness", "global_weighted",
               "lipschitz", "c1_derivative", "dbv")

#: Inequality reports are satisfied when lhs <= rhs * (1 + SLACK) + SLACK_ABS.
#: The absolute floor absorbs quadrature noise in exact-zero cases (constant
#: functions, symmetric points) where both sides vanish analytically.
SLACK = 1e-9
SLACK_ABS = 1e-12


def _holds(lhs: float, rhs: float) -> bool:
    return lhs <= rhs * (1 + SLACK) + SLACK_ABS


@dataclass(frozen=True)
class BoundReport:
    """(lhs, rhs, satisfied) record for one theorem at one evaluation point."""

    theorem_id: str
    params: OperatorParams
    x: float
    lhs: float
    rhs: float
    satisfied: bool
    extras: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        """JSON-serializable form; one object per report."""
        return {
            "theorem_id": self.theorem_id,
            "n": self.params.n,
            "alpha": self.params.alpha,
            "rho": self.params.rho,
            "x": self.x,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "extras": self.extras,
        }


def _scalar(callable_, x):
    return float(np.asarray(callable_(np.array([float(x)])), dtype=float)[0])


def voronovskaja_rhs(f: ScalarFunction, rho: float, x: float) -> float:
    """Asymptotic limit of n (G f - f) at x: first/second derivative form."""
    if f.d1 is None or f.d2 is None:
        raise ValueError("voronovskaja_rhs requires f with d1 and d2")
    d1 = _scalar(f.d1, x)
    d2 = _scalar(f.d2, x)
    return (1 - 2 * x) / rho * d1 + (1 + rho) * x * (1 - x) / (2 * rho) * d2


def voronovskaja_residuals(f: ScalarFunction, alpha: float, rho: float, x: float,
                           n_sequence, spec: QuadratureSpec = DEFAULT_SPEC):
    """r_n = n (G_n f(x) - f(x)) - asymptotic rhs, for each n in the sequence."""
    ns = list(n_sequence)
    if any(b <= a for a, b in zip(ns, ns[1:])) or (ns and ns[0] < 2):
        raise ValueError("n_sequence must be increasing with entries >= 2")
    rhs = voronovskaja_rhs(f, rho, x)
    fx = _scalar(f.value, x)
    out = []
    for n in ns:
        gn = apply(OperatorParams(n, alpha, rho), f, x, spec)
        out.append(n * (gn - fx) - rhs)
    return out


def local_smoothness_bound(params: OperatorParams, f: ScalarFunction, x: float,
                           mspec: ModulusSpec = DEFAULT_MODULUS_SPEC,
                           qspec: QuadratureSpec = DEFAULT_SPEC,
                           lhs: float | None = None) -> BoundReport:
    """Local estimate via first and second moduli at step sqrt(tau_2).

    ``lhs`` may be supplied by sweeps that already hold |G f(x) - f(x)|.
    """
    s = math.sqrt(central_moment(params, 2, x))
    w1 = modulus(f, s, mspec)
    w2 = modulus2(f, s, mspec)
    rhs = 5.0 * w1 + 6.5 * w2
    if lhs is None:
        lhs = abs(apply(params, f, x, qspec) - _scalar(f.value, x))
    return BoundReport("local_smoothness", params, x, lhs, rhs,
                       satisfied=_holds(lhs, rhs),
                       extras={"step": s, "omega": w1, "omega2": w2})


def global_weighted_bound(params: OperatorParams, f: ScalarFunction, x: float,
                          empirical_X: float,
                          mspec: ModulusSpec = DEFAULT_MODULUS_SPEC,
                          qspec: QuadratureSpec = DEFAULT_SPEC,
                          lhs: float | None = None) -> BoundReport:
    """Weighted-modulus estimate; the absolute constant is unknown, so the
    report carries the ratio lhs / omega_phi for boundedness auditing."""
    if not 0.0 < x < 1.0:
        raise ValueError(f"interior x required, got {x}")
    arg = math.sqrt(empirical_X / (1 + params.nrho))
    wphi = modulus_dt(f, arg, mspec)
    if lhs is None:
        lhs = abs(apply(params, f, x, qspec) - _scalar(f.value, x))
    if wphi == 0.0:
        ratio = 0.0 if lhs <= 1e-9 else math.inf
    else:
        ratio = lhs / wphi
    return BoundReport("global_weighted", params, x, lhs, wphi,
                       satisfied=math.isfinite(ratio),
                       extras={"modulus_arg": arg, "ratio": ratio,
                               "empirical_X": empirical_X})


def global_weighted_ratio_sweep(n_sequence, alpha: float, rho: float,
                                f: ScalarFunction, x: float, empirical_X: float,
                                mspec: ModulusSpec = DEFAULT_MODULUS_SPEC,
                                qspec: QuadratureSpec = DEFAULT_SPEC):
    """Reports over an n sweep; ratios should not grow (bounded constant)."""
    return [global_weighted_bound(OperatorParams(n, alpha, rho), f, x,
                                  empirical_X, mspec, qspec) for n in n_sequence]


def lipschitz_bound(params: OperatorParams, f: ScalarFunction, M: float,
                    sigma: float, k1: float, k2: float, x: float,
                    qspec: QuadratureSpec = DEFAULT_SPEC,
                    lhs: float | None = None) -> BoundReport:
    """Two-parameter Lipschitz-space estimate.

    Membership of f in the space with constant M is certified by the caller;
    the suite uses f = e1 with M = sqrt(1 + k1 + k2), which holds because
    sqrt(t + k1 x^2 + k2 x) <= sqrt(1 + k1 + k2) on the unit square.
    """
    if not 0 < sigma <= 1:
        raise ValueError(f"sigma must lie in (0, 1], got {sigma}")
    if k1 < 0 or k2 <= 0:
        raise ValueError(f"need k1 >= 0 and k2 > 0, got ({k1}, {k2})")
    if not 0.0 < x <= 1.0:
        raise ValueError(f"x must lie in (0, 1], got {x}")
    tau2 = central_moment(params, 2, x)
    rhs = M * (tau2 / (k1 * x * x + k2 * x)) ** (sigma / 2)
    if lhs is None:
        lhs = abs(apply(params, f, x, qspec) - _scalar(f.value, x))
    return BoundReport("lipschitz", params, x, lhs, rhs,
                       satisfied=_holds(lhs, rhs),
                       extras={"M": M, "sigma": sigma, "k1": k1, "k2": k2})


def c1_bound(params: OperatorParams, f: ScalarFunction, x: float,
             mspec: ModulusSpec = DEFAULT_MODULUS_SPEC,
             qspec: QuadratureSpec = DEFAULT_SPEC,
             lhs: float | None = None) -> BoundReport:
    """Estimate for continuously differentiable f via omega(f', sqrt(tau_2))."""
    if f.d1 is None:
        raise ValueError("c1_bound requires f with d1")
    tau2 = central_moment(params, 2, x)
    s = math.sqrt(tau2)
    first = abs((1 - 2 * x) / (params.nrho + 2)) * abs(_scalar(f.d1, x))
    second = 2 * s * modulus(f.d1, s, mspec)
    rhs = first + second
    if lhs is None:
        lhs = abs(apply(params, f, x, qspec) - _scalar(f.value, x))
    return BoundReport("c1_derivative", params, x, lhs, rhs,
                       satisfied=_holds(lhs, rhs),
                       extras={"first_term": first, "second_term": second})


def dbv_bound(params: OperatorParams, f: ScalarFunction, x: float,
              resolution: int = 513, empirical_X: float = 1.0,
              qspec: QuadratureSpec = DEFAULT_SPEC,
              lhs: float | None = None) -> BoundReport:
    """Rate estimate for f with derivative of bounded variation.

    Assembles the jump terms plus the four variation sums over the shrinking
    intervals [x - x/k, x] and [x, x + (1-x)/k], k = 1..floor(sqrt(n)), with
    their 1/sqrt(n) companions.
    """
    if not 0.0 < x < 1.0:
        raise ValueError(f"interior x required, got {x}")
    dec = jump_decompose(f, x)
    n, nrho = params.n, params.nrho
    rn = math.isqrt(n)
    sqn = math.sqrt(n)

    jump_mean = abs((1 - 2 * x) / (nrho + 2)) * abs(dec.d_right + dec.d_left) / 2
    jump_gap = math.sqrt(empirical_X * x * (1 - x) / (1 + nrho)) * abs(dec.d_right - dec.d_left) / 2

    var_left = sum(total_variation(dec.fx_prime, x - x / k, x, resolution)
                   for k in range(1, rn + 1))
    var_right = sum(total_variation(dec.fx_prime, x, x + (1 - x) / k, resolution)
                    for k in range(1, rn + 1))
    near_left = (x / sqn) * total_variation(dec.fx_prime, x - x / sqn, x, resolution)
    near_right = ((1 - x) / sqn) * total_variation(dec.fx_prime, x, x + (1 - x) / sqn, resolution)

    rhs = (jump_mean + jump_gap
           + empirical_X * (1 - x) / (1 + nrho) * var_left + near_left
           + empirical_X * x / (1 + nrho) * var_right + near_right)
    if lhs is None:
        lhs = abs(apply(params, f, x, qspec) - _scalar(f.value, x))
    return BoundReport("dbv", params, x, lhs, rhs,
                       satisfied=_holds(lhs, rhs),
                       extras={"first_term_abs": True, "jump_mean": jump_mean,
                               "jump_gap": jump_gap, "empirical_X": empirical_X})
