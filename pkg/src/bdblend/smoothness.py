"""Moduli of continuity/smoothness, Steklov means, total variation, and the
jump decomposition of a derivative at a point.

Moduli are computed by nested grid search and are therefore lower bounds of
the true suprema; callers comparing against theorem right-hand sides get a
conservative (harder) check on the left-hand side and a slightly optimistic
one on the right, which the default grid densities make negligible for the
function corpus used here.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .operator import ScalarFunction
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate


@dataclass(frozen=True)
class ModulusSpec:
    """Grid densities for the modulus suprema."""

    x_grid: int = 513
    h_grid: int = 129

    def __post_init__(self):
        if self.x_grid < 8 or self.h_grid < 8:
            raise ValueError("x_grid and h_grid must both be >= 8")


DEFAULT_MODULUS_SPEC = ModulusSpec()


def modulus(f, delta: float, spec: ModulusSpec = DEFAULT_MODULUS_SPEC) -> float:
    """First-order modulus of continuity: sup over 0 < h <= delta and
    x, x+h in [0,1] of |f(x+h) - f(x)|."""
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    xs = np.linspace(0.0, 1.0, spec.x_grid)
    fx = np.asarray(f(xs), dtype=float)
    best = 0.0
    for j in range(1, spec.h_grid + 1):
        h = delta * j / spec.h_grid
        if h > 1.0:
            break
        m = xs <= 1.0 - h + 1e-15
        vals = np.abs(np.asarray(f(xs[m] + h), dtype=float) - fx[m])
        if vals.size:
            best = max(best, float(vals.max()))
    return best


def modulus2(f, step: float, spec: ModulusSpec = DEFAULT_MODULUS_SPEC) -> float:
    """Second-order modulus: sup over 0 < h <= step and x, x+2h in [0,1] of
    |f(x+2h) - 2 f(x+h) + f(x)|. The bound on the step is taken directly."""
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    xs = np.linspace(0.0, 1.0, spec.x_grid)
    fx = np.asarray(f(xs), dtype=float)
    best = 0.0
    for j in range(1, spec.h_grid + 1):
        h = step * j / spec.h_grid
        if 2 * h > 1.0:
            break
        m = xs <= 1.0 - 2 * h + 1e-15
        vals = np.abs(np.asarray(f(xs[m] + 2 * h), dtype=float)
                      - 2 * np.asarray(f(xs[m] + h), dtype=float) + fx[m])
        if vals.size:
            best = max(best, float(vals.max()))
    return best


def modulus_dt(f, t: float, spec: ModulusSpec = DEFAULT_MODULUS_SPEC) -> float:
    """First-order Ditzian-Totik modulus with weight phi(x) = sqrt(x(1-x)):
    sup over 0 < h <= t of |f(x + h phi(x)/2) - f(x - h phi(x)/2)| subject to
    both arguments lying in [0,1]."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    xs = np.linspace(0.0, 1.0, spec.x_grid)
    phi = np.sqrt(xs * (1.0 - xs))
    best = 0.0
    for j in range(1, spec.h_grid + 1):
        h = t * j / spec.h_grid
        lo = xs - 0.5 * h * phi
        hi = xs + 0.5 * h * phi
        m = (lo >= 0.0) & (hi <= 1.0)
        if not m.any():
            continue
        vals = np.abs(np.asarray(f(hi[m]), dtype=float) - np.asarray(f(lo[m]), dtype=float))
        best = max(best, float(vals.max()))
    return best


def _extend_reflect(f, t):
    """f extended beyond 1 by point reflection through (1, f(1)).

    The reflected extension preserves the magnitude of second differences
    across the boundary (the clamped extension does not, and breaks the
    Steklov approximation property near x = 1).
    """
    t = np.asarray(t, dtype=float)
    inside = t <= 1.0
    tc = np.where(inside, t, 2.0 - t)
    vals = np.asarray(f(tc), dtype=float)
    f1 = float(np.asarray(f(np.array([1.0])), dtype=float)[0])
    return np.where(inside, vals, 2.0 * f1 - vals)


def steklov_mean(f, h: float, x: float,
                 qspec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Double-averaged smoothing f_h(x).

    The double integral collapses to a single weighted integral over the step
    s = u + v with triangular weight; f is evaluated beyond 1 through the
    reflected extension.
    """
    if not 0 < h <= 0.5:
        raise ValueError(f"h must lie in (0, 1/2], got {h}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")

    def integrand(s):
        s = np.asarray(s, dtype=float)
        w = np.minimum(s, h - s)
        return w * (2.0 * _extend_reflect(f, x + s) - _extend_reflect(f, x + 2.0 * s))

    kinks = {h / 2}
    for p in (1.0 - x, (1.0 - x) / 2):
        if 0.0 < p < h:
            kinks.add(p)
    return (4.0 / (h * h)) * integrate(integrand, 0.0, h, qspec, points=sorted(kinks))


def total_variation(g: Callable, a: float, b: float, resolution: int = 257) -> float:
    """Partition-sum estimate of the total variation of g on [a, b];
    converges from below as the resolution grows."""
    if a > b:
        raise ValueError(f"interval out of order: ({a}, {b})")
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    if a == b:
        return 0.0
    ts = np.linspace(a, b, resolution)
    return float(np.abs(np.diff(np.asarray(g(ts), dtype=float))).sum())


@dataclass(frozen=True)
class JumpDecomposition:
    """One-sided derivative limits at a point and the recentred derivative
    that vanishes at that point."""

    d_left: float
    d_right: float
    fx_prime: Callable


_ONE_SIDED_STEP = 1e-6


def jump_decompose(f: ScalarFunction, x: float) -> JumpDecomposition:
    """Split f' at x into one-sided limits plus the recentred remainder.

    The remainder subtracts the left limit below x and the right limit above
    x, and is zero at x itself. Uses the analytic one-sided callables when
    the function carries them, otherwise one-sided difference quotients.
    """
    def _value(t):
        return float(np.asarray(f(np.array([t])), dtype=float)[0])

    if f.d1_left_at is not None:
        d_left = float(f.d1_left_at(x))
    elif f.d1 is not None and x > 0.0:
        d_left = float(np.asarray(f.d1(x), dtype=float))
    elif x > 0.0:
        d_left = (_value(x) - _value(x - _ONE_SIDED_STEP)) / _ONE_SIDED_STEP
    else:
        d_left = math.nan  # no left neighbourhood at x = 0
    if f.d1_right_at is not None:
        d_right = float(f.d1_right_at(x))
    elif f.d1 is not None and x < 1.0:
        d_right = float(np.asarray(f.d1(x), dtype=float))
    elif x < 1.0:
        d_right = (_value(x + _ONE_SIDED_STEP) - _value(x)) / _ONE_SIDED_STEP
    else:
        d_right = math.nan
    if 0.0 < x < 1.0 and not (math.isfinite(d_left) and math.isfinite(d_right)):
        raise ValueError(f"one-sided derivative limits at x={x} are not finite")

    if f.d1 is not None:
        d1 = f.d1
    else:
        def d1(t, _f=f):
            t = np.asarray(t, dtype=float)
            lo = np.clip(t - _ONE_SIDED_STEP, 0.0, 1.0)
            hi = np.clip(t + _ONE_SIDED_STEP, 0.0, 1.0)
            return (np.asarray(_f(hi), dtype=float) - np.asarray(_f(lo), dtype=float)) / (hi - lo)

    def fx_prime(t):
        t = np.asarray(t, dtype=float)
        dv = np.asarray(d1(t), dtype=float)
        out = np.where(t < x, dv - d_left, np.where(t > x, dv - d_right, 0.0))
        return out if out.ndim else float(out)

    return JumpDecomposition(d_left=d_left, d_right=d_right, fx_prime=fx_prime)
