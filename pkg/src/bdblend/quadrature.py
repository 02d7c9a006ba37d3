"""Adaptive composite Gauss-Legendre integration on [0, 1] subintervals.

This is the independent oracle behind every closed-form check: generic
integrals plus beta-weighted integrals against the operator's density.
Node placement is deterministic and results are accumulated with
``math.fsum`` in interval order, so a fixed spec gives bit-reproducible
values.
"""

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _core
from .basis import OperatorParams, density_log_norm


@dataclass(frozen=True)
class QuadratureSpec:
    """Order/tolerance/panel budget controlling all integrals."""

    base_order: int = 32
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_panels: int = 4000

    def __post_init__(self):
        if self.base_order < 2:
            raise ValueError(f"base_order must be >= 2, got {self.base_order}")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_panels < 1:
            raise ValueError("max_panels must be >= 1")


DEFAULT_SPEC = QuadratureSpec()

#: Spec used where closed-form/quadrature agreement is asserted at ~1e-12.
TIGHT_SPEC = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-15, max_panels=20000)


class ConvergenceError(RuntimeError):
    """Tolerance not met within the panel budget; carries the best estimate."""

    def __init__(self, message, estimate, error_estimate):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


@lru_cache(maxsize=32)
def _gl_rule(order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _gl_sum(f, a, b, nodes, weights):
    half = 0.5 * (b - a)
    # anchor each node to its nearer endpoint so that narrow panels adjacent
    # to an endpoint never collapse nodes onto it
    t = np.where(nodes < 0.0, a + half * (1.0 + nodes), b - half * (1.0 - nodes))
    return half * float(np.dot(weights, np.asarray(f(t), dtype=float)))


def _make_panel(f, a, b, nodes, weights):
    mid = a + 0.5 * (b - a)
    whole = _gl_sum(f, a, b, nodes, weights)
    value = _gl_sum(f, a, mid, nodes, weights) + _gl_sum(f, mid, b, nodes, weights)
    return (-abs(whole - value), a, b, value)


def _integrate_ex(f, a, b, spec, points=()):
    """Core loop; returns (value, error_estimate, panel_count)."""
    nodes, weights = _gl_rule(spec.base_order)
    cuts = sorted({float(a), float(b), *(float(p) for p in points if a < p < b)})
    heap = [_make_panel(f, lo, hi, nodes, weights)
            for lo, hi in zip(cuts[:-1], cuts[1:])]
    heapq.heapify(heap)
    done = []  # panels at the width floor, excluded from further refinement
    width_floor = 5e-14 * max(abs(a), abs(b), 1.0)
    heap_err = -math.fsum(p[0] for p in heap)
    done_err = 0.0
    value_sum = math.fsum(p[3] for p in heap)
    while True:
        tol = max(spec.abs_tol, spec.rel_tol * abs(value_sum))
        if heap_err + done_err <= tol:
            break
        if not heap or heap_err <= tol:
            # only floor-limited panels stand between us and the tolerance;
            # further bisection cannot help (improper/endpoint-singular case)
            raise ConvergenceError(
                f"quadrature cannot reach tolerance {tol:g}: panels at the "
                f"width floor retain error estimate {done_err:g}",
                value_sum, heap_err + done_err)
        if len(heap) + len(done) + 1 > spec.max_panels:
            raise ConvergenceError(
                f"quadrature did not reach tolerance {tol:g} within "
                f"{spec.max_panels} panels (error estimate {heap_err + done_err:g})",
                value_sum, heap_err + done_err)
        worst = heapq.heappop(heap)
        neg_err, lo, hi, val = worst
        heap_err += neg_err  # remove parent's contribution
        if hi - lo < width_floor:
            done.append(worst)
            done_err += -neg_err
            continue
        mid = lo + 0.5 * (hi - lo)
        left = _make_panel(f, lo, mid, nodes, weights)
        right = _make_panel(f, mid, hi, nodes, weights)
        heapq.heappush(heap, left)
        heapq.heappush(heap, right)
        heap_err += -left[0] - right[0]
        value_sum += left[3] + right[3] - val
    panels = sorted(heap + done, key=lambda p: p[1])
    value = math.fsum(p[3] for p in panels)
    err = -math.fsum(p[0] for p in panels)
    return value, err, len(panels)


def integrate(f, a: float, b: float, spec: QuadratureSpec = DEFAULT_SPEC,
              points=()) -> float:
    """Integral of a vectorized callable f over [a, b].

    ``points`` are optional interior breakpoints (known kinks or peaks) used
    to seed the initial panels. Raises ConvergenceError when the budget in
    ``spec`` is exhausted before the error estimate meets the tolerance.
    """
    if a > b:
        raise ValueError(f"integration bounds out of order: ({a}, {b})")
    if a == b:
        return 0.0
    value, _, _ = _integrate_ex(f, a, b, spec, points)
    return value


def density_breakpoints(params: OperatorParams, k: int):
    """Panel seeds concentrated near the density mode k/n for peaked cases."""
    nrho = params.nrho
    if nrho < 32.0:
        return ()
    p = (k * params.rho + 1.0) / (nrho + 2.0)
    sd = math.sqrt(p * (1.0 - p) / (nrho + 3.0))
    pts = []
    for c in (2.0, 8.0, 32.0, 128.0):
        pts.extend((p - c * sd, p + c * sd))
    return tuple(q for q in pts if 0.0 < q < 1.0)


def beta_weighted_integral(f, params: OperatorParams, k: int,
                           spec: QuadratureSpec = DEFAULT_SPEC,
                           lo: float = 0.0, hi: float = 1.0) -> float:
    """Integral of mu_k(t) f(t) over [lo, hi] (defaults to the whole interval).

    The density is evaluated in log space and exponentiated once per node;
    exponents are >= 0 so there are no singularities to protect against.
    """
    if not 0 <= k <= params.n:
        raise ValueError(f"k must be in 0..{params.n}, got {k}")
    krho = k * params.rho
    mrho = (params.n - k) * params.rho
    log_norm = density_log_norm(params, k)

    def integrand(t):
        t = np.asarray(t, dtype=float)
        out = np.empty(t.shape)
        _core.beta_log_density(krho, mrho, log_norm, t, out)
        return np.exp(out) * np.asarray(f(t), dtype=float)

    pts = tuple(q for q in density_breakpoints(params, k) if lo < q < hi)
    return integrate(integrand, lo, hi, spec, points=pts)
