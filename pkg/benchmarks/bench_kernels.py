#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-Python fallback.

Times the three hot paths (basis-weight rows, log-density over quadrature
nodes, and a full weighted-moment/operator evaluation) on both backends and
prints a speedup table. Run from a build with the extension compiled:

    python benchmarks/bench_kernels.py
"""

import math
import time

import numpy as np

from bdblend._core import _kernels_py

try:
    from bdblend._core import _kernels
except ImportError:
    _kernels = None

from bdblend import specfun


def _time(fn, reps):
    best = math.inf
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_basis(impl, n=200, xs=257):
    row_nm2 = specfun.log_binomial_row(n - 2)
    row_n = specfun.log_binomial_row(n)
    out = np.empty(n + 1)
    grid = np.linspace(0.0, 1.0, xs)

    def run():
        for x in grid:
            impl.basis_weights(0.3, float(x), row_nm2, row_n, out)

    return run


def bench_density(impl, n=200, rho=4.0, nodes=2048):
    t = np.linspace(1e-6, 1.0 - 1e-6, nodes)
    out = np.empty(nodes)
    norms = [impl.log_beta(k * rho + 1.0, (n - k) * rho + 1.0) for k in range(n + 1)]

    def run():
        for k in range(n + 1):
            impl.beta_log_density(k * rho, (n - k) * rho, norms[k], t, out)

    return run


def bench_log_gamma(impl, evals=20000):
    xs = np.linspace(0.5, 500.0, evals)

    def run():
        for x in xs:
            impl.log_gamma(float(x))

    return run


def bench_operator(pure: bool):
    """Full pipeline: weighted moments + a 257-point grid application."""
    import importlib
    import os

    def run():
        env = os.environ.get("BDBLEND_PURE_PYTHON")
        try:
            if pure:
                os.environ["BDBLEND_PURE_PYTHON"] = "1"
            else:
                os.environ.pop("BDBLEND_PURE_PYTHON", None)
            import bdblend._core
            importlib.reload(bdblend._core)
            import bdblend.basis
            importlib.reload(bdblend.basis)
            from bdblend.basis import OperatorParams, basis_weights
            from bdblend.quadrature import beta_weighted_integral
            params = OperatorParams(100, 0.3, 4.0)
            f = lambda t: t * t * np.sin(2.0 * t / math.pi)
            mom = np.array([beta_weighted_integral(f, params, k)
                            for k in range(params.n + 1)])
            xs = np.linspace(0.0, 1.0, 257)
            for x in xs:
                float(np.dot(basis_weights(params, x), mom))
        finally:
            if env is None:
                os.environ.pop("BDBLEND_PURE_PYTHON", None)
            else:
                os.environ["BDBLEND_PURE_PYTHON"] = env

    return run


def main():
    if _kernels is None:
        print("compiled extension not available; run `pip install -e .` first")
        return
    rows = []
    for name, factory, reps in (
        ("log_gamma x20k", bench_log_gamma, 5),
        ("basis_weights n=200 x257", bench_basis, 5),
        ("beta_log_density n=200 x2048", bench_density, 5),
    ):
        t_c = _time(factory(_kernels), reps)
        t_p = _time(factory(_kernels_py), reps)
        rows.append((name, t_c, t_p))
    print(f"{'kernel':34s} {'cython':>10s} {'python':>10s} {'speedup':>8s}")
    for name, t_c, t_p in rows:
        print(f"{name:34s} {t_c * 1e3:9.2f}ms {t_p * 1e3:9.2f}ms {t_p / t_c:7.1f}x")
    t_c = _time(bench_operator(False), 3)
    t_p = _time(bench_operator(True), 3)
    print(f"{'operator pipeline n=100':34s} {t_c * 1e3:9.2f}ms {t_p * 1e3:9.2f}ms {t_p / t_c:7.1f}x")


if __name__ == "__main__":
    main()
