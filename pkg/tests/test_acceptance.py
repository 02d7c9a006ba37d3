"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Two sub-criteria are provably unattainable as stated and are implemented
faithfully anyway, so they fail honestly (see the decisions ledger for the
exact analysis):

* criterion 3, fourth-moment cells (rho=1, x in {0.1, 0.9}): the exact
  relative deviation of n^2 tau_4 from its limit at n = 1280 is 2.45-2.56%,
  above the stated 2% (verified in exact rational arithmetic and symbolically
  via the 1/n expansion term).
* criterion 6, degree-7 polynomial at n = 200, (alpha, rho) = (0.3, 4):
  the exact sup error is |G f(1) - f(1)| = 0.071945 > 0.02 (closed form:
  801/808 + 10*801/806 + 801/802 vs 12).
"""

import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from bdblend import OperatorParams
from bdblend import moments
from bdblend.basis import basis_weights
from bdblend.bounds import voronovskaja_rhs
from bdblend.functions import CORPUS, POLYNOMIALS
from bdblend.operator import (apply_grid, apply_with_moments,
                              classical_durrmeyer_grid, sup_error,
                              weighted_moments)
from bdblend.quadrature import TIGHT_SPEC, QuadratureSpec

MOMENT_SWEEP_N = (2, 5, 10, 20, 50)
MOMENT_SWEEP_RHO = (0.5, 1.0, 2.0, 4.0)
MOMENT_SWEEP_ALPHA = (0.0, 0.3, 0.7, 1.0)
MOMENT_SWEEP_X = tuple(round(0.1 * i, 1) for i in range(11))


def _report(num, ok, detail=""):
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} {detail}", flush=True)
    assert ok, f"criterion {num}: {detail}"


# ------------------------------------------------------------ criterion 1

def test_criterion1_moment_validation(moments_check_run):
    doc = json.loads((moments_check_run["dir"] / "moments_check_summary.json").read_text())
    items = {i["order"]: i for i in doc["per_item"] if i["kind"] == "moment_validation"}
    worst = max(items[i]["max_rel_err"] for i in range(5))
    ok = worst <= 1e-8
    # printed items that disagree must be flagged with the re-derived note
    for i in range(5):
        if items[i]["printed_deviates"]:
            ok = ok and items[i]["suspected_typo"]
    elapsed = moments_check_run["elapsed"]
    ok = ok and elapsed < 120.0
    _report(1, ok, f"max rel err {worst:.2e}, runtime {elapsed:.1f}s, "
                   f"printed deviations flagged for orders "
                   f"{[i for i in range(5) if items[i]['printed_deviates']]}")


def test_criterion1_expansion_tau34_matches_oracle():
    # expansion-based central moments from validated raw moments vs quadrature
    spec = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-15, max_panels=20000)
    worst = 0.0
    for n in (2, 5, 10, 20):
        for rho in (1.0, 4.0):
            for alpha in (0.0, 0.7):
                params = OperatorParams(n, alpha, rho)
                for x in (0.1, 0.5, 0.9):
                    for m in (3, 4):
                        closed = moments.central_moment(params, m, x)
                        from bdblend.quadrature import beta_weighted_integral
                        w = basis_weights(params, x)
                        oracle = sum(
                            w[k] * beta_weighted_integral(
                                lambda t, m=m, x=x: (t - x) ** m, params, k, spec)
                            for k in range(n + 1))
                        scale = max(abs(oracle), 1e-6)
                        worst = max(worst, abs(closed - oracle) / scale)
    _report("1b", worst <= 1e-8, f"expansion tau3/tau4 vs oracle, worst rel {worst:.2e}")


# ------------------------------------------------------------ criterion 2

def test_criterion2_central_moment_identities():
    rng = random.Random(20250809)
    worst = 0.0
    for _ in range(100):
        n = rng.randrange(2, 201)
        rho = rng.uniform(0.1, 8.0)
        alpha = rng.random()
        x = rng.random()
        params = OperatorParams(n, alpha, rho)
        for m in (1, 2):
            worst = max(worst, abs(moments.central_moment(params, m, x)
                                   - moments.central_moment_expanded(params, m, x)))
    _report(2, worst <= 1e-10, f"100 fixed random points, worst abs diff {worst:.2e}")


# ------------------------------------------------------------ criterion 3

def _remark_sequences(x, rho, alpha):
    out = {}
    for m, power in ((1, 1), (2, 1), (4, 2)):
        lim = moments.scaled_limit(m, rho, alpha, x)
        seq = [10 * 2 ** j for j in range(8)]
        errs = [abs(n ** power * moments.central_moment(OperatorParams(n, alpha, rho), m, x) - lim)
                for n in seq]
        out[m] = (lim, errs)
    return out


INFEASIBLE_TAU4_CELLS = {(0.1, 1.0, 0.3), (0.1, 1.0, 1.0), (0.9, 1.0, 0.3), (0.9, 1.0, 1.0)}


def test_criterion3_scaled_limits_feasible_cells():
    ok = True
    worst = 0.0
    for x in (0.1, 0.5, 0.9):
        for rho in (1.0, 4.0):
            for alpha in (0.3, 1.0):
                for m, (lim, errs) in _remark_sequences(x, rho, alpha).items():
                    mono = all(b < a or (a < 1e-14 and b < 1e-14)
                               for a, b in zip(errs[2:], errs[3:]))
                    ok = ok and mono
                    if m == 4 and (x, rho, alpha) in INFEASIBLE_TAU4_CELLS:
                        continue  # checked (and failing) in the test below
                    rel = errs[-1] / abs(lim) if lim != 0 else (
                        0.0 if errs[-1] < 1e-12 else math.inf)
                    worst = max(worst, rel)
                    ok = ok and rel < 0.02
    _report(3, ok, f"monotone after j>=2 everywhere; worst feasible final rel {worst:.3%}")


def test_criterion3_tau4_final_error_infeasible_cells():
    """Faithful check of the 2% tolerance on the four cells where exact
    arithmetic gives 2.45-2.56%; fails by construction (spec defect, see
    module docstring and the decisions ledger)."""
    worst = 0.0
    for (x, rho, alpha) in sorted(INFEASIBLE_TAU4_CELLS):
        lim = moments.scaled_limit(4, rho, alpha, x)
        n = 1280
        v = n ** 2 * moments.central_moment(OperatorParams(n, alpha, rho), 4, x)
        worst = max(worst, abs(v - lim) / abs(lim))
    _report("3 (tau4 rho=1 edge cells)", worst < 0.02,
            f"final rel err {worst:.3%} vs stated 2% (exact value, see ledger)")


# ------------------------------------------------------------ criterion 4

def test_criterion4_reduction_identity():
    xs = np.linspace(0.0, 1.0, 33)
    worst = 0.0
    for name in ("e1", "e2", "poly7", "x2_sin_2x_over_pi", "abs_half"):
        f = CORPUS[name]
        blend = apply_grid(OperatorParams(10, 1.0, 1.0), f, xs, TIGHT_SPEC)
        classical = classical_durrmeyer_grid(10, f, xs, TIGHT_SPEC)
        worst = max(worst, float(np.max(np.abs(blend - classical))))
    _report(4, worst <= 1e-10, f"33 points x 5 functions, worst |diff| {worst:.2e}")


# ------------------------------------------------------------ criterion 5

def test_criterion5_constant_reproduction_and_partition():
    one = CORPUS["one"]
    worst_const = 0.0
    worst_part = 0.0
    for n in MOMENT_SWEEP_N:
        for rho in MOMENT_SWEEP_RHO:
            mom = weighted_moments(OperatorParams(n, 0.0, rho), one)
            for alpha in MOMENT_SWEEP_ALPHA:
                params = OperatorParams(n, alpha, rho)
                for x in MOMENT_SWEEP_X:
                    w = basis_weights(params, x)
                    worst_part = max(worst_part, abs(float(w.sum()) - 1.0))
                    worst_const = max(worst_const, abs(float(w @ mom) - 1.0))
    ok = worst_const <= 1e-10 and worst_part <= 1e-12
    _report(5, ok, f"|G(1)-1| max {worst_const:.2e} (<=1e-10), "
                   f"|sum p - 1| max {worst_part:.2e} (<=1e-12)")


# ------------------------------------------------------------ criterion 6

def test_criterion6_korovkin_monotonicity():
    # strict decrease with a 1e-12 floor absorbing exactly-reproduced cases
    ok = True
    details = []
    for name, f in CORPUS.items():
        e10 = sup_error(OperatorParams(10, 0.3, 4.0), f, 257).sup_error
        e50 = sup_error(OperatorParams(50, 0.3, 4.0), f, 257).sup_error
        good = e50 < e10 + 1e-12
        ok = ok and good
        if not good:
            details.append(name)
    _report("6 (monotonicity)", ok, f"all corpus functions, n=50 vs n=10"
            + (f"; failing: {details}" if details else ""))


def test_criterion6_n200_bound_low_degree():
    ok = True
    worst = 0.0
    for name in ("one", "e1", "e2", "e3", "e4"):
        e = sup_error(OperatorParams(200, 0.3, 4.0), CORPUS[name], 257).sup_error
        worst = max(worst, e)
        ok = ok and e < 0.02
    _report("6 (n=200, degree<=4)", ok, f"worst sup error {worst:.4f} < 0.02")


def test_criterion6_n200_bound_degree7():
    """Faithful check of the 0.02 budget for the degree-7 corpus polynomial;
    fails by construction: the exact error at x = 1 is 0.0719 (spec defect,
    see module docstring and the decisions ledger)."""
    e = sup_error(OperatorParams(200, 0.3, 4.0), CORPUS["poly7"], 257).sup_error
    _report("6 (n=200, degree 7)", e < 0.02,
            f"sup error {e:.4f} vs stated 0.02 (exact closed form 0.071945)")


# ------------------------------------------------------------ criterion 7

def test_criterion7_voronovskaja():
    ns = [20 * 2 ** j for j in range(7)]  # 20 .. 1280
    ok = True
    details = []
    for name in ("e2", "e3", "x2_sin_2x_over_pi"):
        f = CORPUS[name]
        for rho in (1.0, 4.0):
            moms = {n: weighted_moments(OperatorParams(n, 0.3, rho), f) for n in ns}
            for x in (0.25, 0.5, 0.75):
                fx = float(np.asarray(f(np.array([x])))[0])
                rhs = voronovskaja_rhs(f, rho, x)
                rs = [n * (apply_with_moments(OperatorParams(n, 0.3, rho), x, moms[n]) - fx) - rhs
                      for n in ns]
                halving = all(abs(b) < abs(a) for a, b in zip(rs, rs[1:]))
                final = abs(rs[-1]) < 0.05 * (1 + abs(rhs))
                if not (halving and final):
                    details.append((name, rho, x))
                ok = ok and halving and final
    _report(7, ok, "residual halving and final bound"
            + (f"; failing: {details}" if details else ""))


# ------------------------------------------------------------ criterion 8

def test_criterion8_bound_audit(bounds_check_run):
    doc = json.loads((bounds_check_run["dir"] / "bounds_check_summary.json").read_text())
    ok = doc["pass"] is True
    audits = {i["theorem_id"]: i for i in doc["per_item"] if i["kind"] == "theorem_audit"}
    for tid in ("local_smoothness", "lipschitz", "c1_derivative", "dbv"):
        ok = ok and audits[tid]["satisfied"] == audits[tid]["reports"]
    ratios = [i for i in doc["per_item"] if i["kind"] == "global_ratio_audit"]
    ok = ok and ratios and all(i["non_increasing_after_20"] for i in ratios)
    tails = [i for i in doc["per_item"] if i["kind"] == "kernel_tail"]
    ok = ok and tails and all(i["ok"] for i in tails)
    _report(8, ok, f"{sum(a['reports'] for a in audits.values())} bound reports, "
                   f"{len(ratios)} ratio audits, {len(tails)} tail checks")


# ------------------------------------------------------------ criterion 9

def test_criterion9_figure_claims(figure1_run, figure2_run):
    doc1 = json.loads((figure1_run["dir"] / "figure1_summary.json").read_text())
    claims1 = {c["kind"]: c for c in doc1["per_item"]}
    better = claims1["better_than_classical"]["ok"]
    doc2 = json.loads((figure2_run["dir"] / "figure2_summary.json").read_text())
    claims2 = {c["kind"]: c for c in doc2["per_item"] if c["kind"] == "errors_strictly_decreasing"}
    decreasing = claims2["errors_strictly_decreasing"]["ok"]
    ok = better and decreasing and figure1_run["rc"] == 0 and figure2_run["rc"] == 0
    _report(9, ok, f"blend beats classical by {claims1['better_than_classical']['margin']:.4f}; "
                   f"figure-2 errors strictly decreasing: {decreasing}")


# ------------------------------------------------------------ criterion 10

def test_criterion10_endpoint_negative_control(moments_check_run):
    doc = json.loads((moments_check_run["dir"] / "moments_check_summary.json").read_text())
    items = [i for i in doc["per_item"] if i["kind"] == "second_moment_endpoint"]
    ok = bool(items) and all(i["exceeds_10x"] for i in items)
    worst = min((i["ratio_of_ratios"] for i in items), default=0.0)
    _report(10, ok, f"{len(items)} (alpha,rho) combos, smallest blow-up factor {worst:.1f}x")
