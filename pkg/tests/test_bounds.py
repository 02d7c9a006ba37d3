import math
from fractions import Fraction

import numpy as np
import pytest

from bdblend import OperatorParams, ScalarFunction
from bdblend import bounds
from bdblend.functions import CORPUS
from bdblend.moments import central_moment
from bdblend.quadrature import TIGHT_SPEC
from bdblend.smoothness import total_variation


def test_voronovskaja_rhs_examples():
    # e2 at rho=1, x=1/2: 4x - 6x^2 evaluated at 1/2
    assert bounds.voronovskaja_rhs(CORPUS["e2"], 1.0, 0.5) == pytest.approx(0.5, rel=1e-14)
    # e1: f'' = 0 leaves (1-2x)/rho
    for rho, x in ((1.0, 0.2), (4.0, 0.8)):
        assert bounds.voronovskaja_rhs(CORPUS["e1"], rho, x) == pytest.approx(
            (1 - 2 * x) / rho, rel=1e-14)
    assert bounds.voronovskaja_rhs(CORPUS["one"], 2.0, 0.3) == 0.0
    with pytest.raises(ValueError):
        bounds.voronovskaja_rhs(CORPUS["x_3_2"], 1.0, 0.5)  # no d2


def test_voronovskaja_residuals_linear_closed_form():
    # r_n = -2(1-2x)/(rho (n rho + 2)) for e1, from the first central moment
    rho, x, alpha = 2.0, 0.2, 0.4
    ns = [10, 20, 40]
    rs = bounds.voronovskaja_residuals(CORPUS["e1"], alpha, rho, x, ns)
    for n, r in zip(ns, rs):
        assert r == pytest.approx(-2 * (1 - 2 * x) / (rho * (n * rho + 2)), abs=1e-8)


def test_voronovskaja_residuals_quadratic_exact_oracle():
    # r_n for e2 in exact rational arithmetic: n (tau2 + 2x tau1) - rhs
    rho, x, alpha = Fraction(1), Fraction(1, 2), Fraction(3, 10)
    rhs = 2 * x * (1 - 2 * x) / rho + x * (1 - x) * (1 + rho) / rho
    expected = []
    for n in (20, 40):
        nr = n * rho
        tau1 = (1 - 2 * x) / (nr + 2)
        a = alpha
        tau2 = (x * (1 - x) * (rho * (n + (n - 2 * a + 2) * rho) - 6) + 2) / ((nr + 2) * (nr + 3))
        expected.append(float(n * (tau2 + 2 * x * tau1) - rhs))
    got = bounds.voronovskaja_residuals(CORPUS["e2"], float(alpha), float(rho),
                                        float(x), [20, 40])
    np.testing.assert_allclose(got, expected, atol=1e-7)


def test_voronovskaja_residuals_constant_zero():
    rs = bounds.voronovskaja_residuals(CORPUS["one"], 0.3, 1.0, 0.4, [10, 20])
    assert all(abs(r) <= 1e-9 for r in rs)
    with pytest.raises(ValueError):
        bounds.voronovskaja_residuals(CORPUS["one"], 0.3, 1.0, 0.4, [20, 10])


def test_local_smoothness_example_linear():
    # e1 at n=10, rho=1, x=0: lhs = 1/12, rhs = 5 sqrt(tau2(0)), omega2 = 0
    p = OperatorParams(10, 0.5, 1.0)
    rep = bounds.local_smoothness_bound(p, CORPUS["e1"], 0.0)
    s = math.sqrt(2 / 156)
    assert rep.lhs == pytest.approx(1 / 12, abs=1e-9)
    assert rep.extras["step"] == pytest.approx(s, rel=1e-13)
    assert rep.extras["omega2"] <= 1e-14
    assert rep.rhs == pytest.approx(5 * s, rel=1e-12)
    assert rep.satisfied


def test_local_smoothness_constant():
    rep = bounds.local_smoothness_bound(OperatorParams(10, 0.5, 1.0), CORPUS["one"], 0.3)
    assert rep.rhs == 0.0
    assert rep.satisfied  # absolute floor absorbs quadrature noise


def test_local_smoothness_sweep_function():
    p = OperatorParams(20, 0.3, 4.0)
    for x in (0.1, 0.5, 0.9):
        assert bounds.local_smoothness_bound(p, CORPUS["x2_sin_2x_over_pi"], x).satisfied


def test_global_weighted_ratio_and_argument():
    X = 6.0
    f = CORPUS["e1"]
    reps = bounds.global_weighted_ratio_sweep((10, 20, 40, 100), 0.2, 1.0, f, 0.25, X)
    ratios = [r.extras["ratio"] for r in reps]
    assert all(math.isfinite(v) for v in ratios)
    assert all(b <= a * 1.10 + 1e-9 for a, b in zip(ratios[1:], ratios[2:]))
    # modulus argument shrinks like (1 + n rho)^{-1/2}
    a10 = reps[0].extras["modulus_arg"]
    a40 = reps[2].extras["modulus_arg"]
    assert a40 / a10 == pytest.approx(0.5, abs=0.05)
    # constant function: zero over zero counts as ratio 0
    rep = bounds.global_weighted_bound(OperatorParams(10, 0.2, 1.0), CORPUS["one"], 0.5, X)
    assert rep.extras["ratio"] == 0.0
    with pytest.raises(ValueError):
        bounds.global_weighted_bound(OperatorParams(10, 0.2, 1.0), f, 0.0, X)


def test_lipschitz_certified_linear():
    # e1 lies in the two-parameter Lipschitz space with M = sqrt(1 + k1 + k2)
    for k1, k2 in ((0.0, 1.0), (1.0, 1.0)):
        M = math.sqrt(1 + k1 + k2)
        for n, rho, x in ((10, 1.0, 0.25), (20, 4.0, 1.0)):
            p = OperatorParams(n, 0.3, rho)
            rep = bounds.lipschitz_bound(p, CORPUS["e1"], M, 1.0, k1, k2, x)
            assert rep.satisfied, rep


def test_lipschitz_frozen_example():
    # sigma=1, k1=0, k2=1, x=1, n=10, rho=1: rhs = sqrt(2) sqrt(tau2(1))
    p = OperatorParams(10, 0.5, 1.0)
    rep = bounds.lipschitz_bound(p, CORPUS["e1"], math.sqrt(2.0), 1.0, 0.0, 1.0, 1.0)
    assert rep.rhs == pytest.approx(math.sqrt(2 * 2 / 156), rel=1e-12)
    assert rep.satisfied


def test_lipschitz_validation():
    p = OperatorParams(10, 0.5, 1.0)
    with pytest.raises(ValueError):
        bounds.lipschitz_bound(p, CORPUS["e1"], 1.0, 0.0, 0.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        bounds.lipschitz_bound(p, CORPUS["e1"], 1.0, 1.0, 0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        bounds.lipschitz_bound(p, CORPUS["e1"], 1.0, 1.0, -1.0, 1.0, 0.5)


def test_c1_equality_case_linear():
    # for e1 the first rhs term equals the lhs exactly and omega(f') = 0
    p = OperatorParams(10, 0.4, 1.0)
    for x in (0.0, 0.3, 0.9):
        rep = bounds.c1_bound(p, CORPUS["e1"], x, qspec=TIGHT_SPEC)
        assert rep.extras["second_term"] == 0.0
        assert abs(rep.lhs - rep.rhs) <= 1e-12
        assert rep.satisfied


def test_c1_examples():
    rep = bounds.c1_bound(OperatorParams(20, 0.3, 4.0), CORPUS["e2"], 0.5)
    assert rep.satisfied
    rep = bounds.c1_bound(OperatorParams(10, 0.3, 1.0), CORPUS["one"], 0.5)
    assert rep.satisfied
    with pytest.raises(ValueError):
        bounds.c1_bound(OperatorParams(10, 0.3, 1.0),
                        ScalarFunction(value=lambda t: np.asarray(t)), 0.5)


def test_dbv_kink_at_center():
    # f = |t - 1/2| at x = 1/2: recentred derivative vanishes, only the
    # jump-gap term survives: sqrt(X x(1-x)/(1+n rho)) * |f'(x+)-f'(x-)|/2
    X = 6.0
    p = OperatorParams(16, 0.2, 1.0)
    rep = bounds.dbv_bound(p, CORPUS["abs_half"], 0.5, empirical_X=X)
    expect_rhs = math.sqrt(X * 0.25 / (1 + 16.0))
    assert rep.rhs == pytest.approx(expect_rhs, rel=1e-12)
    assert rep.satisfied


def test_dbv_smooth_monotone_derivative_assembly():
    # e2: variation over [x - x/k, x] is exactly 2x/k; check the assembled rhs
    n, alpha, rho, x, X = 10, 0.2, 1.0, 0.5, 6.2558
    p = OperatorParams(n, alpha, rho)
    rep = bounds.dbv_bound(p, CORPUS["e2"], x, empirical_X=X)
    rn = math.isqrt(n)
    sq = math.sqrt(n)
    manual = (abs(1 - 2 * x) / (n * rho + 2) * 2 * x
              + 0.0
              + X * (1 - x) / (1 + n * rho) * sum(2 * x / k for k in range(1, rn + 1))
              + (x / sq) * (2 * x / sq)
              + X * x / (1 + n * rho) * sum(2 * (1 - x) / k for k in range(1, rn + 1))
              + ((1 - x) / sq) * (2 * (1 - x) / sq))
    assert rep.rhs == pytest.approx(manual, rel=1e-3)
    assert rep.satisfied


def test_dbv_constant_and_domain():
    rep = bounds.dbv_bound(OperatorParams(10, 0.2, 1.0), CORPUS["one"], 0.4,
                           empirical_X=6.0)
    assert rep.rhs <= 1e-12
    assert rep.satisfied
    with pytest.raises(ValueError):
        bounds.dbv_bound(OperatorParams(10, 0.2, 1.0), CORPUS["one"], 0.0,
                         empirical_X=6.0)


def test_report_slack_convention():
    # satisfied uses a 1e-9 relative slack plus a 1e-12 absolute floor
    p = OperatorParams(10, 0.5, 1.0)
    rep = bounds.local_smoothness_bound(p, CORPUS["e1"], 0.0)
    assert rep.satisfied == (rep.lhs <= rep.rhs * (1 + bounds.SLACK) + bounds.SLACK_ABS)
