"""Pure-Python/numpy twin of the compiled kernels in ``_kernels.pyx``.

Same signatures, same endpoint conventions; selected at import time when the
compiled extension is unavailable or ``BDBLEND_PURE_PYTHON`` is set.
"""

import math

import numpy as np

LOG_SQRT_TWO_PI = 0.91893853320467274178032973640562

# Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficient set).
LANCZOS_G = 4.7421875
LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)


def log_gamma(x):
    """ln Gamma(x) for x > 0 (validated upstream)."""
    series = LANCZOS_C[0]
    for i in range(1, 15):
        series += LANCZOS_C[i] / (x + i)
    t = x + LANCZOS_G + 0.5
    return LOG_SQRT_TWO_PI + (x + 0.5) * math.log(t) - t + math.log(series) - math.log(x)


def log_beta(a, b):
    """ln B(a, b) for a, b > 0."""
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def basis_weights(alpha, x, logc_nm2, logc_n, out):
    """Fill out[k] with the blending basis weight for k = 0..n at a scalar x."""
    n = out.shape[0] - 1
    one_m_alpha = 1.0 - alpha
    if x == 0.0:
        out[:] = 0.0
        out[0] = one_m_alpha * math.exp(logc_nm2[0]) + alpha * math.exp(logc_n[0])
        return
    if x == 1.0:
        out[:] = 0.0
        out[n] = one_m_alpha * math.exp(logc_nm2[n - 2]) + alpha * math.exp(logc_n[n])
        return
    lx = math.log(x)
    l1mx = math.log1p(-x)
    k = np.arange(n + 1)
    t1 = np.zeros(n + 1)
    t1[: n - 1] = np.exp(logc_nm2 + k[: n - 1] * lx + (n - 1 - k[: n - 1]) * l1mx)
    t2 = np.zeros(n + 1)
    t2[2:] = np.exp(logc_nm2 + (k[2:] - 1) * lx + (n - k[2:]) * l1mx)
    t3 = np.exp(logc_n + k * lx + (n - k) * l1mx)
    out[:] = one_m_alpha * (t1 + t2) + alpha * t3


def bernstein_weights(x, logc_n, out):
    """Classical Bernstein weights C(n,k) x^k (1-x)^(n-k) for k = 0..n."""
    n = out.shape[0] - 1
    if x == 0.0:
        out[:] = 0.0
        out[0] = 1.0
        return
    if x == 1.0:
        out[:] = 0.0
        out[n] = 1.0
        return
    k = np.arange(n + 1)
    out[:] = np.exp(logc_n + k * math.log(x) + (n - k) * math.log1p(-x))


def beta_log_density(krho, mrho, log_norm, t, out):
    """ln of the normalized beta-type density with exponents krho, mrho."""
    t = np.asarray(t)
    interior = (t > 0.0) & (t < 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        acc = np.full(t.shape, -log_norm)
        if krho != 0.0:
            acc = np.where(interior, acc + krho * np.log(np.where(interior, t, 0.5)), acc)
            acc = np.where(t == 0.0, -np.inf, acc)
        if mrho != 0.0:
            acc = np.where(interior, acc + mrho * np.log1p(np.where(interior, -t, -0.5)), acc)
            acc = np.where(t == 1.0, -np.inf, acc)
    out[:] = acc
