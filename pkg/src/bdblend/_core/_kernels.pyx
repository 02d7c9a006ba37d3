# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner kernels: log-gamma/log-beta and the per-node basis/density loops.

A pure-Python twin lives in ``_kernels_py``; the package selects one at import
time. Both expose the same call signatures and must agree to ~1e-12.
"""

from libc.math cimport exp, log, log1p, INFINITY


cdef double LOG_SQRT_TWO_PI = 0.91893853320467274178032973640562

# Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficient set).
cdef double LANCZOS_G = 4.7421875
cdef double[15] LANCZOS_C
LANCZOS_C[0] = 0.99999999999999709182
LANCZOS_C[1] = 57.156235665862923517
LANCZOS_C[2] = -59.597960355475491248
LANCZOS_C[3] = 14.136097974741747174
LANCZOS_C[4] = -0.49191381609762019978
LANCZOS_C[5] = 0.33994649984811888699e-4
LANCZOS_C[6] = 0.46523628927048575665e-4
LANCZOS_C[7] = -0.98374475304879564677e-4
LANCZOS_C[8] = 0.15808870322491248884e-3
LANCZOS_C[9] = -0.21026444172410488319e-3
LANCZOS_C[10] = 0.21743961811521264320e-3
LANCZOS_C[11] = -0.16431810653676389022e-3
LANCZOS_C[12] = 0.84418223983852743293e-4
LANCZOS_C[13] = -0.26190838401581408670e-4
LANCZOS_C[14] = 0.36899182659531622704e-5


cdef double _log_gamma(double x) nogil:
    cdef double series = LANCZOS_C[0]
    cdef int i
    for i in range(1, 15):
        series += LANCZOS_C[i] / (x + i)
    cdef double t = x + LANCZOS_G + 0.5
    return LOG_SQRT_TWO_PI + (x + 0.5) * log(t) - t + log(series) - log(x)


def log_gamma(double x):
    """ln Gamma(x) for x > 0 (validated upstream)."""
    return _log_gamma(x)


def log_beta(double a, double b):
    """ln B(a, b) for a, b > 0."""
    return _log_gamma(a) + _log_gamma(b) - _log_gamma(a + b)


def basis_weights(double alpha, double x, const double[::1] logc_nm2,
                  const double[::1] logc_n, double[::1] out):
    """Fill out[k] with the blending basis weight for k = 0..n at a scalar x.

    ``logc_nm2``/``logc_n`` are ln C(n-2, .) and ln C(n, .) rows. Uses the
    expanded three-term form, total at the endpoints (0^0 = 1).
    """
    cdef Py_ssize_t n = out.shape[0] - 1
    cdef Py_ssize_t k
    cdef double one_m_alpha = 1.0 - alpha
    cdef double lx, l1mx, t1, t2, t3
    if x == 0.0:
        for k in range(1, n + 1):
            out[k] = 0.0
        out[0] = one_m_alpha * exp(logc_nm2[0]) + alpha * exp(logc_n[0])
        return
    if x == 1.0:
        for k in range(n):
            out[k] = 0.0
        out[n] = one_m_alpha * exp(logc_nm2[n - 2]) + alpha * exp(logc_n[n])
        return
    lx = log(x)
    l1mx = log1p(-x)
    for k in range(n + 1):
        t1 = exp(logc_nm2[k] + k * lx + (n - k - 1) * l1mx) if k <= n - 2 else 0.0
        t2 = exp(logc_nm2[k - 2] + (k - 1) * lx + (n - k) * l1mx) if k >= 2 else 0.0
        t3 = exp(logc_n[k] + k * lx + (n - k) * l1mx)
        out[k] = one_m_alpha * (t1 + t2) + alpha * t3


def bernstein_weights(double x, const double[::1] logc_n, double[::1] out):
    """Classical Bernstein weights C(n,k) x^k (1-x)^(n-k) for k = 0..n."""
    cdef Py_ssize_t n = out.shape[0] - 1
    cdef Py_ssize_t k
    cdef double lx, l1mx
    if x == 0.0:
        for k in range(1, n + 1):
            out[k] = 0.0
        out[0] = 1.0
        return
    if x == 1.0:
        for k in range(n):
            out[k] = 0.0
        out[n] = 1.0
        return
    lx = log(x)
    l1mx = log1p(-x)
    for k in range(n + 1):
        out[k] = exp(logc_n[k] + k * lx + (n - k) * l1mx)


def beta_log_density(double krho, double mrho, double log_norm,
                     const double[::1] t, double[::1] out):
    """ln of the normalized beta-type density with exponents krho, mrho.

    out[i] = krho ln t_i + mrho ln(1-t_i) - log_norm with the 0^0 = 1
    endpoint convention (zero exponents contribute nothing at t in {0,1}).
    """
    cdef Py_ssize_t i
    cdef double ti, acc
    for i in range(t.shape[0]):
        ti = t[i]
        if ti == 0.0:
            out[i] = -log_norm if krho == 0.0 else -INFINITY
        elif ti == 1.0:
            out[i] = -log_norm if mrho == 0.0 else -INFINITY
        else:
            acc = -log_norm
            if krho != 0.0:
                acc += krho * log(ti)
            if mrho != 0.0:
                acc += mrho * log1p(-ti)
            out[i] = acc
