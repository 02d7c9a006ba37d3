"""Kernel backend selection: compiled extension if available, numpy fallback otherwise.

Set ``BDBLEND_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
for debugging). ``BACKEND`` records which implementation is active.
"""

import os

if os.environ.get("BDBLEND_PURE_PYTHON"):
    from . import _kernels_py as impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as impl

        BACKEND = "python"

log_gamma = impl.log_gamma
log_beta = impl.log_beta
basis_weights = impl.basis_weights
bernstein_weights = impl.bernstein_weights
beta_log_density = impl.beta_log_density


def backend_name():
    """Name of the active kernel backend ('cython' or 'python')."""
    return BACKEND
