"""Backend dispatch for the hot finite-difference kernels.

Two interchangeable implementations exist:

* ``numba_impl`` -- ``@njit``-compiled loops (default when numba imports),
* ``numpy_impl`` -- pure vectorized numpy, used as fallback or when the
  environment variable ``AXIMHD_NUMBA`` is set to ``0``/``false``/``off``.

Both backends perform the same per-node arithmetic so results agree to
machine precision; the full set is exercised against each other in the
test suite.  ``BACKEND`` records which one is active.
"""

import os
import warnings

_flag = os.environ.get("AXIMHD_NUMBA", "1").strip().lower()
_want_numba = _flag not in ("0", "false", "off", "no")

if _want_numba:
    try:
        from . import numba_impl as _impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on environment
        warnings.warn("numba unavailable, falling back to numpy kernels")
        from . import numpy_impl as _impl

        BACKEND = "numpy"
else:
    from . import numpy_impl as _impl

    BACKEND = "numpy"

laplace5d = _impl.laplace5d
upwind_advect = _impl.upwind_advect
muscl_advect = _impl.muscl_advect
centered_advect = _impl.centered_advect
thomas_solve = _impl.thomas_solve
