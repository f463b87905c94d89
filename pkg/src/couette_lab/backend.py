"""Kernel backend selection.

The weight kernels ship in two interchangeable implementations: a numba
jit-compiled one and a pure numpy one.  Selection happens once at import:

* ``COUETTE_LAB_BACKEND=numpy``  force the numpy path
* ``COUETTE_LAB_BACKEND=numba``  require numba (ImportError if missing)
* unset                          numba if importable, else numpy

``ACTIVE_BACKEND`` records the choice; benchmarks/kernel_backends.py times
the two implementations against each other.
"""

import os

_requested = os.environ.get("COUETTE_LAB_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(f"COUETTE_LAB_BACKEND must be numba|numpy, got {_requested!r}")

if _requested == "numpy":
    from . import _wkernels_numpy as _impl

    ACTIVE_BACKEND = "numpy"
elif _requested == "numba":
    from . import _wkernels_numba as _impl

    ACTIVE_BACKEND = "numba"
else:
    try:
        from . import _wkernels_numba as _impl

        ACTIVE_BACKEND = "numba"
    except ImportError:
        from . import _wkernels_numpy as _impl

        ACTIVE_BACKEND = "numpy"

w_batch = _impl.w_batch
g_batch = _impl.g_batch
m_batch = _impl.m_batch
