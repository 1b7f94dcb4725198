"""Kernel backend selection: compiled extension if available, else pure Python.

Set MORSEASIAN_BACKEND=py (or =c) to force a backend; the default tries the
compiled kernels and silently falls back.
"""

import os

from . import _kernels_py

_forced = os.environ.get("MORSEASIAN_BACKEND", "").strip().lower()

if _forced in ("py", "python", "pure"):
    kernels = _kernels_py
    BACKEND = "python"
elif _forced in ("c", "cython", "compiled"):
    from . import _kernels_c

    kernels = _kernels_c
    BACKEND = "compiled"
else:
    try:
        from . import _kernels_c

        kernels = _kernels_c
        BACKEND = "compiled"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"


def backend_name():
    """Which kernel implementation is active: 'compiled' or 'python'."""
    return BACKEND
