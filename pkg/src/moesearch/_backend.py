"""Kernel backend selection.

The compiled extension is used when available; set MOESEARCH_BACKEND=python
to force the NumPy reference kernels, or MOESEARCH_BACKEND=compiled to make
a missing extension a hard error instead of a silent fallback.
"""

import os

from . import _kernels_py

_choice = os.environ.get("MOESEARCH_BACKEND", "auto").lower()
if _choice not in ("auto", "python", "compiled"):
    raise RuntimeError(f"MOESEARCH_BACKEND must be auto, python or compiled, got {_choice!r}")

if _choice == "python":
    _mod = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _mod
        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise RuntimeError(
                "MOESEARCH_BACKEND=compiled but the moesearch._speedups "
                "extension is not built; reinstall with a C toolchain"
            ) from None
        _mod = _kernels_py
        BACKEND = "python"

rollout_diffdrive = _mod.rollout_diffdrive
rollout_integrator = _mod.rollout_integrator
adjoint_diffdrive = _mod.adjoint_diffdrive
adjoint_integrator = _mod.adjoint_integrator


def get_kernels(name):
    """Return the kernel module for an explicit backend name (for benchmarks)."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _speedups
        return _speedups
    raise ValueError(f"unknown backend {name!r}")
