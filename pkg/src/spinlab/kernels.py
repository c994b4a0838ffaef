"""Backend selection for the stationary-point kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Setting ``SPINLAB_PURE_PYTHON=1`` forces the fallback.
"""

import os

from spinlab import _pykernels

if os.environ.get("SPINLAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from spinlab import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
        BACKEND = "python"

surface_energy = _impl.surface_energy
surface_d1 = _impl.surface_d1
surface_d2 = _impl.surface_d2
scan_roots = _impl.scan_roots


def available_backends():
    """Name -> module for every backend importable in this environment."""
    out = {"python": _pykernels}
    try:
        from spinlab import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
