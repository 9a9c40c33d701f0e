"""Backend selection for the hot loops.

The compiled extension is preferred; set ``LLIP_PURE_PYTHON=1`` to force
the numpy fallback. ``BACKEND`` names the module that was loaded.
"""
import os

from . import _pykernels

EUCLIDEAN = _pykernels.EUCLIDEAN
CHEBYSHEV = _pykernels.CHEBYSHEV

if os.environ.get("LLIP_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

distance_matrix = _impl.distance_matrix
close_pairs = _impl.close_pairs
lipschitz_majorant = _impl.lipschitz_majorant
mcshane_whitney = _impl.mcshane_whitney
pair_envelope = _impl.pair_envelope
pair_violation = _impl.pair_violation
field_eval = _impl.field_eval


def backends():
    """Available backend modules keyed by name (for tests and benchmarks)."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
