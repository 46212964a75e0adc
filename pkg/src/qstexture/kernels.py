"""Backend selection for the hot loops.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python ``_kernels_py`` module. Setting ``QSTEXTURE_PURE_PYTHON=1`` forces
the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("QSTEXTURE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

roof_objective = _impl.roof_objective
roof_search = _impl.roof_search
maxprob_grid = _impl.maxprob_grid

LINEAR = _kernels_py.LINEAR
SQRT_COMPLEMENT = _kernels_py.SQRT_COMPLEMENT
QUADRATIC = _kernels_py.QUADRATIC
ONE_MINUS_SQRT = _kernels_py.ONE_MINUS_SQRT
NEG_LOG = _kernels_py.NEG_LOG


def backends():
    """Both implementations keyed by name; the compiled one only if built."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels
        out["compiled"] = _kernels
    except ImportError:
        pass
    return out
