"""Hot-loop kernels: compiled extension if available, Python fallback otherwise.

Set RESERVOIRLAB_PURE_PYTHON=1 to force the fallback (used by the
backend-equivalence tests and the benchmark script).
"""

import os

from . import _py_core

if os.environ.get("RESERVOIRLAB_PURE_PYTHON") == "1":
    _impl = _py_core
    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _py_core
        BACKEND = "python"

rng_fill = _impl.rng_fill
km_run = _impl.km_run
km_cluster_run = _impl.km_cluster_run
whisker_run = _impl.whisker_run


def get_backend() -> str:
    """Name of the active kernel backend ('cython' or 'python')."""
    return BACKEND
