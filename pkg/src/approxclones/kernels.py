"""Kernel backend selection.

The compiled extension is preferred; set ``APPROXCLONES_PURE_PYTHON=1`` to force the
NumPy fallback (e.g. to compare the two).
"""

import os

if os.environ.get("APPROXCLONES_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

BACKEND = "cython" if _impl.__name__.endswith("_ckernels") else "python"

positions = _impl.positions
margins = _impl.margins
pair_counts = _impl.pair_counts
first_choice_counts = _impl.first_choice_counts
widest_paths = _impl.widest_paths
perfect_clone_flags = _impl.perfect_clone_flags
