"""Kernel selection: compiled extension when present, pure Python otherwise.

Set BASISBOUND_PURE=1 to force the pure backend (used by the benchmark and
the equivalence tests).
"""

import os

from . import _kernel_py

MODE_DIST_EQ = _kernel_py.MODE_DIST_EQ
MODE_DIST_MOD = _kernel_py.MODE_DIST_MOD
MODE_DIST_SET = _kernel_py.MODE_DIST_SET
MODE_INTERSECT = _kernel_py.MODE_INTERSECT

_impl = _kernel_py
BACKEND = "pure"

if os.environ.get("BASISBOUND_PURE", "") in ("", "0"):
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        pass

adjacency = _impl.adjacency
extend_max = _impl.extend_max
first_clique_of_size = _impl.first_clique_of_size
