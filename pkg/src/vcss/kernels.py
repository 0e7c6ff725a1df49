"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``VCSS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("VCSS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "cython"

MAX_COMPILED_N = 64


def cover_search(n, eu, ev, forb_masks=(), forb_counts=(), bnd_masks=(), bnd_reqs=(),
                 limit=0, budget=10**7, require_2vc=False, impl=None):
    """Dispatch to the selected kernel; hosts over 64 vertices always use the
    pure-Python one."""
    mod = impl or (_impl if n <= MAX_COMPILED_N else _kernels_py)
    return mod.cover_search(n, list(eu), list(ev), list(forb_masks), list(forb_counts),
                            list(bnd_masks), list(bnd_reqs), limit, budget, bool(require_2vc))


def implementations():
    """Every available kernel module, keyed by name."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels as compiled
        out["cython"] = compiled
    except ImportError:
        pass
    return out
