"""Kernel backend selection.

The compiled extension ``osx._ckernels`` is used when it imports; otherwise
the pure-Python ``osx._pykernels`` takes over.  Setting the environment
variable ``OSX_BACKEND`` to ``python`` or ``cython`` overrides the choice.
Both expose the same
functions, and callers always go through this module's attributes so that
:func:`use_backend` can swap them at runtime (tests and benchmarks do).
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_NAMES = (
    "mask_sign",
    "deglex_key",
    "wedge_terms",
    "boundary_terms",
    "reduce_row",
    "insert_row",
    "search_partitions",
    "max_components",
)

BACKEND = None


def available_backends():
    return ["python"] + (["cython"] if _ckernels is not None else [])


def use_backend(name):
    """Switch every kernel to ``"cython"`` or ``"python"``; returns the old name."""
    global BACKEND
    if name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        mod = _ckernels
    elif name == "python":
        mod = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    old = BACKEND
    g = globals()
    for fn in _NAMES:
        g[fn] = getattr(mod, fn)
    BACKEND = name
    return old


use_backend(os.environ.get("OSX_BACKEND") or ("cython" if _ckernels is not None else "python"))
