"""Kernel selection: compiled extension when available, pure Python otherwise.

The hot inner loops (G(n,p) sampling, all-pairs codegree, 3-connectivity,
forest embedding, the arrowing search) exist twice with identical semantics:
``_ckernels`` (Cython) and ``pykernels``.  Set ``RAMSIMPLE_PURE=1`` to force
the pure path; ``backend()`` reports which one is active.
``benchmarks/bench_kernels.py`` compares the two.
"""

import os

if os.environ.get("RAMSIMPLE_PURE"):
    from ramsimple._kernels import pykernels as _impl

    _BACKEND = "python"
else:
    try:
        from ramsimple._kernels import _ckernels as _impl  # type: ignore

        _BACKEND = "c"
    except ImportError:
        from ramsimple._kernels import pykernels as _impl

        _BACKEND = "python"

gnp_rows = _impl.gnp_rows
max_codegree = _impl.max_codegree
three_connected = _impl.three_connected
forest_embed = _impl.forest_embed
arrows_search = _impl.arrows_search


def backend() -> str:
    """Name of the active kernel backend: "c" or "python"."""
    return _BACKEND
