"""Kernel selection: compiled canonical-labeling core with pure-Python fallback.

The compiled kernel handles arrow multiplicities up to its packing bound and
signals larger entries with OverflowError, on which the call falls back to
the pure-Python implementation (mutation classes of wild quivers can carry
arbitrarily large multiplicities).  `KERNEL_BACKEND` reports what got picked
at import time; benchmarks/bench_kernel.py compares the two.
"""

from . import _canon_py

try:
    from . import _canon_cy

    KERNEL_BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    _canon_cy = None
    KERNEL_BACKEND = "python"


def canonical_all(mat, colors):
    if _canon_cy is not None:
        try:
            return _canon_cy.canonical_all(mat, colors)
        except OverflowError:
            pass
    return _canon_py.canonical_all(mat, colors)


def canonical_key(mat, colors):
    if _canon_cy is not None:
        try:
            return _canon_cy.canonical_key(mat, colors)
        except OverflowError:
            pass
    return _canon_py.canonical_key(mat, colors)


__all__ = ["canonical_all", "canonical_key", "KERNEL_BACKEND"]
