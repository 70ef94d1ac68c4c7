"""Kernel selection: the compiled extension when it imports, else pure Python.

Set FLAGTC_PURE_PYTHON=1 to force the fallback.
"""
import os

BACKEND = "python"

if os.environ.get("FLAGTC_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import group_top_lefts, top_pairing_batch
else:
    try:
        from ._kernels import group_top_lefts, top_pairing_batch
        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import group_top_lefts, top_pairing_batch

__all__ = ["BACKEND", "group_top_lefts", "top_pairing_batch"]
