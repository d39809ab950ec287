"""Backend selection for the hot kernels.

The compiled extension ``_ckernels`` is preferred; the pure-Python module
``_pykernels`` is used when the extension is not built or when the
environment variable ``TILEPUMP_PURE_PYTHON`` is set to a non-empty value
other than ``0``.
"""

from __future__ import annotations

import os

from tilepump import _pykernels

python_backend = _pykernels

if os.environ.get("TILEPUMP_PURE_PYTHON", "0") not in ("", "0"):
    compiled_backend = None
else:
    try:
        from tilepump import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

grow = backend.grow
classify_periodic = backend.classify_periodic
classify_closed = backend.classify_closed
longest_residue_path = backend.longest_residue_path

__all__ = [
    "BACKEND",
    "backend",
    "classify_closed",
    "classify_periodic",
    "compiled_backend",
    "grow",
    "longest_residue_path",
    "python_backend",
]
