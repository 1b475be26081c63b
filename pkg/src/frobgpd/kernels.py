"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``FROBGPD_PURE=1`` to force the pure-Python implementation.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("FROBGPD_PURE") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

MODE_FROBENIUS = _kernels_py.MODE_FROBENIUS
MODE_HSTAR = _kernels_py.MODE_HSTAR
decode_table = _kernels_py.decode_table
scan_tables = _impl.scan_tables
semigroupoid_tables = _impl.semigroupoid_tables
