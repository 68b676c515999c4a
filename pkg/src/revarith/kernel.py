"""Kernel selection: compiled extension if importable, pure Python otherwise.

Set ``REVARITH_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _bitslice_py

BACKENDS = {"python": _bitslice_py.apply_gates}

try:
    from . import _bitslice

    BACKENDS["cython"] = _bitslice.apply_gates
except ImportError:  # extension not built
    pass

if os.environ.get("REVARITH_PURE_PYTHON") or "cython" not in BACKENDS:
    BACKEND = "python"
else:
    BACKEND = "cython"

apply_gates = BACKENDS[BACKEND]


def get_backend(name: str):
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
