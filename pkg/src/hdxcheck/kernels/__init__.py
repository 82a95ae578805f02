"""Exhaustive GF(2) scan kernels: compiled core, pure-Python fallback.

The compiled extension is preferred when importable; set HDX_PURE=1 to force
the fallback (used by the benchmark and by tests comparing both backends).
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("HDX_PURE"):
    _impl = _pure
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND: str = _impl.BACKEND
coset_min_weight = _impl.coset_min_weight
coset_elements_of_weight = _impl.coset_elements_of_weight
lex_less = _pure.lex_less

__all__ = [
    "BACKEND",
    "coset_min_weight",
    "coset_elements_of_weight",
    "lex_less",
]
