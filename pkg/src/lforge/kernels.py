"""Hot-kernel dispatch.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy fallback in ``_pykernels`` is used. Set ``LFORGE_PURE_PYTHON=1`` to
force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("LFORGE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels
else:
    _impl = _pykernels

poly_mul = _impl.poly_mul
loggamma = _impl.loggamma
contract = _impl.contract

__all__ = ["BACKEND", "poly_mul", "loggamma", "contract"]
