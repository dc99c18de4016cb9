"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``CYCLOVERIFY_PURE=1`` to force the fallback (used by the benchmark and by
the kernel-equivalence tests).
"""

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("CYCLOVERIFY_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

cyclic_mul2 = _impl.cyclic_mul2
reduce2 = _impl.reduce2
poly_mulmod = _impl.poly_mulmod
series_mul = _impl.series_mul

__all__ = ["BACKEND", "cyclic_mul2", "reduce2", "poly_mulmod", "series_mul"]
