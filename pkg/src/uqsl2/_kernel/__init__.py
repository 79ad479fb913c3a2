"""Scalar kernel backend selection.

Prefers the compiled extension, falls back to pure Python.  Set
``UQSL2_PURE_KERNEL=1`` to force the pure implementation (used by the
benchmark and by tests that pin the backend).
"""

import os

if os.environ.get("UQSL2_PURE_KERNEL"):
    from uqsl2._kernel.pure import kadd, kmul, kneg, knorm, krow_axpy, ksub

    BACKEND = "pure"
else:
    try:
        from uqsl2._kernel._ckernel import (
            kadd,
            kmul,
            kneg,
            knorm,
            krow_axpy,
            ksub,
        )

        BACKEND = "compiled"
    except ImportError:
        from uqsl2._kernel.pure import (
            kadd,
            kmul,
            kneg,
            knorm,
            krow_axpy,
            ksub,
        )

        BACKEND = "pure"

__all__ = ["kadd", "ksub", "kneg", "kmul", "knorm", "krow_axpy", "BACKEND"]
