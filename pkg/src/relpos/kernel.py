"""Kernel selection: compiled extension when present, pure Python otherwise.

Set RELPOS_PURE=1 to force the pure-Python kernel (used by the benchmark and
by tests that compare the two).
"""

import os

if os.environ.get("RELPOS_PURE") == "1":
    from . import _gaussint as impl
else:
    try:
        from . import _gaussint_c as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _gaussint as impl

ffgj = impl.ffgj
matmul = impl.matmul


def backend_name() -> str:
    return impl.BACKEND
