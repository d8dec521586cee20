"""Kernel selection: compiled reduction core when available, else pure Python.

The compiled core only handles prime fields; characteristic 0 always runs
on the pure-Python kernel.  Set CFR_FORCE_PY_KERNEL=1 to force the
fallback (used by the benchmark).
"""

from __future__ import annotations

import os

from ._corepy import BasisElem, ReducerSession as PyReducerSession

try:  # pragma: no cover - exercised only when the extension is built
    if os.environ.get("CFR_FORCE_PY_KERNEL"):
        raise ImportError("forced python kernel")
    from ._corefast import ReducerSession as FastReducerSession

    HAVE_FAST_KERNEL = True
except ImportError:
    FastReducerSession = None
    HAVE_FAST_KERNEL = False


def make_session(pack, field):
    if (HAVE_FAST_KERNEL and field.characteristic
            and pack.rank == 0 and pack.key_bits <= 128):
        return FastReducerSession(pack, field)
    return PyReducerSession(pack, field)


def kernel_name(field=None) -> str:
    if HAVE_FAST_KERNEL and (field is None or field.characteristic):
        return "cython"
    return "python"
