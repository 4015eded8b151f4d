"""Kernel selection: compiled _ckernel when importable, else _kernel_py.

FLOWLOOP_KERNEL=py forces the pure-Python kernel; FLOWLOOP_KERNEL=c demands
the compiled one (ImportError if it is not built).  set_active() rebinds at
runtime so the benchmark can time both sides in one process.
"""

import os

from . import _kernel_py

_impls = {"py": _kernel_py}
try:
    from . import _ckernel

    _impls["c"] = _ckernel
except ImportError:
    _ckernel = None

active = None
active_name = None


def set_active(name):
    global active, active_name
    if name not in _impls:
        raise ImportError(
            f"kernel {name!r} not available (have: {sorted(_impls)})"
        )
    active = _impls[name]
    active_name = name
    return active


def available():
    return sorted(_impls)


_env = os.environ.get("FLOWLOOP_KERNEL", "").strip().lower()
if _env:
    set_active(_env)
else:
    set_active("c" if "c" in _impls else "py")
