"""Backend selection for the oracle's hot loop.

The compiled extension ``_kernels`` is used when it imports; otherwise the
pure-Python mirror. Set ``ENTANGLER_FORGE_PURE=1`` to force the fallback.
"""
import os

from . import _kernels_py

MAXIMIZE = _kernels_py.MAXIMIZE
MINIMIZE = _kernels_py.MINIMIZE


def _load_compiled():
    if os.environ.get("ENTANGLER_FORGE_PURE", "") not in ("", "0"):
        return None
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


_compiled = _load_compiled()
BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

BACKEND = "compiled" if _compiled is not None else "python"


def get_backend(name=None):
    """Kernel module by name (``"compiled"`` or ``"python"``); default is the active one."""
    name = BACKEND if name is None else name
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None
