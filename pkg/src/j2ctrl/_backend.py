"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``J2CTRL_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _pykernels}
if _compiled is not None:
    _BACKENDS["cython"] = _compiled

if _compiled is not None and not os.environ.get("J2CTRL_PURE_PYTHON"):
    kernels = _compiled
else:
    kernels = _pykernels

BACKEND = kernels.NAME


def available_backends() -> tuple[str, ...]:
    return tuple(_BACKENDS)


def get_kernels(name: str | None = None):
    """Kernel module by name; ``None`` gives the import-time default."""
    if name is None:
        return kernels
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"backend {name!r} unavailable; have {available_backends()}"
        ) from None
