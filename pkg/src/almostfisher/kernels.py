"""Backend selection for the search kernels.

The compiled extension is used when it imported cleanly; otherwise the
pure-Python kernels take over.  Both expose ``bad_masks``,
``brute_force_max`` and ``branch_max`` with identical results.
"""

from __future__ import annotations

from types import ModuleType

from . import _pykernels as python_backend

try:
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

default_backend: ModuleType = compiled_backend or python_backend
BACKEND = "compiled" if compiled_backend is not None else "python"


def get_backend(name: str | None = None) -> ModuleType:
    """Resolve ``"compiled"``, ``"python"`` or ``None`` (the default) to a kernel module."""
    if name is None:
        return default_backend
    if name == "python":
        return python_backend
    if name == "compiled":
        if compiled_backend is None:
            raise ImportError("compiled kernels are not built; reinstall with a C compiler")
        return compiled_backend
    raise ValueError(f"unknown backend {name!r}")
