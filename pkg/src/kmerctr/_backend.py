"""Kernel backend selection.

Hot loops ship in two flavors: numba @njit kernels and plain numpy/python
fallbacks. The active flavor is chosen once from the KMERCTR_BACKEND
environment variable ("numba", "numpy", or "auto") and can be switched at
runtime with set_backend(), which the backend benchmark and the equivalence
tests rely on.
"""
from __future__ import annotations

import os

_VALID = ("numba", "numpy")

try:
    from numba import njit  # noqa: F401
    _HAVE_NUMBA = True
except ImportError:
    _HAVE_NUMBA = False


def _resolve(name: str) -> str:
    name = name.strip().lower()
    if name in ("", "auto"):
        return "numba" if _HAVE_NUMBA else "numpy"
    if name not in _VALID:
        raise ValueError(f"unknown backend {name!r}, expected one of {_VALID} or 'auto'")
    if name == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("KMERCTR_BACKEND=numba but numba is not importable")
    return name


try:
    _active = _resolve(os.environ.get("KMERCTR_BACKEND", "auto"))
except ValueError as _exc:
    raise ValueError(f"KMERCTR_BACKEND: {_exc}") from None


def active_backend() -> str:
    """Name of the backend currently in use ("numba" or "numpy")."""
    return _active


def use_numba() -> bool:
    return _active == "numba"


def set_backend(name: str) -> str:
    """Switch backends at runtime. Returns the previous backend name."""
    global _active
    prev = _active
    _active = _resolve(name)
    return prev


def jit_compile(pyfunc):
    """Wrap a kernel body with @njit(cache=True) when numba is present.

    The wrapped and unwrapped callables share one body, so both backends run
    identical logic. Compilation happens lazily on first call.
    """
    if _HAVE_NUMBA:
        from numba import njit
        return njit(cache=True)(pyfunc)
    return pyfunc
