"""Kernel backend selection: numba-compiled loops or the pure-numpy fallback.

The active backend is chosen once at import from the ``PARITYSEARCH_BACKEND``
environment variable ("numba" or "numpy"); it defaults to numba when the
import succeeds.  ``use_backend`` switches temporarily, which the tests and
the benchmark use to compare both paths on identical inputs.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _kernels_numpy

ENV_BACKEND = "PARITYSEARCH_BACKEND"

try:
    from . import _kernels_numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _kernels_numba = None
    HAS_NUMBA = False

_MODULES = {"numpy": _kernels_numpy}
if HAS_NUMBA:
    _MODULES["numba"] = _kernels_numba


def _resolve_default() -> str:
    choice = os.environ.get(ENV_BACKEND, "").strip().lower()
    if choice:
        if choice not in ("numba", "numpy"):
            raise ValueError(f"{ENV_BACKEND} must be 'numba' or 'numpy', got {choice!r}")
        if choice == "numba" and not HAS_NUMBA:
            return "numpy"
        return choice
    return "numba" if HAS_NUMBA else "numpy"


_active = _resolve_default()


def active_backend() -> str:
    """Name of the backend kernels currently dispatch to."""
    return _active


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_MODULES))


def set_backend(name: str) -> None:
    global _active
    if name not in _MODULES:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}")
    _active = name


@contextmanager
def use_backend(name: str):
    """Temporarily dispatch kernels to ``name``."""
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def kernels(name: str | None = None):
    """Kernel module for ``name`` (default: the active backend)."""
    return _MODULES[_active if name is None else name]


def warm_up() -> None:
    """Trigger JIT compilation of the numba kernels on tiny inputs."""
    if not HAS_NUMBA:
        return
    import numpy as np

    mod = _MODULES["numba"]
    mod.categorical_counts(np.array([0.5, 1.0]), np.array([0.25, 0.75]), 2)
    mod.digit_parity_signs(2, 2, np.array([False, True]))
    mod.reflect_about_axis_means(np.ones(4, dtype=np.complex128), 2, 2)
