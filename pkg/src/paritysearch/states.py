"""Complex-amplitude state vectors for one subsystem and for the full ensemble.

Two pictures coexist: a single N-vector shared by all subsystems (the
factorized picture the production pipeline runs on) and the explicit
N**eta global vector used only for brute-force validation.  Both store
double-precision complex amplitudes and are frozen after construction.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResourceCapError

NORM_TOL = 1e-9
DEFAULT_AMPLITUDE_CAP = 2**20
ENV_CAP = "PARITYSEARCH_CAP"


def default_amplitude_cap() -> int:
    """Global-state size limit; override with the PARITYSEARCH_CAP env var."""
    raw = os.environ.get(ENV_CAP)
    if raw is None:
        return DEFAULT_AMPLITUDE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise DomainError(f"{ENV_CAP} must be an integer, got {raw!r}") from exc
    if cap < 2:
        raise DomainError(f"{ENV_CAP} must be at least 2, got {cap}")
    return cap


def _frozen_amplitudes(amps, expected_len: int | None = None) -> np.ndarray:
    arr = np.asarray(amps, dtype=np.complex128).reshape(-1).copy()
    if expected_len is not None and arr.shape[0] != expected_len:
        raise DomainError(f"expected {expected_len} amplitudes, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise DomainError("amplitudes must be finite")
    arr.setflags(write=False)
    return arr


def _check_unit_norm(arr: np.ndarray) -> None:
    n = np.linalg.norm(arr)
    if abs(n - 1.0) > NORM_TOL:
        raise DomainError(f"state must be normalized, got norm {n!r}")


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class SubsystemState:
    """Unit vector of N complex amplitudes describing one subsystem.

    N must be a power of two (>= 2).  The array is read-only; every
    operation returns a new state.
    """

    amps: np.ndarray

    def __post_init__(self):
        arr = _frozen_amplitudes(self.amps)
        if arr.shape[0] < 2 or not is_power_of_two(arr.shape[0]):
            raise DomainError(f"dimension must be a power of two >= 2, got {arr.shape[0]}")
        _check_unit_norm(arr)
        object.__setattr__(self, "amps", arr)

    @property
    def dim(self) -> int:
        return self.amps.shape[0]


@dataclass(frozen=True)
class GlobalState:
    """Explicit amplitude vector over all N**eta ensemble basis states.

    Basis index digits are base-N with digit 0 most significant: digit j
    is the basis state of subsystem j.  Construction rejects vectors
    larger than ``cap`` amplitudes (default 2**20).
    """

    dim: int
    eta: int
    amps: np.ndarray
    cap: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.dim < 2 or not is_power_of_two(self.dim):
            raise DomainError(f"dimension must be a power of two >= 2, got {self.dim}")
        if self.eta < 1:
            raise DomainError(f"eta must be >= 1, got {self.eta}")
        cap = default_amplitude_cap() if self.cap is None else self.cap
        size = self.dim**self.eta
        if size > cap:
            raise ResourceCapError(
                f"global state needs {size} amplitudes, over the cap of {cap}"
            )
        arr = _frozen_amplitudes(self.amps, expected_len=size)
        _check_unit_norm(arr)
        object.__setattr__(self, "amps", arr)
        object.__setattr__(self, "cap", cap)

    @property
    def size(self) -> int:
        return self.amps.shape[0]


def uniform_state(n: int) -> SubsystemState:
    """Equal-amplitude superposition 1/sqrt(N) over all N basis states."""
    if n < 2 or not is_power_of_two(n):
        raise DomainError(f"item count must be a power of two >= 2, got {n}")
    return SubsystemState(np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128))


def norm(state) -> float:
    """L2 norm of a state or a bare amplitude array."""
    amps = state.amps if hasattr(state, "amps") else np.asarray(state, dtype=np.complex128)
    return float(np.linalg.norm(amps))


def equal_up_to_global_phase(a: SubsystemState, b: SubsystemState, tol: float = 1e-9) -> bool:
    """True when a == c*b entrywise for some unit complex c.

    c is read off the largest-magnitude entry of b; states differing only
    by such a phase are physically indistinguishable.
    """
    if a.dim != b.dim:
        raise DomainError(f"dimension mismatch: {a.dim} vs {b.dim}")
    pivot = int(np.argmax(np.abs(b.amps)))
    if abs(b.amps[pivot]) == 0.0:
        return bool(np.all(np.abs(a.amps) <= tol))
    c = a.amps[pivot] / b.amps[pivot]
    if abs(abs(c) - 1.0) > tol:
        return False
    return bool(np.all(np.abs(a.amps - c * b.amps) <= tol))


def tensor_power(state: SubsystemState, eta: int, cap: int | None = None) -> GlobalState:
    """eta-fold tensor product of identical subsystems.

    Entry at index idx is the product of state.amps over the base-N digits
    of idx (digit 0 most significant).
    """
    if eta < 1:
        raise DomainError(f"eta must be >= 1, got {eta}")
    effective_cap = default_amplitude_cap() if cap is None else cap
    if state.dim**eta > effective_cap:
        raise ResourceCapError(
            f"tensor power needs {state.dim**eta} amplitudes, over the cap of {effective_cap}"
        )
    amps = state.amps
    for _ in range(eta - 1):
        amps = np.multiply.outer(amps, state.amps).reshape(-1)
    return GlobalState(dim=state.dim, eta=eta, amps=amps, cap=effective_cap)
