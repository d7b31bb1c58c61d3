"""Unitary building blocks: selective phase inversion and inversion about average.

The production pipeline flips signs directly; the ancilla-XOR construction
exists to certify that a one-bit oracle wired through an ancilla in
(|0> - |1>)/sqrt(2) performs exactly that sign flip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError
from .states import SubsystemState, _check_unit_norm, _frozen_amplitudes


def _marked_mask(dim: int, marked: Iterable[int]) -> np.ndarray:
    mask = np.zeros(dim, dtype=bool)
    for item in marked:
        idx = int(item)
        if idx < 0 or idx >= dim:
            raise DomainError(f"marked item {idx} outside [0, {dim})")
        mask[idx] = True
    return mask


@dataclass(frozen=True)
class AncillaState:
    """Joint state of one subsystem and a one-bit ancilla.

    Amplitudes are indexed by (x, b) with b the fast index: entry 2x + b.
    """

    dim: int
    amps: np.ndarray

    def __post_init__(self):
        arr = _frozen_amplitudes(self.amps, expected_len=2 * self.dim)
        _check_unit_norm(arr)
        object.__setattr__(self, "amps", arr)


def attach_ancilla(state: SubsystemState, b0: complex, b1: complex) -> AncillaState:
    """Tensor a subsystem with an ancilla bit in amplitude (b0, b1)."""
    joint = np.multiply.outer(state.amps, np.array([b0, b1], dtype=np.complex128))
    return AncillaState(dim=state.dim, amps=joint.reshape(-1))


def minus_ancilla(state: SubsystemState) -> AncillaState:
    """Attach the ancilla in (|0> - |1>)/sqrt(2), the phase-kickback configuration."""
    r = 1.0 / math.sqrt(2.0)
    return attach_ancilla(state, r, -r)


def phase_invert(state: SubsystemState, marked: Iterable[int]) -> SubsystemState:
    """Negate the amplitudes of the marked basis states."""
    mask = _marked_mask(state.dim, marked)
    amps = state.amps.copy()
    amps[mask] *= -1.0
    return SubsystemState(amps)


def xor_oracle_apply(joint: AncillaState, marked: Iterable[int]) -> AncillaState:
    """The reversible oracle circuit |x, b> -> |x, f(x) XOR b>.

    f(x) = 1 exactly on marked items, so the (x, 0) and (x, 1) amplitudes
    swap there; a permutation, hence unitary.
    """
    mask = _marked_mask(joint.dim, marked)
    amps = joint.amps.copy()
    pairs = amps.reshape(joint.dim, 2)
    pairs[mask] = pairs[mask, ::-1]
    return AncillaState(dim=joint.dim, amps=amps)


def inversion_about_average(state: SubsystemState) -> SubsystemState:
    """Reflect every amplitude about the mean: x -> 2*mean - x.

    Equals multiplication by the dense matrix from ``d_matrix`` but costs
    O(N); the matrix form is kept as a test oracle.
    """
    amps = state.amps
    return SubsystemState(2.0 * amps.mean() - amps)


def d_matrix(n: int) -> np.ndarray:
    """Dense inversion-about-average matrix: off-diagonal 2/N, diagonal 2/N - 1."""
    if n < 2:
        raise DomainError(f"matrix dimension must be >= 2, got {n}")
    mat = np.full((n, n), 2.0 / n)
    np.fill_diagonal(mat, 2.0 / n - 1.0)
    return mat


def post_step_amplitudes(n: int, k: int) -> tuple[float, float]:
    """Closed-form (marked, unmarked) amplitudes after one query-plus-reflection step.

    Starting from the uniform state with k of n items marked:
    marked = (3n - 4k)/n**1.5 and unmarked = (n - 4k)/n**1.5, satisfying
    k*m**2 + (n-k)*u**2 = 1 exactly.
    """
    if not 1 <= k < n:
        raise DomainError(f"marked count must satisfy 1 <= k < {n}, got {k}")
    scale = n**1.5
    return (3.0 * n - 4.0 * k) / scale, (n - 4.0 * k) / scale
