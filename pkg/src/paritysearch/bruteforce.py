"""Exponential-cost validation oracle for the factorized pipeline.

Builds the explicit N**eta global state, applies the global parity-phase
query and the per-subsystem mean reflection, and compares every subsystem
marginal against the O(N) factorized computation.  Exists purely as a
correctness oracle; it is never on the production path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import backends
from .ensemble import measurement_distribution
from .errors import DomainError
from .operators import inversion_about_average
from .oracle import DatabaseSpec, QueryLedger, quantum_phase_query
from .states import GlobalState, default_amplitude_cap, tensor_power, uniform_state


@dataclass(frozen=True)
class ValidationCase:
    """One (N, eta, marked) grid point for cross-validation."""

    n_items: int
    eta: int
    marked: frozenset[int]
    cap: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "marked", frozenset(int(i) for i in self.marked))
        DatabaseSpec(n_items=self.n_items, marked=self.marked)
        if self.eta < 1:
            raise DomainError(f"eta must be >= 1, got {self.eta}")


@dataclass(frozen=True)
class CrossValidationResult:
    case: ValidationCase
    max_discrepancy: float


def _mask(dim: int, marked: Iterable[int]) -> np.ndarray:
    mask = np.zeros(dim, dtype=bool)
    for item in marked:
        idx = int(item)
        if idx < 0 or idx >= dim:
            raise DomainError(f"marked item {idx} outside [0, {dim})")
        mask[idx] = True
    return mask


def global_parity_phase(g: GlobalState, marked: Iterable[int]) -> GlobalState:
    """Negate each global amplitude whose marked-digit count is odd.

    This is the whole-ensemble action of the single parity query; it equals
    the eta-fold tensor power of the per-subsystem sign flip.
    """
    signs = backends.kernels().digit_parity_signs(g.dim, g.eta, _mask(g.dim, marked))
    return GlobalState(dim=g.dim, eta=g.eta, amps=g.amps * signs, cap=g.cap)


def global_d_all(g: GlobalState) -> GlobalState:
    """Apply the inversion about average to every subsystem factor.

    Reflects each digit-slice about its mean, axis by axis: O(eta * N**eta)
    instead of materializing an N**eta square matrix.
    """
    amps = backends.kernels().reflect_about_axis_means(
        np.ascontiguousarray(g.amps), g.dim, g.eta
    )
    return GlobalState(dim=g.dim, eta=g.eta, amps=amps, cap=g.cap)


def marginal(g: GlobalState, subsystem: int) -> np.ndarray:
    """Outcome distribution of one subsystem, all others traced out."""
    if subsystem < 0 or subsystem >= g.eta:
        raise DomainError(f"subsystem index {subsystem} outside [0, {g.eta})")
    pre = g.dim**subsystem
    post = g.dim ** (g.eta - 1 - subsystem)
    probs = (np.abs(g.amps) ** 2).reshape(pre, g.dim, post)
    return probs.sum(axis=(0, 2))


def cross_validate(case: ValidationCase) -> CrossValidationResult:
    """Run both pipelines and report the worst marginal disagreement.

    Factorized: one phase flip plus one reflection on a single N-vector.
    Brute force: tensor power, global parity phase, per-axis reflections,
    then a marginal per subsystem.
    """
    cap = default_amplitude_cap() if case.cap is None else case.cap
    db = DatabaseSpec(n_items=case.n_items, marked=case.marked)

    ledger = QueryLedger()
    queried = quantum_phase_query(uniform_state(case.n_items), db, ledger)
    factorized = measurement_distribution(inversion_about_average(queried))

    g = tensor_power(uniform_state(case.n_items), case.eta, cap=cap)
    g = global_d_all(global_parity_phase(g, case.marked))
    worst = 0.0
    for pos in range(case.eta):
        worst = max(worst, float(np.max(np.abs(marginal(g, pos) - factorized))))
    return CrossValidationResult(case=case, max_discrepancy=worst)
