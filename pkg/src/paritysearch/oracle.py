"""The database abstraction: marked-item ground truth, the N-bit parity query,
strict query accounting, and the classical binary-search baseline.

A "query" is one YES/NO question to the oracle.  The quantum pipeline asks
exactly one (the parity question over all subsystems); the classical
baseline needs ceil(log2 N) membership questions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, UnsupportedCaseError
from .operators import phase_invert
from .states import SubsystemState


@dataclass(frozen=True)
class DatabaseSpec:
    """N items with a non-empty proper subset of them marked.

    Markings of N/4 or more items degrade the statistical signal, so
    ``crowding_warning`` flags them; they stay algebraically valid.
    """

    n_items: int
    marked: frozenset[int]

    def __post_init__(self):
        if self.n_items < 2:
            raise DomainError(f"need at least 2 items, got {self.n_items}")
        marked = frozenset(int(i) for i in self.marked)
        if not marked:
            raise DomainError("marked set must be non-empty")
        if len(marked) >= self.n_items:
            raise DomainError("marked set must be a proper subset of the items")
        for idx in marked:
            if idx < 0 or idx >= self.n_items:
                raise DomainError(f"marked item {idx} outside [0, {self.n_items})")
        object.__setattr__(self, "marked", marked)

    @property
    def k(self) -> int:
        return len(self.marked)

    @property
    def crowding_warning(self) -> bool:
        return self.k * 4 >= self.n_items


@dataclass(frozen=True)
class ParityQuery:
    """N bits, bit i = (count of subsystems observed in basis state i) mod 2."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise DomainError("query bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def __len__(self) -> int:
        return len(self.bits)


@dataclass
class QueryLedger:
    """Mutable per-trial tally of oracle questions; never share across workers."""

    oracle_calls: int = 0
    classical_calls: int = 0


def counts_to_query(counts: Iterable[int]) -> ParityQuery:
    """Reduce per-item observation counts to their parity bits."""
    arr = np.asarray(list(counts), dtype=np.int64)
    if np.any(arr < 0):
        raise DomainError("counts must be non-negative")
    return ParityQuery(bits=tuple(int(b) for b in arr % 2))


def parity_answer(db: DatabaseSpec, query: ParityQuery, ledger: QueryLedger) -> int:
    """One-bit oracle answer: 1 iff the total marked count is odd.

    XOR of the query bits over the marked items; charges one oracle call.
    """
    if len(query) != db.n_items:
        raise DomainError(f"query length {len(query)} != item count {db.n_items}")
    ledger.oracle_calls += 1
    answer = 0
    for idx in db.marked:
        answer ^= query.bits[idx]
    return answer


def quantum_phase_query(
    state: SubsystemState, db: DatabaseSpec, ledger: QueryLedger
) -> SubsystemState:
    """The single quantum query, acting on the factorized representation.

    The global parity-phase operator factorizes into identical per-subsystem
    sign flips (the oracle answer can only contribute a phase of +-1), so one
    oracle call flips the marked amplitudes of the shared N-vector no matter
    how many subsystems the ensemble holds.
    """
    if state.dim != db.n_items:
        raise DomainError(f"state dimension {state.dim} != item count {db.n_items}")
    ledger.oracle_calls += 1
    return phase_invert(state, db.marked)


def classical_binary_search(db: DatabaseSpec, ledger: QueryLedger) -> int:
    """Locate the unique marked item with ceil(log2 N) membership questions.

    Each round asks "is the marked item in the lower half of the remaining
    range?" and charges one classical call.
    """
    if db.k != 1:
        raise UnsupportedCaseError("classical baseline is defined for a unique marked item")
    (target,) = db.marked
    lo, hi = 0, db.n_items
    while hi - lo > 1:
        mid = (lo + hi) // 2
        ledger.classical_calls += 1
        if target < mid:  # the one-bit membership answer
            hi = mid
        else:
            lo = mid
    return lo


def classical_query_bound(n_items: int) -> int:
    """Information-theoretic floor on classical queries: ceil(log2 N)."""
    return math.ceil(math.log2(n_items))
