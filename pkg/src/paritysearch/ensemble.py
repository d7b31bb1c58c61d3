"""Ensemble-scale statistics: sample eta measurements, decode by majority,
and quantify how far the marked-item count strayed from its expectation.

Sampling draws from the single shared N-vector (eta i.i.d. categorical
draws); the brute-force module certifies this is exactly equivalent to
measuring the product-form global state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backends
from .errors import DomainError
from .operators import post_step_amplitudes
from .oracle import DatabaseSpec
from .states import SubsystemState, is_power_of_two

DIST_TOL = 1e-9


@dataclass(frozen=True)
class ExperimentPlan:
    """Run parameters: database, subsystem count eta, seed, and trial count."""

    n_items: int
    marked: frozenset[int]
    eta: int
    seed: int
    trials: int = 1

    def __post_init__(self):
        if not is_power_of_two(self.n_items) or self.n_items < 2:
            raise DomainError(f"item count must be a power of two >= 2, got {self.n_items}")
        object.__setattr__(self, "marked", frozenset(int(i) for i in self.marked))
        self.database()  # validates the marked set
        if self.eta < 1:
            raise DomainError(f"eta must be >= 1, got {self.eta}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 unsigned bits")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")

    @property
    def k(self) -> int:
        return len(self.marked)

    def database(self) -> DatabaseSpec:
        return DatabaseSpec(n_items=self.n_items, marked=self.marked)


@dataclass(frozen=True)
class MeasurementTally:
    """Counts of eta subsystem measurements plus the majority verdict."""

    counts: np.ndarray
    decoded: int
    tie: bool

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=np.int64).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "counts", arr)

    @property
    def eta(self) -> int:
        return int(self.counts.sum())

    @classmethod
    def from_counts(cls, counts) -> "MeasurementTally":
        arr = np.asarray(counts, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0 or np.any(arr < 0):
            raise DomainError("counts must be a non-empty vector of non-negative integers")
        decoded, tie = _argmax_with_tie(arr)
        return cls(counts=arr, decoded=decoded, tie=tie)


@dataclass(frozen=True)
class DeviationStats:
    """Marked-count deviation in units of its binomial standard deviation.

    K = eta/N; after one step the marked count concentrates near 9K per
    marked item (unmarked near K) with sub-Gaussian tails, so |gamma| > 3
    should be rare.
    """

    K: float
    expected_marked: float
    expected_unmarked: float
    gamma: float


def _argmax_with_tie(counts: np.ndarray) -> tuple[int, bool]:
    # argmax already picks the smallest index among maxima
    winner = int(np.argmax(counts))
    tie = int(np.count_nonzero(counts == counts[winner])) > 1
    return winner, tie


def measurement_distribution(state: SubsystemState) -> np.ndarray:
    """Born-rule outcome probabilities |amp|**2 for one subsystem."""
    return np.abs(state.amps) ** 2


def as_generator(seed) -> np.random.Generator:
    """Accept an int seed, a seed sequence (e.g. [seed, trial]), or a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_tally(dist: np.ndarray, eta: int, seed) -> MeasurementTally:
    """Tally eta independent categorical draws from ``dist``.

    Draws are inverse-CDF lookups on eta uniforms from the seeded PCG64
    generator, so results are bit-reproducible for a given (dist, eta, seed)
    and identical under either kernel backend.
    """
    dist = np.asarray(dist, dtype=np.float64)
    if eta < 1:
        raise DomainError(f"eta must be >= 1, got {eta}")
    if dist.ndim != 1 or dist.size < 1:
        raise DomainError("distribution must be a non-empty vector")
    if np.any(dist < 0) or abs(dist.sum() - 1.0) > DIST_TOL:
        raise DomainError("distribution entries must be non-negative and sum to 1")
    rng = as_generator(seed)
    uniforms = rng.random(eta)
    counts = backends.kernels().categorical_counts(np.cumsum(dist), uniforms, dist.size)
    decoded, tie = _argmax_with_tie(counts)
    return MeasurementTally(counts=counts, decoded=decoded, tie=tie)


def decode(tally: MeasurementTally) -> int:
    """Majority verdict: the item observed most often (smallest index on ties)."""
    winner, _ = _argmax_with_tie(tally.counts)
    return winner


def recommended_eta(n_items: int, c: float = 4.0) -> int:
    """ceil(c * N * ln N) subsystems.

    The decoding guarantee needs eta to grow like N log N; the constant is
    calibrated empirically (c=4 gives >= 99% single-marked decoding success
    for N in {8, 16, 32}).
    """
    if n_items < 2:
        raise DomainError(f"item count must be >= 2, got {n_items}")
    if c <= 0:
        raise DomainError(f"multiplier must be positive, got {c}")
    return math.ceil(c * n_items * math.log(n_items))


def deviation_stats(tally: MeasurementTally, plan: ExperimentPlan) -> DeviationStats:
    """Compare the observed marked count against its exact expectation.

    gamma is (count - eta*p) / sqrt(eta*p*(1-p)) where p is the exact
    probability of landing in the marked set (the count over all marked
    items when several are marked); zero-variance distributions report 0.
    """
    m, u = post_step_amplitudes(plan.n_items, plan.k)
    p_item = m * m
    p_set = plan.k * p_item
    eta = plan.eta
    marked_count = int(tally.counts[sorted(plan.marked)].sum())
    variance = eta * p_set * (1.0 - p_set)
    gamma = 0.0 if variance == 0.0 else (marked_count - eta * p_set) / math.sqrt(variance)
    return DeviationStats(
        K=eta / plan.n_items,
        expected_marked=eta * p_item,
        expected_unmarked=eta * u * u,
        gamma=gamma,
    )


def probability_gap(n_items: int, k: int) -> float:
    """Marked minus unmarked outcome probability: 8(N-2k)/N**2.

    The decodable signal; vanishes at k = N/2 where majority decoding
    degenerates to chance.
    """
    m, u = post_step_amplitudes(n_items, k)
    return m * m - u * u
