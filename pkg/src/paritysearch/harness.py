"""Experiment runner: seeded trials, aggregation, and diff-able reports.

Each trial owns its generator and ledger, so trials can run on a thread
pool; aggregation uses integer sums only, making the report independent of
worker count.  Report artifacts (CSV/JSON) are byte-identical for identical
seed and configuration; measured wall time is opt-in because it is the one
field that cannot be reproducible.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .ensemble import (
    ExperimentPlan,
    MeasurementTally,
    measurement_distribution,
    probability_gap,
    recommended_eta,
    sample_tally,
)
from .errors import DomainError
from .operators import inversion_about_average, post_step_amplitudes
from .oracle import QueryLedger, classical_binary_search, quantum_phase_query
from .states import uniform_state

CSV_COLUMNS = (
    "N",
    "k",
    "eta",
    "trials",
    "seed",
    "success_rate",
    "tie_rate",
    "mean_marked_count",
    "exact_marked_probability",
    "approx_9_over_N",
    "quantum_queries",
    "classical_queries",
    "wall_time_ms",
)


@dataclass(frozen=True)
class TrialResult:
    decoded: int
    tally: MeasurementTally
    ledger: QueryLedger


@dataclass(frozen=True)
class ExperimentReport:
    """Aggregated statistics for one plan, plus structured warnings."""

    n_items: int
    k: int
    marked: tuple[int, ...]
    eta: int
    trials: int
    seed: int
    success_rate: float
    tie_rate: float
    mean_marked_count: float
    exact_marked_probability: float
    approx_9_over_n: float
    probability_gap: float
    quantum_oracle_calls_per_trial: int
    classical_calls: int
    wall_time_ms: int
    warnings: tuple[str, ...] = field(default=())


def trial_generator(seed: int, trial_index: int) -> np.random.Generator:
    """Per-trial generator, split from the plan seed.

    The (seed, trial_index) pair feeds numpy's SeedSequence, giving
    independent streams without cross-trial collisions.
    """
    return np.random.default_rng([seed, trial_index])


def run_trial(plan: ExperimentPlan, trial_index: int) -> TrialResult:
    """One end-to-end pass: prepare, query once, reflect, measure eta times, decode."""
    db = plan.database()
    ledger = QueryLedger()
    state = quantum_phase_query(uniform_state(plan.n_items), db, ledger)
    dist = measurement_distribution(inversion_about_average(state))
    tally = sample_tally(dist, plan.eta, trial_generator(plan.seed, trial_index))
    assert ledger.oracle_calls == 1, "quantum pipeline must charge exactly one query"
    return TrialResult(decoded=tally.decoded, tally=tally, ledger=ledger)


def _run_chunk(plan: ExperimentPlan, start: int, stop: int) -> tuple[int, int, int]:
    marked = sorted(plan.marked)
    successes = ties = marked_total = 0
    for index in range(start, stop):
        result = run_trial(plan, index)
        successes += int(result.decoded in plan.marked)
        ties += int(result.tally.tie)
        marked_total += int(result.tally.counts[marked].sum())
    return successes, ties, marked_total


def run_experiment(plan: ExperimentPlan, workers: int = 1) -> ExperimentReport:
    """Execute plan.trials independent trials and aggregate.

    When a single item is marked, the classical binary-search baseline runs
    once against the same database for the query-count comparison.
    """
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    started = time.perf_counter()

    if workers == 1:
        successes, ties, marked_total = _run_chunk(plan, 0, plan.trials)
    else:
        step = max(1, -(-plan.trials // workers))
        spans = [(lo, min(lo + step, plan.trials)) for lo in range(0, plan.trials, step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda span: _run_chunk(plan, *span), spans))
        successes = sum(p[0] for p in parts)
        ties = sum(p[1] for p in parts)
        marked_total = sum(p[2] for p in parts)

    db = plan.database()
    if plan.k == 1:
        baseline_ledger = QueryLedger()
        found = classical_binary_search(db, baseline_ledger)
        assert found in db.marked, "classical baseline must locate the marked item"
        classical_calls = baseline_ledger.classical_calls
    else:
        classical_calls = 0

    m, _ = post_step_amplitudes(plan.n_items, plan.k)
    warnings = []
    if db.crowding_warning:
        warnings.append(
            f"crowded-marking: k={plan.k} >= N/4={plan.n_items // 4}; "
            "the probability gap may be too small to decode"
        )
    if ties:
        warnings.append(f"ties: {ties} of {plan.trials} trials decoded with a tie")

    elapsed_ms = int(round((time.perf_counter() - started) * 1000))
    return ExperimentReport(
        n_items=plan.n_items,
        k=plan.k,
        marked=tuple(sorted(plan.marked)),
        eta=plan.eta,
        trials=plan.trials,
        seed=plan.seed,
        success_rate=successes / plan.trials,
        tie_rate=ties / plan.trials,
        mean_marked_count=marked_total / plan.trials,
        exact_marked_probability=plan.k * m * m,
        approx_9_over_n=9.0 / plan.n_items,
        probability_gap=probability_gap(plan.n_items, plan.k),
        quantum_oracle_calls_per_trial=1,
        classical_calls=classical_calls,
        wall_time_ms=elapsed_ms,
        warnings=tuple(warnings),
    )


def place_marked(n_items: int, k: int, seed: int) -> frozenset[int]:
    """Seeded random placement of k distinct marked items.

    Deterministic in (n_items, k, seed) so sweeps are reproducible row by row.
    """
    if not 1 <= k < n_items:
        raise DomainError(f"marked count must satisfy 1 <= k < {n_items}, got {k}")
    rng = np.random.default_rng([seed, n_items, k])
    return frozenset(int(i) for i in rng.choice(n_items, size=k, replace=False))


def sweep(
    n_values,
    k_values,
    trials: int,
    seed: int,
    eta: int | None = None,
    eta_mult: float = 4.0,
    workers: int = 1,
) -> list[ExperimentReport]:
    """One report per (N, k) pair, in input order.

    eta is either fixed or derived per N as ceil(eta_mult * N * ln N);
    marked items are placed by ``place_marked``.
    """
    reports = []
    for n_items in n_values:
        for k in k_values:
            plan = ExperimentPlan(
                n_items=n_items,
                marked=place_marked(n_items, k, seed),
                eta=eta if eta is not None else recommended_eta(n_items, eta_mult),
                seed=seed,
                trials=trials,
            )
            reports.append(run_experiment(plan, workers=workers))
    return reports


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _row_values(report: ExperimentReport, include_timing: bool) -> list:
    return [
        report.n_items,
        report.k,
        report.eta,
        report.trials,
        report.seed,
        report.success_rate,
        report.tie_rate,
        report.mean_marked_count,
        report.exact_marked_probability,
        report.approx_9_over_n,
        report.quantum_oracle_calls_per_trial,
        report.classical_calls,
        report.wall_time_ms if include_timing else 0,
    ]


def to_csv(reports, include_timing: bool = False) -> str:
    """Fixed-column CSV; floats carry 10 significant digits.

    Timing is zeroed unless requested so identical configurations yield
    byte-identical files.
    """
    lines = [",".join(CSV_COLUMNS)]
    for report in reports:
        lines.append(",".join(_fmt(v) for v in _row_values(report, include_timing)))
    return "\n".join(lines) + "\n"


def to_json(reports, include_timing: bool = False) -> str:
    """JSON array equivalent of the CSV rows, plus marked items and warnings."""
    rows = []
    for report in reports:
        values = _row_values(report, include_timing)
        row = {
            key: (float(_fmt(v)) if isinstance(v, float) else v)
            for key, v in zip(CSV_COLUMNS, values)
        }
        row["marked"] = list(report.marked)
        row["probability_gap"] = float(_fmt(report.probability_gap))
        row["warnings"] = list(report.warnings)
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n"
