"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
PASS/FAIL lines on the terminal.
"""

import math
import time
from itertools import combinations

import numpy as np

from paritysearch import (
    DatabaseSpec,
    ExperimentPlan,
    QueryLedger,
    ValidationCase,
    classical_binary_search,
    cross_validate,
    deviation_stats,
    equal_up_to_global_phase,
    inversion_about_average,
    measurement_distribution,
    phase_invert,
    post_step_amplitudes,
    probability_gap,
    quantum_phase_query,
    recommended_eta,
    run_experiment,
    run_trial,
    uniform_state,
)
from paritysearch.cli import main


def _check(criterion, ok, detail):
    print(f"[acceptance] criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {criterion}: {detail}"


def all_marked_sets(n):
    return [frozenset(c) for r in range(1, n) for c in combinations(range(n), r)]


def test_c1_factorized_vs_bruteforce_grid():
    started = time.perf_counter()
    worst = 0.0
    cases = 0
    for n in (2, 4):
        for eta in (1, 2, 3):
            for marked in all_marked_sets(n):
                result = cross_validate(ValidationCase(n_items=n, eta=eta, marked=marked))
                worst = max(worst, result.max_discrepancy)
                cases += 1
    rc = main(["validate"])  # the CLI drives the same grid
    elapsed = time.perf_counter() - started
    _check(
        1,
        worst < 1e-10 and rc == 0 and elapsed < 5.0,
        f"{cases} cases, worst discrepancy {worst:.3e}, exit {rc}, {elapsed:.2f}s",
    )


def test_c2_closed_form_amplitudes():
    worst_amp = worst_norm = 0.0
    for n in (4, 8, 16, 32, 64, 128, 256):
        for k in range(1, n):
            m, u = post_step_amplitudes(n, k)
            simulated = inversion_about_average(
                phase_invert(uniform_state(n), set(range(k)))
            ).amps
            worst_amp = max(
                worst_amp,
                abs(simulated[0].real - m),
                abs(simulated[-1].real - u),
                float(np.max(np.abs(simulated.imag))),
            )
            worst_norm = max(worst_norm, abs(k * m * m + (n - k) * u * u - 1.0))
    _check(
        2,
        worst_amp < 1e-12 and worst_norm < 1e-12,
        f"max amplitude error {worst_amp:.2e}, max normalization error {worst_norm:.2e}",
    )


def test_c3_nine_over_n_and_factor_three():
    n = 1024
    m, _ = post_step_amplitudes(n, 1)
    simulated = inversion_about_average(phase_invert(uniform_state(n), {0})).amps
    exact_p = m * m
    rel_dev = abs(9 / n - exact_p) / exact_p
    boost = simulated[0].real / (1 / math.sqrt(n))
    boost_dev = abs(boost - 3.0) / 3.0
    _check(
        3,
        rel_dev < 0.003 and boost_dev < 0.002 and abs(boost - (3 * n - 4) / n) < 1e-12,
        f"exact p {exact_p:.7f} vs 9/N {9 / n:.7f} (dev {rel_dev:.4%}); "
        f"amplitude boost {boost:.4f} (dev {boost_dev:.4%})",
    )


def test_c4_decode_success_at_recommended_eta():
    started = time.perf_counter()
    rates = {}
    for n in (8, 16, 32):
        plan = ExperimentPlan(
            n_items=n,
            marked=frozenset({n // 3}),
            eta=recommended_eta(n, 4.0),
            seed=2024,
            trials=200,
        )
        rates[n] = run_experiment(plan).success_rate
    elapsed = time.perf_counter() - started
    _check(
        4,
        all(rate >= 0.99 for rate in rates.values()) and elapsed < 30.0,
        f"success rates {rates}, {elapsed:.2f}s",
    )


def test_c5_query_accounting():
    ok = True
    details = []
    for p in range(1, 11):
        n = 2**p
        target = n // 2 + 1 if n > 2 else 1
        plan = ExperimentPlan(n_items=n, marked=frozenset({target}), eta=8, seed=5, trials=3)
        for index in range(plan.trials):
            ok &= run_trial(plan, index).ledger.oracle_calls == 1
        report = run_experiment(plan)
        ok &= report.quantum_oracle_calls_per_trial == 1
        ok &= report.classical_calls == p
        ledger = QueryLedger()
        classical_binary_search(DatabaseSpec(n, frozenset({target})), ledger)
        ok &= ledger.classical_calls == p
        details.append(f"N={n}:{report.classical_calls}")
    _check(5, ok, "1 quantum query per trial; classical calls " + ", ".join(details))


def test_c6_deterministic_four_item_case():
    ok = True
    for eta in (1, 7, 50):
        plan = ExperimentPlan(n_items=4, marked=frozenset({2}), eta=eta, seed=3, trials=25)
        report = run_experiment(plan)
        ok &= report.exact_marked_probability == 1.0
        ok &= report.success_rate == 1.0
        ok &= report.tie_rate == 0.0
    _check(6, ok, "marked probability and success rate exactly 1.0 at eta in {1, 7, 50}")


def test_c7_multi_marked_caveats():
    worst_gap = 0.0
    for n in (4, 8, 16, 32):
        for k in range(1, n):
            worst_gap = max(worst_gap, abs(probability_gap(n, k) - 8 * (n - 2 * k) / n**2))
    null_gap = probability_gap(16, 8)

    phase_ok = dist_ok = True
    for n in (4, 8, 16):
        for k in range(1, n // 2 + 1):
            marked, complement = set(range(k)), set(range(k, n))
            a = inversion_about_average(phase_invert(uniform_state(n), marked))
            b = inversion_about_average(phase_invert(uniform_state(n), complement))
            phase_ok &= equal_up_to_global_phase(a, b, 1e-12)
            dist_ok &= bool(
                np.array_equal(measurement_distribution(a), measurement_distribution(b))
            )
    _check(
        7,
        worst_gap < 1e-12 and null_gap == 0.0 and phase_ok and dist_ok,
        f"gap formula error {worst_gap:.2e}, gap(16,8)={null_gap}, "
        f"complement states/distributions identical: {phase_ok}/{dist_ok}",
    )


def test_c8_deviation_tail():
    started = time.perf_counter()
    trials = 10_000
    plan = ExperimentPlan(n_items=16, marked=frozenset({0}), eta=320, seed=99, trials=trials)
    exceed = 0
    for index in range(trials):
        result = run_trial(plan, index)
        exceed += abs(deviation_stats(result.tally, plan).gamma) > 3.0
    fraction = exceed / trials
    elapsed = time.perf_counter() - started
    _check(
        8,
        fraction <= 0.01 and elapsed < 30.0,
        f"|gamma|>3 in {fraction:.4f} of {trials} trials, {elapsed:.2f}s",
    )


def test_c9_byte_identical_artifacts(tmp_path):
    args = ["run", "--n", "16", "--k", "1", "--trials", "40", "--seed", "31415"]
    contents = {}
    for fmt in ("csv", "json"):
        for label, workers in (("a", "1"), ("b", "1"), ("c", "4")):
            path = tmp_path / f"{fmt}_{label}.{fmt}"
            rc = main(args + ["--workers", workers, "--format", fmt, "--out", str(path)])
            assert rc == 0
            contents[(fmt, label)] = path.read_bytes()
    ok = all(
        contents[(fmt, "a")] == contents[(fmt, "b")] == contents[(fmt, "c")]
        for fmt in ("csv", "json")
    )
    _check(9, ok, "CSV and JSON byte-identical across reruns and worker counts 1 vs 4")
