import math

import numpy as np
import pytest

from paritysearch import (
    DomainError,
    ExperimentPlan,
    MeasurementTally,
    decode,
    deviation_stats,
    inversion_about_average,
    measurement_distribution,
    phase_invert,
    post_step_amplitudes,
    probability_gap,
    recommended_eta,
    sample_tally,
    uniform_state,
)


def post_step_distribution(n, marked):
    state = inversion_about_average(phase_invert(uniform_state(n), marked))
    return measurement_distribution(state)


class TestMeasurementDistribution:
    def test_uniform(self):
        np.testing.assert_allclose(
            measurement_distribution(uniform_state(4)), [0.25] * 4, atol=1e-15
        )

    def test_deterministic_four_item_case(self):
        np.testing.assert_allclose(post_step_distribution(4, {2}), [0, 0, 1.0, 0], atol=1e-15)

    def test_sixteen_item_case(self):
        dist = post_step_distribution(16, {0})
        assert dist[0] == pytest.approx(0.47265625, abs=1e-15)
        np.testing.assert_allclose(dist[1:], 0.03515625, atol=1e-15)
        assert dist.sum() == pytest.approx(1.0, abs=1e-12)


class TestSampleTally:
    def test_degenerate_distribution(self, backend):
        tally = sample_tally(np.array([0.0, 0.0, 1.0, 0.0]), eta=50, seed=123)
        np.testing.assert_array_equal(tally.counts, [0, 0, 50, 0])
        assert tally.decoded == 2 and not tally.tie

    def test_seed_reproducibility(self, backend):
        dist = np.full(4, 0.25)
        first = sample_tally(dist, eta=40, seed=99)
        second = sample_tally(dist, eta=40, seed=99)
        np.testing.assert_array_equal(first.counts, second.counts)
        assert first.counts.sum() == 40
        assert not np.array_equal(first.counts, sample_tally(dist, eta=40, seed=100).counts)

    def test_recommended_eta_concentrates_on_marked(self):
        # marked probability 0.4727 vs 0.0352: argmax lands on the marked
        # item essentially always; demand >= 99% over 1000 seeded runs
        dist = post_step_distribution(16, {0})
        eta = recommended_eta(16, 4.0)
        assert eta == 178
        wins = sum(
            sample_tally(dist, eta, seed=[5, t]).decoded == 0 for t in range(1000)
        )
        assert wins >= 990
        mean_marked = np.mean(
            [sample_tally(dist, eta, seed=[6, t]).counts[0] for t in range(200)]
        )
        assert mean_marked == pytest.approx(eta * dist[0], rel=0.05)

    def test_invalid_distribution(self, backend):
        with pytest.raises(DomainError):
            sample_tally(np.array([0.5, 0.4]), eta=10, seed=1)
        with pytest.raises(DomainError):
            sample_tally(np.array([1.5, -0.5]), eta=10, seed=1)

    def test_law_of_large_numbers(self):
        # relative frequency of the marked item stays within 3 sigma of the
        # exact probability in at least 99% of seeded trials
        dist = post_step_distribution(16, {0})
        p = dist[0]
        eta = 16_000
        bound = 3 * math.sqrt(p * (1 - p) / eta)
        hits = sum(
            abs(sample_tally(dist, eta, seed=[21, t]).counts[0] / eta - p) <= bound
            for t in range(1000)
        )
        assert hits >= 990


class TestDecode:
    def test_plain_majority(self):
        tally = MeasurementTally.from_counts([1, 7, 2])
        assert decode(tally) == 1 and not tally.tie

    def test_tie_breaks_to_smallest_index(self):
        tally = MeasurementTally.from_counts([5, 5, 3])
        assert decode(tally) == 0 and tally.tie

    def test_degenerate(self):
        tally = MeasurementTally.from_counts([0, 0, 50, 0])
        assert decode(tally) == 2 and not tally.tie


class TestRecommendedEta:
    def test_values(self):
        assert recommended_eta(4, 4.0) == 23
        assert recommended_eta(2, 1.0) == 2
        assert recommended_eta(1024, 4.0) == math.ceil(4 * 1024 * math.log(1024)) == 28392

    def test_rejects_bad_arguments(self):
        with pytest.raises(DomainError):
            recommended_eta(1, 4.0)
        with pytest.raises(DomainError):
            recommended_eta(8, 0.0)


class TestDeviationStats:
    def test_zero_variance_guard(self):
        plan = ExperimentPlan(n_items=4, marked=frozenset({2}), eta=50, seed=1)
        tally = MeasurementTally.from_counts([0, 0, 50, 0])
        stats = deviation_stats(tally, plan)
        assert stats.gamma == 0.0
        assert stats.expected_marked == 50.0

    def test_subsystems_per_item_ratio(self):
        plan = ExperimentPlan(n_items=16, marked=frozenset({0}), eta=160, seed=1)
        tally = MeasurementTally.from_counts([160] + [0] * 15)
        assert deviation_stats(tally, plan).K == 10.0

    def test_expected_counts_match_exact_probabilities(self):
        plan = ExperimentPlan(n_items=16, marked=frozenset({3}), eta=320, seed=1)
        m, u = post_step_amplitudes(16, 1)
        tally = MeasurementTally.from_counts([20] * 16)
        stats = deviation_stats(tally, plan)
        assert stats.expected_marked == pytest.approx(320 * m * m, abs=1e-12)
        assert stats.expected_unmarked == pytest.approx(320 * u * u, abs=1e-12)

    def test_gamma_standardizes_the_marked_count(self):
        plan = ExperimentPlan(n_items=16, marked=frozenset({0}), eta=320, seed=1)
        p = 0.47265625
        counts = [170] + [10] * 15
        stats = deviation_stats(MeasurementTally.from_counts(counts), plan)
        expected = (170 - 320 * p) / math.sqrt(320 * p * (1 - p))
        assert stats.gamma == pytest.approx(expected, abs=1e-12)


class TestProbabilityGap:
    def test_sixteen_one(self):
        assert probability_gap(16, 1) == pytest.approx(0.4375, abs=1e-15)

    def test_null_at_half_marked(self):
        assert probability_gap(16, 8) == pytest.approx(0.0, abs=1e-15)

    def test_closed_form_and_monotone_decrease(self):
        for n in (8, 16, 64):
            gaps = [probability_gap(n, k) for k in range(1, n // 2 + 1)]
            for k, gap in zip(range(1, n // 2 + 1), gaps):
                assert gap == pytest.approx(8 * (n - 2 * k) / n**2, abs=1e-12)
            assert all(a > b for a, b in zip(gaps, gaps[1:]))
            assert gaps[-1] == pytest.approx(0.0, abs=1e-15)

    def test_matches_measured_distribution_difference(self):
        dist = post_step_distribution(16, {5})
        assert probability_gap(16, 1) == pytest.approx(dist[5] - dist[0], abs=1e-12)


class TestComplementAmbiguity:
    @pytest.mark.parametrize("n", [4, 8, 16])
    def test_distributions_identical_for_complement_marking(self, n):
        for k in range(1, n // 2 + 1):
            marked = set(range(k))
            complement = set(range(n)) - marked
            np.testing.assert_array_equal(
                post_step_distribution(n, marked), post_step_distribution(n, complement)
            )


class TestHalfMarkedFailureMode:
    def test_decode_success_is_chance_level(self):
        # k = N/2 zeroes the probability gap: all 16 outcomes equally likely,
        # so decoding into the marked set succeeds with probability 1/2
        n, eta, trials = 16, 712, 400
        marked = frozenset(range(0, 16, 2))
        dist = post_step_distribution(n, marked)
        np.testing.assert_allclose(dist, 1 / 16, atol=1e-12)
        wins = sum(
            sample_tally(dist, eta, seed=[33, t]).decoded in marked for t in range(trials)
        )
        rate = wins / trials
        assert abs(rate - 0.5) <= 3 * math.sqrt(0.25 / trials)
