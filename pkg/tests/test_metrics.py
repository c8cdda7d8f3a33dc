import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sparsetls import TrialRecord, aggregate, squared_error, support_errors


class TestSquaredError:
    def test_zero_at_equality(self):
        x = np.array([0.2, -0.3, 0.0])
        assert squared_error(x, x) == 0.0

    def test_unit_truth_against_zero_estimate(self):
        x = np.zeros(4)
        t = np.array([0.5, -0.5, 0.5, 0.5])  # unit l2 norm
        assert squared_error(x, t) == pytest.approx(1.0, abs=1e-15)

    def test_hand_value(self):
        got = squared_error(np.array([0.9, 0.05, 0.0]), np.array([1.0, 0.0, 0.0]))
        assert got == pytest.approx(0.0125, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            squared_error(np.zeros(3), np.zeros(4))

    @given(arrays(np.float64, 7, elements=st.floats(-50, 50)),
           arrays(np.float64, 7, elements=st.floats(-50, 50)))
    def test_permutation_covariant_and_nonnegative(self, x, t):
        val = squared_error(x, t)
        assert val >= 0.0
        perm = np.arange(7)[::-1]
        # summation order changes, so equality holds to rounding only
        assert squared_error(x[perm], t[perm]) == pytest.approx(val, rel=1e-12, abs=1e-300)


class TestSupportErrors:
    def test_perfect_match(self):
        x = np.array([1.0, 0.0, -2.0])
        se = support_errors(x, x)
        assert (se.false_negatives, se.false_positives) == (0, 0)

    def test_all_missed(self):
        t = np.zeros(10)
        t[[1, 4, 7]] = 1.0
        se = support_errors(np.zeros(10), t)
        assert (se.false_negatives, se.false_positives) == (3, 0)

    def test_one_false_positive(self):
        se = support_errors(np.array([0.9, 0.05, 0.0]), np.array([1.0, 0.0, 0.0]))
        assert (se.false_negatives, se.false_positives) == (0, 1)

    def test_counting_is_exact_zero_not_threshold(self):
        # a 1e-300 entry still counts as detected support
        se = support_errors(np.array([1e-300, 0.0]), np.array([1.0, 0.0]))
        assert (se.false_negatives, se.false_positives) == (0, 0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            support_errors(np.zeros(3), np.zeros(4))

    @given(arrays(np.float64, 12, elements=st.floats(-2, 2)),
           arrays(np.float64, 12, elements=st.floats(-2, 2)))
    def test_bounds(self, x, t):
        k = int(np.count_nonzero(t))
        se = support_errors(x, t)
        assert 0 <= se.false_negatives <= k
        assert 0 <= se.false_positives <= t.size - k


class TestAggregate:
    def test_single_record_is_identity(self):
        rec = TrialRecord("s1", "pg", 0.02, sq_error=0.5, fn=1, fp=2)
        row = aggregate([rec])
        assert row.mean_sq_error == 0.5
        assert row.mean_fn == 1.0
        assert row.mean_fp == 2.0
        assert row.trials == 1

    def test_two_values_mean(self):
        recs = [
            TrialRecord("s1", "pg", 0.02, sq_error=1.0, fn=0, fp=0),
            TrialRecord("s1", "pg", 0.02, sq_error=3.0, fn=2, fp=4),
        ]
        row = aggregate(recs)
        assert row.mean_sq_error == 2.0
        assert row.mean_fn == 1.0
        assert row.mean_fp == 2.0

    def test_mean_matches_independent_summation(self):
        rng = np.random.default_rng(0)
        vals = rng.uniform(size=100)
        recs = [TrialRecord("s1", "adcd", 0.1, sq_error=float(v), fn=0, fp=0) for v in vals]
        row = aggregate(recs)
        total = 0.0
        for v in vals:
            total += float(v)
        assert abs(row.mean_sq_error - total / 100) < 1e-12

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            aggregate([])

    def test_mixed_cells_rejected(self):
        recs = [
            TrialRecord("s1", "pg", 0.02, sq_error=1.0, fn=0, fp=0),
            TrialRecord("s1", "adcd", 0.02, sq_error=1.0, fn=0, fp=0),
        ]
        with pytest.raises(ValueError):
            aggregate(recs)
