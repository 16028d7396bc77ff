"""Tests for MAE/AEV, the F-measure and relative F."""

import numpy as np
import pytest

from shotscore.errors import ConfigError, ShapeError
from shotscore.scoring import (
    FVariant,
    ShotScoreSeries,
    SummaryMask,
    error_metrics,
    f_measure,
    relative_f,
)


def shots(values):
    return ShotScoreSeries("v", np.asarray(values, dtype=float))


def mask(indices, total=100):
    selected = np.zeros(total, dtype=bool)
    selected[list(indices)] = True
    return SummaryMask(selected)


class TestErrorMetrics:
    def test_identical(self):
        assert error_metrics(shots([1.0, 4.0]), shots([1.0, 4.0])) == (0.0, 0.0)

    def test_by_hand(self):
        mae, aev = error_metrics(shots([1, 2, 3]), shots([1, 1, 1]))
        assert mae == pytest.approx(1.0)
        assert aev == pytest.approx(2 / 3)

    def test_single_shot_has_no_variance(self):
        assert error_metrics(shots([4.5]), shots([0.5]))[1] == 0.0

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            error_metrics(shots([1.0]), shots([1.0, 2.0]))


class TestFMeasure:
    # 30 matched shots, 40 predicted, 50 in the ground truth, 100 in total
    pred = mask(range(0, 40))
    gt = mask(list(range(10, 40)) + list(range(60, 80)))

    def test_standard(self):
        result = f_measure(self.pred, self.gt, FVariant.STANDARD)
        assert result.precision == pytest.approx(0.75)
        assert result.recall == pytest.approx(0.6)
        assert result.f == pytest.approx(2 / 3)

    def test_literal_variant(self):
        result = f_measure(self.pred, self.gt, FVariant.PAPER)
        assert result.precision == pytest.approx(0.6)
        assert result.recall == pytest.approx(0.3)
        assert result.f == pytest.approx(0.4)

    def test_variant_accepts_strings(self):
        assert f_measure(self.pred, self.gt, "standard").f == pytest.approx(2 / 3)

    def test_perfect_match(self):
        result = f_measure(mask([3, 7]), mask([3, 7]), FVariant.STANDARD)
        assert (result.precision, result.recall, result.f) == (1.0, 1.0, 1.0)

    @pytest.mark.parametrize("variant", list(FVariant))
    def test_disjoint(self, variant):
        assert f_measure(mask([1, 2]), mask([3, 4]), variant).f == 0.0

    @pytest.mark.parametrize("variant", list(FVariant))
    def test_empty_masks(self, variant):
        assert f_measure(mask([]), mask([]), variant).f == 0.0

    def test_standard_is_symmetric_for_equal_counts(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            total = int(rng.integers(1, 120))
            count = int(rng.integers(0, total + 1))
            a = mask(rng.permutation(total)[:count], total)
            b = mask(rng.permutation(total)[:count], total)
            forward = f_measure(a, b, FVariant.STANDARD)
            backward = f_measure(b, a, FVariant.STANDARD)
            assert forward.f == backward.f
            assert (forward.precision, forward.recall) == (backward.recall, backward.precision)

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            f_measure(mask([1], total=5), mask([1], total=6))


class TestRelativeF:
    def test_ratio(self):
        assert relative_f(0.26, 0.36) == pytest.approx(0.7222, abs=1e-4)
        assert relative_f(0.3, 0.3) == 1.0
        assert relative_f(0.0, 0.4) == 0.0

    @pytest.mark.parametrize("reference", [0.0, -0.1])
    def test_reference_must_be_positive(self, reference):
        with pytest.raises(ConfigError, match="reference_f"):
            relative_f(0.2, reference)
