"""Tests for summary selection and its baselines."""

import numpy as np
import pytest

from shotscore.errors import ConfigError
from shotscore.scoring import (
    FVariant,
    ShotScoreSeries,
    SummaryMask,
    select_summary,
    summary_size,
    summary_sweep,
    summary_threshold,
    uniform_summary,
)


def shots(values):
    return ShotScoreSeries("v", np.asarray(values, dtype=float))


def test_top_fifth():
    series = shots(range(1, 11))
    summary = select_summary(series, 0.2)
    assert summary.indices == [8, 9]
    assert summary_threshold(series, summary) == 9.0


def test_ties_go_to_earlier_shots():
    assert select_summary(shots([2.0] * 10), 0.1).indices == [0]
    assert select_summary(shots([1.0, 3.0, 2.0, 3.0, 3.0]), 0.4).indices == [1, 3]


def test_rounding_can_select_everything():
    assert select_summary(shots([1.0, 2.0]), 0.999).count == 2


@pytest.mark.parametrize("n, fraction, size", [(10, 0.15, 2), (20, 0.15, 3), (7, 0.05, 0), (100, 0.05, 5)])
def test_summary_size_rounds_half_up(n, fraction, size):
    assert summary_size(n, fraction) == size


def test_empty_summary_has_no_threshold():
    series = shots([1.0, 2.0])
    summary = select_summary(series, 0.1)
    assert summary.count == 0
    assert summary_threshold(series, summary) is None


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.2])
def test_fraction_range(fraction):
    with pytest.raises(ConfigError, match="summary_fraction"):
        select_summary(shots([1.0]), fraction)


def test_uniform_baseline():
    assert uniform_summary(10, 0.2).indices == [2, 7]
    assert uniform_summary(10, 0.2).fraction == pytest.approx(0.2)
    assert uniform_summary(3, 0.1).count == 0


def test_sweep_keys_and_values():
    gt = shots(np.arange(40, dtype=float))
    sweep = summary_sweep(gt, gt, variant=FVariant.STANDARD)
    assert sweep == {"0.05": 1.0, "0.10": 1.0, "0.15": 1.0}
    reversed_sweep = summary_sweep(shots(np.arange(40, 0, -1, dtype=float)), gt)
    assert all(value == 0.0 for value in reversed_sweep.values())


def test_frame_mask_and_segments():
    summary = SummaryMask(np.array([True, True, False, True]))
    frame_mask = summary.to_frame_mask(180)
    assert frame_mask.shape == (180,)
    assert frame_mask[:100].all() and not frame_mask[100:150].any() and frame_mask[150:].all()
    assert summary.segments(180) == [(0, 100), (150, 180)]
    assert summary.segments(20, shot_length=5) == [(0, 10), (15, 20)]
