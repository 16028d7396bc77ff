"""Tests for trimmed-RMS shot aggregation."""

import math

import numpy as np
import pytest

from shotscore.scoring import FrameScoreSeries, aggregate_shots, trim_count, trimmed_rms


def oracle(block):
    values = sorted(float(v) for v in block)
    k = int(len(values) * 0.1 + 1e-9)
    kept = values[k : len(values) - k]
    return math.sqrt(sum(v * v for v in kept) / len(kept))


def test_constant_block():
    assert trimmed_rms(np.full(50, 3.25)) == pytest.approx(3.25, rel=1e-15)


def test_one_to_fifty():
    assert trimmed_rms(np.arange(1, 51)) == pytest.approx(math.sqrt(783.5), rel=1e-12)


def test_order_does_not_matter():
    values = np.arange(1, 51, dtype=np.float64)
    np.random.default_rng(0).shuffle(values)
    assert trimmed_rms(values) == pytest.approx(math.sqrt(783.5), rel=1e-12)


@pytest.mark.parametrize("n, k", [(1, 0), (7, 0), (9, 0), (10, 1), (19, 1), (20, 2), (30, 3), (50, 5)])
def test_trim_count(n, k):
    assert trim_count(n) == k


def test_partial_block_keeps_everything():
    values = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0])
    assert trimmed_rms(values) == pytest.approx(math.sqrt(np.mean(values**2)), rel=1e-12)


def test_matches_oracle_on_random_blocks():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        block = rng.uniform(0, 5, 50)
        assert abs(trimmed_rms(block) - oracle(block)) <= 1e-9


def test_aggregate_blocks():
    scores = np.concatenate([np.full(50, 2.0), np.full(50, 4.0), np.arange(1, 8, dtype=float)])
    shots = aggregate_shots(FrameScoreSeries("v", scores))
    assert len(shots) == 3
    assert shots.video_id == "v"
    assert shots.shot_length == 50
    np.testing.assert_allclose(shots.scores[:2], [2.0, 4.0], rtol=1e-15)
    assert shots.scores[2] == pytest.approx(math.sqrt(20.0), rel=1e-12)


def test_aggregate_stays_in_range():
    rng = np.random.default_rng(2)
    frames = rng.uniform(0, 5, 333)
    shots = aggregate_shots(FrameScoreSeries("v", frames), shot_length=25)
    assert len(shots) == 14
    assert np.all(shots.scores >= 0) and np.all(shots.scores <= 5)


def test_each_shot_lies_between_its_block_extremes():
    rng = np.random.default_rng(3)
    for _ in range(200):
        frames = rng.uniform(0, 5, int(rng.integers(1, 400)))
        shot_length = int(rng.integers(1, 60))
        shots = aggregate_shots(FrameScoreSeries("v", frames), shot_length=shot_length)
        for index, score in enumerate(shots.scores):
            block = frames[index * shot_length : (index + 1) * shot_length]
            assert block.min() - 1e-12 <= score <= block.max() + 1e-12


def test_shifting_up_raises_every_shot():
    rng = np.random.default_rng(4)
    for _ in range(200):
        frames = rng.uniform(0, 5, 137)
        shift = float(rng.uniform(0.01, 2.0))
        base = aggregate_shots(FrameScoreSeries("v", frames)).scores
        raised = aggregate_shots(FrameScoreSeries("v", frames + shift)).scores
        assert np.all(raised > base)


def test_scales_linearly():
    block = np.random.default_rng(5).uniform(0, 5, 50)
    assert trimmed_rms(2.5 * block) == pytest.approx(2.5 * trimmed_rms(block), rel=1e-12)
