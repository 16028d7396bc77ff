"""Tests for the synthetic brightness dataset."""

import json

import numpy as np
import pytest

from shotscore.datapipe import ingest
from shotscore.errors import ConfigError
from shotscore.tensor import read_tensor


def test_scores_track_brightness(make_synth):
    dataset = make_synth(n_videos=2, frames=120, side=4, noise=0.0)
    for video in dataset:
        assert video.n_shots == 3
        for index in (0, 50, 119):
            frame = read_tensor(video.frames[index])
            assert frame.shape == (4, 4, 3)
            assert frame.dtype == np.float32
            assert np.ptp(frame) == 0.0
            assert 5.0 * float(frame[0, 0, 0]) == pytest.approx(video.frame_target(index), abs=1e-6)


def test_noise_is_bounded(make_synth):
    video = next(iter(make_synth(n_videos=1, frames=3, side=6, noise=0.05)))
    level = video.shot_scores[0] / 5.0
    for path in video.frames:
        frame = read_tensor(path)
        assert np.all(np.abs(frame - level) <= 0.05 + 1e-6)


def test_same_seed_same_bytes(make_synth):
    first = make_synth(n_videos=3, frames=12, genres=2, seed=4, name="a")
    second = make_synth(n_videos=3, frames=12, genres=2, seed=4, name="b")
    assert first.ids == second.ids
    for x, y in zip(first, second, strict=True):
        assert x.genre == y.genre
        assert [p.read_bytes() for p in x.frames] == [p.read_bytes() for p in y.frames]
        np.testing.assert_array_equal(x.shot_scores, y.shot_scores)
    other = make_synth(n_videos=3, frames=12, genres=2, seed=5, name="c")
    assert not np.array_equal(other.by_id("video000").shot_scores, first.by_id("video000").shot_scores)


def test_manifest_reads_back(tmp_path, make_synth):
    dataset = make_synth(n_videos=4, frames=60, genres=2)
    back = ingest(tmp_path / "synth" / "manifest.json", tmp_path / "synth" / "annotations.csv")
    assert back.ids == dataset.ids
    assert [v.genre for v in back] == ["genre00", "genre01", "genre00", "genre01"]
    for x, y in zip(dataset, back, strict=True):
        assert x.frames == y.frames
        np.testing.assert_allclose(x.shot_scores, y.shot_scores, rtol=0, atol=1e-12)


def test_zero_videos(tmp_path, make_synth):
    assert len(make_synth(n_videos=0)) == 0
    payload = json.loads((tmp_path / "synth" / "manifest.json").read_text())
    assert payload["videos"] == []


@pytest.mark.parametrize(
    "kwargs, field",
    [({"frames": 0}, "synth_frames"), ({"side": 0}, "synth_side"), ({"noise": 0.5}, "synth_noise")],
)
def test_rejects_bad_arguments(make_synth, kwargs, field):
    with pytest.raises(ConfigError, match=field):
        make_synth(**kwargs)
