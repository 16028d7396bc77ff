"""Shared fixtures."""

import pytest

from shotscore.datapipe import FrameLoader, synth_generate
from shotscore.tensor import Rng


@pytest.fixture
def make_synth(tmp_path):
    """Factory for small synthetic datasets written under ``tmp_path``."""

    def factory(n_videos=2, frames=10, side=8, *, genres=1, noise=0.05, seed=0, name="synth"):
        return synth_generate(
            tmp_path / name, n_videos, frames, side, Rng(seed), n_genres=genres, noise=noise
        )

    return factory


@pytest.fixture
def loader8():
    return FrameLoader(8, 8, workers=1)
