"""Synthetic brightness dataset for desk-scale runs.

Every shot gets a latent brightness ``b``; its frames are ``b`` plus
zero-mean texture noise and its ground-truth score is ``L * b``. The
network therefore has a learnable signal without real footage.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from shotscore.config import (
    ANNOTATIONS_FILE,
    FRAMES_DIR,
    INPUT_CHANNELS,
    MANIFEST_FILE,
    SCORE_SCALE,
    SHOT_LENGTH,
)
from shotscore.datapipe.records import (
    VideoDataset,
    VideoRecord,
    write_annotations,
    write_manifest,
)
from shotscore.errors import ConfigError
from shotscore.tensor import FLOAT32, Rng, write_tensor

logger = logging.getLogger(__name__)

BRIGHTNESS_RANGE = (0.1, 0.9)


def synth_generate(
    out_dir: str | Path,
    n_videos: int,
    frames_per_video: int,
    side: int,
    rng: Rng,
    *,
    n_genres: int = 10,
    noise: float = 0.05,
    channels: int = INPUT_CHANNELS,
    score_scale: int = SCORE_SCALE,
    shot_length: int = SHOT_LENGTH,
) -> VideoDataset:
    """Write frames, manifest and annotations under ``out_dir``.

    Returns:
        The generated dataset, identical to what :func:`ingest` reads back.
    """
    for name, value in (
        ("synth_videos", n_videos),
        ("synth_frames", frames_per_video),
        ("synth_side", side),
        ("synth_genres", n_genres),
    ):
        if value < 0 or (value == 0 and name != "synth_videos"):
            raise ConfigError(name, f"must be positive, got {value}")
    low, high = BRIGHTNESS_RANGE
    if not 0.0 <= noise <= low:
        raise ConfigError("synth_noise", f"must be in [0, {low}], got {noise}")

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    n_shots = -(-frames_per_video // shot_length)

    videos = []
    for v in range(n_videos):
        video_id = f"video{v:03d}"
        video_rng = rng.spawn(video_id)
        brightness = video_rng.uniform(low, high, (n_shots,), dtype=FLOAT32)
        frame_dir = out_dir / FRAMES_DIR / video_id
        frame_dir.mkdir(parents=True, exist_ok=True)

        paths = []
        for index in range(frames_per_video):
            level = brightness[index // shot_length]
            texture = video_rng.uniform(
                -noise, noise, (side, side, channels), dtype=FLOAT32
            )
            frame = np.clip(level + texture, 0.0, 1.0).astype(FLOAT32)
            path = frame_dir / f"{index:05d}.ftns"
            write_tensor(frame, path)
            paths.append(path)

        videos.append(
            VideoRecord(
                video_id=video_id,
                genre=f"genre{v % n_genres:02d}",
                frames=tuple(paths),
                shot_scores=score_scale * brightness.astype(np.float64),
                shot_length=shot_length,
            )
        )

    dataset = VideoDataset(tuple(videos), score_scale)
    write_manifest(dataset, out_dir / MANIFEST_FILE)
    write_annotations(dataset, out_dir / ANNOTATIONS_FILE)
    logger.info(
        "synthesized %d videos x %d frames (%dx%d) in %s",
        n_videos,
        frames_per_video,
        side,
        side,
        out_dir,
    )
    return dataset
