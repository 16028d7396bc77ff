"""Genre-stratified train/test split."""

from __future__ import annotations

import logging
import math

from shotscore.config import MIN_TEST_PER_GENRE, MIN_TRAIN_PER_GENRE, TEST_FRACTION
from shotscore.datapipe.records import VideoDataset
from shotscore.errors import ConfigError
from shotscore.tensor import Rng

logger = logging.getLogger(__name__)


def split(
    dataset: VideoDataset,
    rng: Rng,
    test_fraction: float = TEST_FRACTION,
    min_train_per_genre: int = MIN_TRAIN_PER_GENRE,
    min_test_per_genre: int = MIN_TEST_PER_GENRE,
) -> tuple[VideoDataset, VideoDataset]:
    """Partition ``dataset`` into disjoint train and test sets.

    The test set targets ``round(len * test_fraction)`` videos, each genre
    keeps at least ``min_train_per_genre`` training and
    ``min_test_per_genre`` test videos, and any further test slots are dealt
    round-robin over genres in a seeded order.

    Raises:
        ConfigError: If some genre cannot satisfy both minimums.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ConfigError("test_fraction", f"must be in (0, 1), got {test_fraction}")
    if min_train_per_genre < 0 or min_test_per_genre < 0:
        raise ConfigError("min_train_per_genre", "per-genre minimums must be >= 0")

    genres = dataset.genres()
    needed = min_train_per_genre + min_test_per_genre
    for genre, videos in genres.items():
        if len(videos) < needed:
            raise ConfigError(
                "split",
                f"genre {genre!r} has {len(videos)} videos, needs at least {needed} "
                f"({min_train_per_genre} train + {min_test_per_genre} test)",
            )

    total = len(dataset)
    lowest = len(genres) * min_test_per_genre
    highest = total - len(genres) * min_train_per_genre
    target = math.floor(total * test_fraction + 0.5)
    n_test = min(max(target, lowest), highest)
    if n_test != target:
        logger.warning(
            "test set size %d adjusted to %d to honour per-genre minimums", target, n_test
        )

    shuffled = {
        genre: [videos[i].video_id for i in rng.permutation(len(videos))]
        for genre, videos in genres.items()
    }
    test_ids: dict[str, list[str]] = {
        genre: ids[:min_test_per_genre] for genre, ids in shuffled.items()
    }
    remaining = n_test - lowest
    order = [list(genres)[i] for i in rng.permutation(len(genres))]
    while remaining > 0:
        for genre in order:
            if remaining == 0:
                break
            taken = len(test_ids[genre])
            if len(shuffled[genre]) - taken > min_train_per_genre:
                test_ids[genre].append(shuffled[genre][taken])
                remaining -= 1

    chosen = {video_id for ids in test_ids.values() for video_id in ids}
    train = dataset.subset(v for v in dataset.ids if v not in chosen)
    test = dataset.subset(chosen)
    logger.info("split %d videos into %d train / %d test", total, len(train), len(test))
    return train, test
