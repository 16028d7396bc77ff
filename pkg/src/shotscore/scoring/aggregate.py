"""Frame-to-shot matching by trimmed root-mean-square."""

import math

import numpy as np
import numpy.typing as npt

from shotscore.config import SHOT_LENGTH, TRIM_FRACTION
from shotscore.scoring.series import FrameScoreSeries, ShotScoreSeries


def trim_count(n: int, trim_fraction: float = TRIM_FRACTION) -> int:
    """Entries dropped from each end of an ``n``-value block: floor(fraction * n)."""
    # round() absorbs binary error in products such as 0.1 * 30.
    return math.floor(round(n * trim_fraction, 9))


def trimmed_rms(block: npt.ArrayLike, trim_fraction: float = TRIM_FRACTION) -> float:
    values = np.sort(np.asarray(block, dtype=np.float64))
    k = trim_count(len(values), trim_fraction)
    kept = values[k : len(values) - k]
    return float(np.sqrt(np.mean(kept * kept)))


def aggregate_shots(
    series: FrameScoreSeries,
    shot_length: int = SHOT_LENGTH,
    trim_fraction: float = TRIM_FRACTION,
) -> ShotScoreSeries:
    """Assign each block of ``shot_length`` frames its trimmed RMS score."""
    scores = series.scores
    shots = [
        trimmed_rms(scores[start : start + shot_length], trim_fraction)
        for start in range(0, len(scores), shot_length)
    ]
    return ShotScoreSeries(series.video_id, np.array(shots), shot_length)
