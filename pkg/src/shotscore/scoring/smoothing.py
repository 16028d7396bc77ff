"""Moving-average smoothing of per-frame predictions."""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from shotscore.config import SMOOTH_WINDOW
from shotscore.errors import ConfigError
from shotscore.scoring.series import FrameScoreSeries


def smooth(series: FrameScoreSeries, window: int = SMOOTH_WINDOW) -> FrameScoreSeries:
    """Centered moving average; windows shrink at the edges."""
    if window < 1 or window % 2 == 0:
        raise ConfigError("smooth_window", f"must be an odd integer >= 1, got {window}")
    if window == 1:
        return series
    half = window // 2
    scores = series.scores
    padded = np.pad(scores, half, constant_values=np.nan)
    windows = sliding_window_view(padded, window)
    # Averaging deviations from the centre keeps constant runs exact.
    deviation = np.nanmean(windows - scores[:, None], axis=1)
    return FrameScoreSeries(series.video_id, scores + deviation)
