"""Threshold-based summary selection."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from shotscore.config import SUMMARY_FRACTION, SWEEP_FRACTIONS
from shotscore.errors import ConfigError
from shotscore.scoring.metrics import f_measure
from shotscore.scoring.series import FVariant, ShotScoreSeries, SummaryMask


def summary_size(n_shots: int, fraction: float) -> int:
    """round(fraction * n_shots), halves rounded up."""
    if not 0.0 < fraction < 1.0:
        raise ConfigError("summary_fraction", f"must be in (0, 1), got {fraction}")
    return math.floor(fraction * n_shots + 0.5)


def select_summary(
    series: ShotScoreSeries, target_fraction: float = SUMMARY_FRACTION
) -> SummaryMask:
    """Select the top ``round(fraction * n)`` shots.

    Equivalent to thresholding at the (1 - fraction) quantile: shots above the
    threshold are taken and ties at the threshold go to earlier shots.
    """
    count = summary_size(len(series), target_fraction)
    # Stable sort on -score keeps earlier shots first among equals.
    order = np.argsort(-series.scores, kind="stable")
    selected = np.zeros(len(series), dtype=bool)
    selected[order[:count]] = True
    return SummaryMask(selected)


def summary_threshold(series: ShotScoreSeries, mask: SummaryMask) -> float | None:
    """Lowest selected score, or None for an empty summary."""
    if not mask.count:
        return None
    return float(series.scores[mask.selected].min())


def uniform_summary(n_shots: int, target_fraction: float = SUMMARY_FRACTION) -> SummaryMask:
    """Evenly spaced shots: the content-blind baseline."""
    count = summary_size(n_shots, target_fraction)
    selected = np.zeros(n_shots, dtype=bool)
    if count:
        positions = ((np.arange(count) + 0.5) * n_shots / count).astype(int)
        selected[positions] = True
    return SummaryMask(selected)


def summary_sweep(
    pred: ShotScoreSeries,
    gt: ShotScoreSeries,
    fractions: Sequence[float] = SWEEP_FRACTIONS,
    variant: FVariant = FVariant.PAPER,
) -> dict[str, float]:
    """F-measure of predicted vs ground-truth summaries at several lengths."""
    return {
        f"{fraction:.2f}": f_measure(
            select_summary(pred, fraction), select_summary(gt, fraction), variant
        ).f
        for fraction in fractions
    }
