"""Per-video prediction, evaluation and summarization steps."""

from __future__ import annotations

import logging
from typing import Any

import numpy as np

from shotscore.config import SHOT_LENGTH, SUMMARY_FRACTION, SWEEP_FRACTIONS
from shotscore.datapipe import FrameLoader, VideoRecord
from shotscore.network import Network
from shotscore.scoring import (
    FrameScoreSeries,
    FVariant,
    MetricsReport,
    ScoreCurve,
    ShotScoreSeries,
    aggregate_shots,
    error_metrics,
    f_measure,
    relative_f,
    select_summary,
    smooth,
    summary_sweep,
    summary_threshold,
    uniform_summary,
)

logger = logging.getLogger(__name__)

PREDICT_BATCH = 64


def predict_video(
    net: Network, loader: FrameLoader, video: VideoRecord, batch_size: int = PREDICT_BATCH
) -> FrameScoreSeries:
    """Score every frame of ``video`` in eval mode."""
    net.eval()
    chunks = []
    for start in range(0, video.frame_count, batch_size):
        frames = loader.load_many(video.frames[start : start + batch_size])
        chunks.append(np.asarray(net.forward(frames), dtype=np.float64))
    return FrameScoreSeries(video.video_id, np.concatenate(chunks))


def score_curve(
    net: Network, loader: FrameLoader, video: VideoRecord, smooth_window: int = 1
) -> ScoreCurve:
    predicted = predict_video(net, loader, video)
    smoothed = smooth(predicted, smooth_window)
    return ScoreCurve(video.video_id, predicted.scores, smoothed.scores, video.frame_targets())


def evaluate_curve(
    curve: ScoreCurve,
    video: VideoRecord,
    *,
    fraction: float = SUMMARY_FRACTION,
    variant: FVariant = FVariant.PAPER,
    reference_f: float | None = None,
    sweep_fractions: tuple[float, ...] = SWEEP_FRACTIONS,
) -> MetricsReport:
    """Match predictions to shots and score them against ``video``'s ground truth.

    The smoothed column is used; with smoothing disabled it equals the raw
    predictions.
    """
    pred = aggregate_shots(curve.smoothed_series, video.shot_length)
    gt = ShotScoreSeries(video.video_id, video.shot_scores, video.shot_length)
    mae, aev = error_metrics(pred, gt)

    gt_mask = select_summary(gt, fraction)
    scores = f_measure(select_summary(pred, fraction), gt_mask, variant)
    uniform = f_measure(uniform_summary(len(gt), fraction), gt_mask, variant)

    report = MetricsReport(
        video_id=video.video_id,
        mae=mae,
        aev=aev,
        f_measure=scores.f,
        relative_f=relative_f(scores.f, reference_f) if reference_f is not None else None,
        precision=scores.precision,
        recall=scores.recall,
        variant=variant,
        summary_fraction=fraction,
        uniform_f=uniform.f,
        sweep=summary_sweep(pred, gt, sweep_fractions, variant),
    )
    logger.debug("%s: mae=%.4f aev=%.4f f=%.4f", video.video_id, mae, aev, scores.f)
    return report


def summarize_curve(
    curve: ScoreCurve,
    fraction: float = SUMMARY_FRACTION,
    shot_length: int = SHOT_LENGTH,
) -> dict[str, Any]:
    """Summary selection for one video as a JSON-ready dict."""
    shots = aggregate_shots(curve.smoothed_series, shot_length)
    mask = select_summary(shots, fraction)
    frame_count = len(curve.predicted)
    return {
        "video_id": curve.video_id,
        "target_fraction": fraction,
        "selected_fraction": mask.fraction,
        "shot_length": shot_length,
        "threshold": summary_threshold(shots, mask),
        "shot_scores": [float(s) for s in shots.scores],
        "selected": [bool(s) for s in mask.selected],
        "selected_shots": mask.indices,
        "segments": [list(seg) for seg in mask.segments(frame_count, shot_length)],
    }
