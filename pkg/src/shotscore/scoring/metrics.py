"""Regression errors and summary F-measure."""

import numpy as np

from shotscore.errors import ConfigError, ShapeError
from shotscore.scoring.series import FMeasure, FVariant, ShotScoreSeries, SummaryMask


def error_metrics(pred: ShotScoreSeries, gt: ShotScoreSeries) -> tuple[float, float]:
    """Mean absolute error and the population variance of the absolute errors."""
    if len(pred) != len(gt):
        raise ShapeError(f"{pred.video_id}: {len(pred)} predicted shots vs {len(gt)} ground truth")
    errors = np.abs(pred.scores - gt.scores)
    return float(errors.mean()), float(errors.var())


def f_measure(
    pred: SummaryMask, gt: SummaryMask, variant: FVariant = FVariant.PAPER
) -> FMeasure:
    """Harmonic mean of precision and recall over matched selections."""
    if len(pred) != len(gt):
        raise ShapeError(f"mask lengths differ: {len(pred)} vs {len(gt)}")
    matched = int(np.sum(pred.selected & gt.selected))

    match FVariant(variant):
        case FVariant.STANDARD:
            precision = matched / pred.count if pred.count else 0.0
            recall = matched / gt.count if gt.count else 0.0
        case FVariant.PAPER:
            precision = matched / gt.count if gt.count else 0.0
            recall = matched / len(gt) if len(gt) else 0.0

    total = precision + recall
    f = 2 * precision * recall / total if total > 0 else 0.0
    return FMeasure(precision, recall, f)


def relative_f(f_method: float, f_reference: float) -> float:
    """Normalize an F-measure by the human-annotator reference."""
    if f_reference <= 0:
        raise ConfigError("reference_f", f"must be positive, got {f_reference}")
    return f_method / f_reference
