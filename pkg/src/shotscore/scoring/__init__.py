from .aggregate import aggregate_shots, trim_count, trimmed_rms
from .export import ScoreCurve, read_score_curve, write_json, write_score_curve
from .metrics import error_metrics, f_measure, relative_f
from .series import (
    FMeasure,
    FrameScoreSeries,
    FVariant,
    MetricsReport,
    ShotScoreSeries,
    SummaryMask,
)
from .smoothing import smooth
from .summary import (
    select_summary,
    summary_size,
    summary_sweep,
    summary_threshold,
    uniform_summary,
)

__all__ = [
    "FMeasure",
    "FVariant",
    "FrameScoreSeries",
    "MetricsReport",
    "ScoreCurve",
    "ShotScoreSeries",
    "SummaryMask",
    "aggregate_shots",
    "error_metrics",
    "f_measure",
    "read_score_curve",
    "relative_f",
    "select_summary",
    "smooth",
    "summary_size",
    "summary_sweep",
    "summary_threshold",
    "trim_count",
    "trimmed_rms",
    "uniform_summary",
    "write_json",
    "write_score_curve",
]
