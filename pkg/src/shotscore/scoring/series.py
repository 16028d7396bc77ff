"""Score series, summary masks and metric reports."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np
import numpy.typing as npt

from shotscore.config import SHOT_LENGTH
from shotscore.errors import ShapeError


class FVariant(StrEnum):
    """Precision/recall definitions for the F-measure.

    ``PAPER`` takes precision over the ground-truth selection and recall over
    all shots, so a perfect summary scores below 1. ``STANDARD`` is the usual
    precision over the prediction and recall over the ground truth.
    """

    PAPER = "paper"
    STANDARD = "standard"


def _as_scores(values: npt.ArrayLike, what: str) -> npt.NDArray[np.float64]:
    scores = np.asarray(values, dtype=np.float64)
    if scores.ndim != 1 or scores.size == 0:
        raise ShapeError(f"{what} must be a non-empty vector, got shape {scores.shape}")
    if not np.all(np.isfinite(scores)):
        raise ShapeError(f"{what} contains non-finite values")
    return scores


@dataclass(frozen=True, eq=False)
class FrameScoreSeries:
    video_id: str
    scores: npt.NDArray[np.float64]

    def __post_init__(self):
        object.__setattr__(self, "scores", _as_scores(self.scores, "frame scores"))

    def __len__(self) -> int:
        return len(self.scores)


@dataclass(frozen=True, eq=False)
class ShotScoreSeries:
    video_id: str
    scores: npt.NDArray[np.float64]
    shot_length: int = SHOT_LENGTH

    def __post_init__(self):
        object.__setattr__(self, "scores", _as_scores(self.scores, "shot scores"))
        if self.shot_length < 1:
            raise ShapeError(f"shot_length must be >= 1, got {self.shot_length}")

    def __len__(self) -> int:
        return len(self.scores)


@dataclass(frozen=True, eq=False)
class SummaryMask:
    """Per-shot selection flags."""

    selected: npt.NDArray[np.bool_]

    def __post_init__(self):
        object.__setattr__(self, "selected", np.asarray(self.selected, dtype=bool))

    def __len__(self) -> int:
        return len(self.selected)

    @property
    def count(self) -> int:
        return int(self.selected.sum())

    @property
    def fraction(self) -> float:
        return self.count / len(self) if len(self) else 0.0

    @property
    def indices(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.selected)]

    def to_frame_mask(self, frame_count: int, shot_length: int = SHOT_LENGTH) -> npt.NDArray[np.bool_]:
        """Expand shot flags to one flag per frame."""
        return np.repeat(self.selected, shot_length)[:frame_count]

    def segments(self, frame_count: int, shot_length: int = SHOT_LENGTH) -> list[tuple[int, int]]:
        """Selected frame ranges as merged ``[start, end)`` pairs."""
        ranges: list[tuple[int, int]] = []
        for shot in self.indices:
            start = shot * shot_length
            end = min(start + shot_length, frame_count)
            if ranges and ranges[-1][1] == start:
                ranges[-1] = (ranges[-1][0], end)
            else:
                ranges.append((start, end))
        return ranges


@dataclass(frozen=True)
class FMeasure:
    precision: float
    recall: float
    f: float


@dataclass
class MetricsReport:
    """Per-video (or dataset-mean) evaluation results."""

    video_id: str
    mae: float
    aev: float
    f_measure: float
    relative_f: float | None
    precision: float
    recall: float
    variant: FVariant
    summary_fraction: float
    uniform_f: float | None = None
    sweep: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["variant"] = str(self.variant)
        return data

    @classmethod
    def mean(cls, reports: list[MetricsReport], video_id: str = "mean") -> MetricsReport:
        """Average every numeric field over ``reports``."""
        if not reports:
            raise ShapeError("cannot average an empty list of reports")

        def avg(attr: str) -> float:
            return math.fsum(getattr(r, attr) for r in reports) / len(reports)

        def avg_optional(attr: str) -> float | None:
            values = [getattr(r, attr) for r in reports]
            if any(v is None for v in values):
                return None
            return math.fsum(values) / len(values)

        first = reports[0]
        return cls(
            video_id=video_id,
            mae=avg("mae"),
            aev=avg("aev"),
            f_measure=avg("f_measure"),
            relative_f=avg_optional("relative_f"),
            precision=avg("precision"),
            recall=avg("recall"),
            variant=first.variant,
            summary_fraction=first.summary_fraction,
            uniform_f=avg_optional("uniform_f"),
            sweep={
                key: math.fsum(r.sweep.get(key, 0.0) for r in reports) / len(reports)
                for key in first.sweep
            },
        )
