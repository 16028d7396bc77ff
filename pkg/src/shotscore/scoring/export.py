"""Plot-ready score curves and JSON reports."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt

from shotscore.errors import ManifestError
from shotscore.scoring.series import FrameScoreSeries

CURVE_HEADER = ["frame_index", "predicted", "smoothed", "ground_truth"]


@dataclass(frozen=True, eq=False)
class ScoreCurve:
    video_id: str
    predicted: npt.NDArray[np.float64]
    smoothed: npt.NDArray[np.float64]
    ground_truth: npt.NDArray[np.float64]

    @property
    def predicted_series(self) -> FrameScoreSeries:
        return FrameScoreSeries(self.video_id, self.predicted)

    @property
    def smoothed_series(self) -> FrameScoreSeries:
        return FrameScoreSeries(self.video_id, self.smoothed)


def write_score_curve(curve: ScoreCurve, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CURVE_HEADER)
        for index, row in enumerate(
            zip(curve.predicted, curve.smoothed, curve.ground_truth, strict=True)
        ):
            writer.writerow([index, *(repr(float(value)) for value in row)])
    return path


def read_score_curve(path: str | Path) -> ScoreCurve:
    """Read a curve written by :func:`write_score_curve`; the file stem is the video id."""
    path = Path(path)
    try:
        with path.open(encoding="utf-8", newline="") as handle:
            reader = csv.reader(handle)
            if next(reader, None) != CURVE_HEADER:
                raise ManifestError(f"{path.name}: header must be {','.join(CURVE_HEADER)}")
            rows = [[float(value) for value in row[1:]] for row in reader if row]
    except UnicodeDecodeError as exc:
        raise ManifestError(f"{path.name}: not UTF-8: {exc.reason}") from exc
    except ValueError as exc:
        raise ManifestError(f"{path.name}: {exc}") from exc
    if not rows:
        raise ManifestError(f"{path.name}: no frames")
    columns = np.array(rows, dtype=np.float64).T
    return ScoreCurve(path.stem, columns[0], columns[1], columns[2])


def write_json(payload: Any, path: str | Path) -> Path:
    """Write ``payload`` with sorted keys so reruns are byte-identical."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
