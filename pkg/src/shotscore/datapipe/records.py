"""Video records, datasets and manifest/annotation ingestion."""

from __future__ import annotations

import csv
import json
import logging
import math
from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, PositiveInt
from pydantic import ValidationError as PydanticValidationError

from shotscore.config import SCORE_SCALE, SHOT_LENGTH
from shotscore.errors import (
    DatasetValidationError,
    ManifestError,
    ScoreRangeError,
    ShotCountError,
    UnknownVideoError,
)

logger = logging.getLogger(__name__)

ANNOTATION_HEADER = ["video_id", "shot_index", "score"]


@dataclass(frozen=True, eq=False)
class VideoRecord:
    """One video: ordered frame files and per-shot ground-truth scores."""

    video_id: str
    genre: str
    frames: tuple[Path, ...]
    shot_scores: npt.NDArray[np.float64]
    shot_length: int = SHOT_LENGTH

    @property
    def frame_count(self) -> int:
        return len(self.frames)

    @property
    def n_shots(self) -> int:
        return len(self.shot_scores)

    def expected_shots(self) -> int:
        return math.ceil(self.frame_count / self.shot_length)

    def frame_target(self, index: int) -> float:
        """Ground-truth score of frame ``index`` (its shot's score)."""
        return float(self.shot_scores[index // self.shot_length])

    def frame_targets(self) -> npt.NDArray[np.float64]:
        """Ground truth expanded to every frame."""
        return np.repeat(self.shot_scores, self.shot_length)[: self.frame_count]

    def validate(self, score_scale: int) -> None:
        expected = self.expected_shots()
        if self.n_shots != expected:
            raise ShotCountError(
                f"{self.video_id}: {self.frame_count} frames need {expected} shot "
                f"scores, got {self.n_shots}"
            )
        bad = np.flatnonzero((self.shot_scores < 0) | (self.shot_scores > score_scale))
        if bad.size:
            shot = int(bad[0])
            raise ScoreRangeError(
                f"{self.video_id}: shot {shot} score {self.shot_scores[shot]} "
                f"outside [0, {score_scale}]"
            )


@dataclass(frozen=True, eq=False)
class VideoDataset:
    videos: tuple[VideoRecord, ...] = ()
    score_scale: int = SCORE_SCALE
    _index: dict[str, VideoRecord] = field(init=False, repr=False)

    def __post_init__(self):
        index: dict[str, VideoRecord] = {}
        for video in self.videos:
            if video.video_id in index:
                raise DatasetValidationError(f"duplicate video_id {video.video_id!r}")
            index[video.video_id] = video
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.videos)

    def __iter__(self) -> Iterator[VideoRecord]:
        return iter(self.videos)

    def __contains__(self, video_id: object) -> bool:
        return video_id in self._index

    @property
    def ids(self) -> list[str]:
        return [v.video_id for v in self.videos]

    def by_id(self, video_id: str) -> VideoRecord:
        try:
            return self._index[video_id]
        except KeyError:
            raise UnknownVideoError(f"unknown video_id {video_id!r}") from None

    def genres(self) -> dict[str, list[VideoRecord]]:
        grouped: dict[str, list[VideoRecord]] = defaultdict(list)
        for video in self.videos:
            grouped[video.genre].append(video)
        return dict(sorted(grouped.items()))

    def subset(self, ids: Iterable[str]) -> VideoDataset:
        """Videos in ``ids``, kept in dataset order."""
        wanted = set(ids)
        for video_id in wanted:
            self.by_id(video_id)
        return VideoDataset(
            tuple(v for v in self.videos if v.video_id in wanted), self.score_scale
        )


class ManifestVideo(BaseModel):
    model_config = ConfigDict(extra="forbid")

    video_id: str = Field(min_length=1)
    genre: str = Field(min_length=1)
    frames: list[str] = Field(min_length=1)


class Manifest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    score_scale: PositiveInt = SCORE_SCALE
    videos: list[ManifestVideo] = Field(default_factory=list)


def _read_annotations(
    path: Path, known: set[str], score_scale: int
) -> dict[str, dict[int, float]]:
    scores: dict[str, dict[int, float]] = defaultdict(dict)
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != ANNOTATION_HEADER:
            raise ManifestError(
                f"{path.name}: header must be {','.join(ANNOTATION_HEADER)}, got {header}"
            )
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ManifestError(f"{path.name}:{line_no}: expected 3 columns")
            video_id, raw_index, raw_score = row
            if video_id not in known:
                raise UnknownVideoError(
                    f"{path.name}:{line_no}: unknown video_id {video_id!r}"
                )
            try:
                shot_index = int(raw_index)
                score = float(raw_score)
            except ValueError as exc:
                raise ManifestError(f"{path.name}:{line_no}: {exc}") from exc
            if not math.isfinite(score) or not 0.0 <= score <= score_scale:
                raise ScoreRangeError(
                    f"{path.name}:{line_no}: score {raw_score} outside [0, {score_scale}]"
                )
            if shot_index < 0 or shot_index in scores[video_id]:
                raise ShotCountError(
                    f"{path.name}:{line_no}: invalid or repeated shot_index {shot_index} "
                    f"for {video_id}"
                )
            scores[video_id][shot_index] = score
    return scores


def ingest(
    manifest_path: str | Path,
    annotations_path: str | Path,
    shot_length: int = SHOT_LENGTH,
) -> VideoDataset:
    """Join the manifest JSON with the annotation CSV on ``video_id``.

    Frame paths are resolved relative to the manifest's directory.

    Raises:
        ManifestError: Malformed manifest or annotation file.
        UnknownVideoError: Annotations name a video absent from the manifest.
        ShotCountError: Shot scores do not match ``ceil(frames / shot_length)``.
        ScoreRangeError: A score lies outside ``[0, score_scale]``.
    """
    manifest_path = Path(manifest_path)
    try:
        manifest = Manifest.model_validate(
            json.loads(manifest_path.read_text(encoding="utf-8"))
        )
    except UnicodeDecodeError as exc:
        raise ManifestError(f"{manifest_path.name}: not UTF-8: {exc.reason}") from exc
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{manifest_path.name}: invalid JSON: {exc}") from exc
    except PydanticValidationError as exc:
        raise ManifestError(f"{manifest_path.name}: {exc}") from exc

    known = {video.video_id for video in manifest.videos}
    annotations_path = Path(annotations_path)
    try:
        scores = _read_annotations(annotations_path, known, manifest.score_scale)
    except UnicodeDecodeError as exc:
        raise ManifestError(f"{annotations_path.name}: not UTF-8: {exc.reason}") from exc

    root = manifest_path.parent
    records = []
    for video in manifest.videos:
        by_index = scores.get(video.video_id, {})
        if sorted(by_index) != list(range(len(by_index))):
            raise ShotCountError(f"{video.video_id}: shot indices are not contiguous from 0")
        record = VideoRecord(
            video_id=video.video_id,
            genre=video.genre,
            frames=tuple(root / frame for frame in video.frames),
            shot_scores=np.array(
                [by_index[i] for i in range(len(by_index))], dtype=np.float64
            ),
            shot_length=shot_length,
        )
        record.validate(manifest.score_scale)
        records.append(record)

    dataset = VideoDataset(tuple(records), manifest.score_scale)
    logger.info(
        "ingested %d videos (%d genres, %d frames)",
        len(dataset),
        len(dataset.genres()),
        sum(v.frame_count for v in dataset),
    )
    return dataset


def write_manifest(dataset: VideoDataset, path: str | Path) -> Path:
    """Write ``dataset`` as manifest JSON with frame paths relative to ``path``."""
    path = Path(path)
    root = path.parent
    payload = {
        "score_scale": dataset.score_scale,
        "videos": [
            {
                "video_id": v.video_id,
                "genre": v.genre,
                "frames": [Path(f).relative_to(root).as_posix() for f in v.frames],
            }
            for v in dataset
        ],
    }
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def write_annotations(dataset: VideoDataset, path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(ANNOTATION_HEADER)
        for video in dataset:
            for shot_index, score in enumerate(video.shot_scores):
                writer.writerow([video.video_id, shot_index, repr(float(score))])
    return path
