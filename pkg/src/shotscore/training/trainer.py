"""Mini-batch training loop."""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

from shotscore.config import (
    BATCH_SIZE,
    CHECKPOINT_DIR,
    CHECKPOINT_EVERY,
    CHECKPOINT_FILE,
    EPOCHS,
    FRAME_STRIDE,
    LOG_EVERY,
)
from shotscore.datapipe import FrameLoader, VideoDataset, augment, sample_training_frames
from shotscore.errors import ConfigError, DatasetValidationError, DivergenceError
from shotscore.network import Network, save_checkpoint
from shotscore.tensor import Rng
from shotscore.training.adam import AdamConfig, AdamState, adam_step
from shotscore.training.loss import l2_loss

logger = logging.getLogger(__name__)

LOG_HEADER = ["iteration", "epoch", "batch_loss"]


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = EPOCHS
    batch_size: int = BATCH_SIZE
    adam: AdamConfig = field(default_factory=AdamConfig)
    frame_stride: int = FRAME_STRIDE
    augment: bool = True
    checkpoint_every: int = CHECKPOINT_EVERY
    max_iterations: int = 0
    log_every: int = LOG_EVERY

    def __post_init__(self):
        if self.batch_size < 1:
            raise ConfigError("batch_size", f"must be >= 1, got {self.batch_size}")
        if self.epochs < 0:
            raise ConfigError("epochs", f"must be >= 0, got {self.epochs}")
        if self.frame_stride < 1:
            raise ConfigError("frame_stride", f"must be >= 1, got {self.frame_stride}")
        for name in ("checkpoint_every", "max_iterations", "log_every"):
            if getattr(self, name) < 0:
                raise ConfigError(name, f"must be >= 0, got {getattr(self, name)}")


class Sample(NamedTuple):
    video_id: str
    frame_index: int
    frame_path: Path
    target: float


@dataclass(frozen=True)
class LogEntry:
    iteration: int
    epoch: int
    batch_loss: float


@dataclass
class TrainRun:
    seed: int
    epochs: int
    checkpoint_every: int
    log: list[LogEntry] = field(default_factory=list)
    checkpoints: list[Path] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.log)

    def write_log(self, path: str | Path) -> Path:
        """CSV ``iteration,epoch,batch_loss``, one row per iteration."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(LOG_HEADER)
            for entry in self.log:
                writer.writerow([entry.iteration, entry.epoch, repr(entry.batch_loss)])
        return path


def training_samples(dataset: VideoDataset, stride: int = FRAME_STRIDE) -> list[Sample]:
    return [
        Sample(video.video_id, index, video.frames[index], target)
        for video in dataset
        for index, target in sample_training_frames(video, stride)
    ]


def train(
    net: Network,
    dataset: VideoDataset,
    loader: FrameLoader,
    config: TrainConfig,
    rng: Rng,
    out_dir: str | Path | None = None,
) -> TrainRun:
    """Fit ``net`` to the sampled frames of ``dataset`` with Adam.

    Each epoch reshuffles the samples; each iteration augments its batch,
    runs forward and backward, and takes one joint Adam step on the summed
    loss. With ``out_dir`` set, checkpoints are written every
    ``checkpoint_every`` iterations and once at the end.

    Raises:
        DatasetValidationError: If the dataset yields no training frames.
        DivergenceError: If a batch loss becomes non-finite.
    """
    samples = training_samples(dataset, config.frame_stride)
    if not samples:
        raise DatasetValidationError("training set is empty")

    run = TrainRun(seed=rng.seed, epochs=config.epochs, checkpoint_every=config.checkpoint_every)
    state = AdamState.zeros_like(net.parameters(), config.adam)
    shuffle_rng = rng.spawn("shuffle")
    augment_rng = rng.spawn("augment")
    dropout_rng = rng.spawn("dropout")
    out = Path(out_dir) if out_dir is not None else None
    net.train()

    logger.info(
        "training on %d frames from %d videos: %d epochs, batch %d",
        len(samples),
        len(dataset),
        config.epochs,
        config.batch_size,
    )

    iteration = 0
    done = False
    for epoch in range(config.epochs):
        order = shuffle_rng.permutation(len(samples))
        for start in range(0, len(order), config.batch_size):
            batch = [samples[i] for i in order[start : start + config.batch_size]]
            frames = loader.load_many([s.frame_path for s in batch])
            if config.augment:
                codes = augment_rng.integers(1, 9, size=len(batch))
                frames = np.stack(
                    [augment(frame, int(code)) for frame, code in zip(frames, codes, strict=True)]
                )
            targets = np.array([s.target for s in batch], dtype=net.dtype)

            preds = net.forward(frames, rng=dropout_rng)
            loss, grad = l2_loss(preds, targets)
            batch_loss = loss / len(batch)
            iteration += 1
            if not math.isfinite(batch_loss):
                raise DivergenceError(
                    f"non-finite batch loss at iteration {iteration} (epoch {epoch}); "
                    "lower alpha or check the input frames"
                )
            net.backward(grad)
            adam_step(net.parameters(), net.gradients(), state)
            run.log.append(LogEntry(iteration, epoch, batch_loss))

            if config.log_every and iteration % config.log_every == 0:
                logger.info("iteration %d epoch %d loss %.6f", iteration, epoch, batch_loss)
            if out is not None and config.checkpoint_every and iteration % config.checkpoint_every == 0:
                path = save_checkpoint(net, out / CHECKPOINT_DIR / f"iter_{iteration:06d}.fckp")
                run.checkpoints.append(path)
                logger.info("checkpoint %s", path)
            if config.max_iterations and iteration >= config.max_iterations:
                done = True
                break
        if done:
            break

    if out is not None:
        run.checkpoints.append(save_checkpoint(net, out / CHECKPOINT_FILE))
    return run
