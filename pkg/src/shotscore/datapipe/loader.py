"""Cached, threaded frame loading."""

from __future__ import annotations

import os
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from pathlib import Path

import numpy as np
import numpy.typing as npt
from dotenv import load_dotenv

from shotscore.config import CROP_SIDE, FRAME_CACHE_BYTES, INPUT_CHANNELS, RESIZE_SIDE, THREADS_ENV
from shotscore.datapipe.transforms import preprocess
from shotscore.errors import ConfigError, ShapeError
from shotscore.tensor import FLOAT32, Tensor, read_tensor

DEFAULT_WORKERS = 4


def worker_count() -> int:
    """Worker cap from ``SHOTSCORE_THREADS`` (``.env`` honoured)."""
    load_dotenv()
    raw = os.getenv(THREADS_ENV)
    if raw is None or not raw.strip():
        return min(DEFAULT_WORKERS, os.cpu_count() or 1)
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(THREADS_ENV, f"must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(THREADS_ENV, f"must be >= 1, got {value}")
    return value


class FrameLoader:
    """Read FTNS frames, preprocess them and keep recent results cached.

    ``load_many`` fans reads out over a thread pool but always returns
    frames in request order, so batches are independent of scheduling.
    Without an explicit ``cache_size`` the cache holds as many frames as
    fit in ``cache_bytes``.
    """

    def __init__(
        self,
        resize_side: int = RESIZE_SIDE,
        crop_side: int = CROP_SIDE,
        dtype: npt.DTypeLike = FLOAT32,
        cache_size: int | None = None,
        workers: int | None = None,
        cache_bytes: int = FRAME_CACHE_BYTES,
    ):
        self.resize_side = resize_side
        self.crop_side = crop_side
        self.dtype = np.dtype(dtype)
        self.workers = workers or worker_count()
        if cache_size is None:
            frame_bytes = crop_side * crop_side * INPUT_CHANNELS * self.dtype.itemsize
            cache_size = max(1, cache_bytes // frame_bytes)
        self.cache_size = cache_size
        self._cached = lru_cache(maxsize=cache_size)(self._load_uncached)

    def _load_uncached(self, path: Path) -> Tensor:
        frame = read_tensor(path)
        if frame.ndim != 3:
            raise ShapeError(f"{path}: frame must be H x W x C, got {frame.shape}")
        out = preprocess(frame.astype(self.dtype), self.resize_side, self.crop_side)
        out.setflags(write=False)
        return out

    def load(self, path: str | Path) -> Tensor:
        return self._cached(Path(path))

    def load_many(self, paths: Sequence[str | Path]) -> Tensor:
        """Stack preprocessed frames into ``N x crop x crop x C``."""
        if self.workers == 1 or len(paths) <= 1:
            frames = [self.load(p) for p in paths]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                frames = list(pool.map(self.load, paths))
        return np.stack(frames)
