"""Tensor value type and seeded random source."""

from __future__ import annotations

import zlib
from typing import TypeAlias

import numpy as np
import numpy.typing as npt

from shotscore.errors import ShapeError

Tensor: TypeAlias = npt.NDArray[np.floating]

FLOAT32 = np.dtype(np.float32)
FLOAT64 = np.dtype(np.float64)
SUPPORTED_DTYPES = (FLOAT32, FLOAT64)
MAX_RANK = 4


def as_tensor(
    value: npt.ArrayLike, dtype: npt.DTypeLike = FLOAT32, *, check_finite: bool = True
) -> Tensor:
    """Convert ``value`` into a validated C-contiguous tensor.

    Raises:
        ShapeError: If the rank is outside 1..4, any dimension is zero,
            or ``check_finite`` is set and the data holds NaN/Inf.
    """
    array = np.asarray(value, dtype=dtype)
    if not 1 <= array.ndim <= MAX_RANK:
        raise ShapeError(f"tensor rank must be 1..{MAX_RANK}, got {array.ndim}")
    if 0 in array.shape:
        raise ShapeError(f"tensor dims must be positive, got {array.shape}")
    if check_finite and not np.all(np.isfinite(array)):
        raise ShapeError("tensor contains non-finite values")
    return np.ascontiguousarray(array)


def zeros(shape: tuple[int, ...], dtype: npt.DTypeLike = FLOAT32) -> Tensor:
    return np.zeros(shape, dtype=dtype)


class Rng:
    """Seeded pseudo-random source.

    Wraps a PCG64 generator. Child streams from :meth:`spawn` depend only on
    the parent seed and the key, so the order in which subsystems are
    created never changes what they draw.
    """

    def __init__(self, seed: int):
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._generator = np.random.Generator(np.random.PCG64(seed))

    def spawn(self, key: str) -> Rng:
        """Return an independent stream derived from this seed and ``key``."""
        child_seed = np.random.SeedSequence(
            [self.seed & 0xFFFFFFFF, self.seed >> 32, zlib.crc32(key.encode("utf-8"))]
        ).generate_state(2, dtype=np.uint32)
        return Rng(int(child_seed[0]) | (int(child_seed[1]) << 32))

    def uniform(
        self,
        low: float,
        high: float,
        shape: tuple[int, ...],
        dtype: npt.DTypeLike = FLOAT32,
    ) -> Tensor:
        # Draw in float64 so the stream is the same for either dtype.
        return self._generator.uniform(low, high, size=shape).astype(dtype)

    def normal(
        self, shape: tuple[int, ...], scale: float = 1.0, dtype: npt.DTypeLike = FLOAT32
    ) -> Tensor:
        return (self._generator.standard_normal(size=shape) * scale).astype(dtype)

    def integers(self, low: int, high: int, size: int | None = None):
        """Integers in ``[low, high)``."""
        if size is None:
            return int(self._generator.integers(low, high))
        return self._generator.integers(low, high, size=size)

    def permutation(self, n: int) -> npt.NDArray[np.int64]:
        return self._generator.permutation(n)

    def bernoulli(self, p: float, shape: tuple[int, ...]) -> npt.NDArray[np.bool_]:
        """Boolean mask whose entries are True with probability ``p``."""
        return self._generator.random(size=shape) < p

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed})"
