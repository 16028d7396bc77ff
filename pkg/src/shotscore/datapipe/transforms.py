"""Frame preprocessing and dihedral augmentation."""

from __future__ import annotations

from functools import cache

import numpy as np

from shotscore.config import AUGMENT_CODES, CROP_SIDE, RESIZE_SIDE
from shotscore.errors import ConfigError, ShapeError
from shotscore.tensor import Tensor

TRANSPOSE = 1
HFLIP = 2
VFLIP = 4


def _axis_weights(out_size: int, in_size: int):
    # Half-pixel centres: an equal-size resize maps every pixel onto itself.
    src = (np.arange(out_size) + 0.5) * (in_size / out_size) - 0.5
    src = np.clip(src, 0, in_size - 1)
    lo = np.floor(src).astype(np.intp)
    hi = np.minimum(lo + 1, in_size - 1)
    return lo, hi, (src - lo)


def bilinear_resize(frame: Tensor, height: int, width: int) -> Tensor:
    """Resize an ``H x W x C`` frame with separable bilinear interpolation."""
    if frame.ndim != 3:
        raise ShapeError(f"frame must be H x W x C, got {frame.shape}")
    dtype = frame.dtype
    lo, hi, w = _axis_weights(height, frame.shape[0])
    top, bottom = frame[lo], frame[hi]
    rows = top + (bottom - top) * w[:, None, None].astype(dtype)
    lo, hi, w = _axis_weights(width, frame.shape[1])
    left, right = rows[:, lo], rows[:, hi]
    return np.ascontiguousarray(left + (right - left) * w[None, :, None].astype(dtype))


def center_crop(frame: Tensor, side: int) -> Tensor:
    top = (frame.shape[0] - side) // 2
    left = (frame.shape[1] - side) // 2
    return np.ascontiguousarray(frame[top : top + side, left : left + side])


def preprocess(
    frame: Tensor, resize_side: int = RESIZE_SIDE, crop_side: int = CROP_SIDE
) -> Tensor:
    """Resize to ``resize_side`` squared, then crop the central ``crop_side`` square."""
    if crop_side > resize_side:
        raise ConfigError(
            "crop_side", f"{crop_side} exceeds resize_side {resize_side}"
        )
    if crop_side < 1:
        raise ConfigError("crop_side", f"must be positive, got {crop_side}")
    if frame.shape[:2] != (resize_side, resize_side):
        frame = bilinear_resize(frame, resize_side, resize_side)
    return center_crop(frame, crop_side)


def augment_ops(code: int) -> tuple[bool, bool, bool]:
    """(transpose, hflip, vflip) flags for an augmentation code in 1..8."""
    if not 1 <= code <= AUGMENT_CODES:
        raise ValueError(f"augmentation code must be in 1..{AUGMENT_CODES}, got {code}")
    bits = code - 1
    return bool(bits & TRANSPOSE), bool(bits & HFLIP), bool(bits & VFLIP)


def augment(frame: Tensor, code: int) -> Tensor:
    """Apply the code's subset of transpose -> hflip -> vflip; code 1 is identity."""
    transpose, hflip, vflip = augment_ops(code)
    out = frame
    if transpose:
        if frame.shape[0] != frame.shape[1]:
            raise ShapeError(f"transpose needs a square frame, got {frame.shape}")
        out = out.swapaxes(0, 1)
    if hflip:
        out = out[:, ::-1]
    if vflip:
        out = out[::-1]
    return np.ascontiguousarray(out)


@cache
def inverse_code(code: int) -> int:
    """The code whose augmentation undoes ``code``."""
    marker = np.arange(9, dtype=np.float32).reshape(3, 3, 1)
    moved = augment(marker, code)
    for candidate in range(1, AUGMENT_CODES + 1):
        if np.array_equal(augment(moved, candidate), marker):
            return candidate
    raise AssertionError(f"no inverse for augmentation code {code}")


def expand_augmented(frame: Tensor) -> list[Tensor]:
    """All eight dihedral variants of ``frame``, in code order."""
    return [augment(frame, code) for code in range(1, AUGMENT_CODES + 1)]
