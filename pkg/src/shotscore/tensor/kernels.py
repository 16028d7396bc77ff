"""Numerical kernels for the convolutional, pooling and dense layers.

Spatial tensors are row-major ``H x W x C``; every kernel also accepts a
leading batch axis (``N x H x W x C``, or ``N x M`` for dense layers) and
treats each leading index independently. Backward passes are explicit and
return exact analytic gradients of the matching forward map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from numpy.lib.stride_tricks import sliding_window_view

from shotscore.errors import ShapeError
from shotscore.tensor.core import Tensor


@dataclass(frozen=True)
class PoolIndex:
    """Winner offsets (0..3, row-major within each 2x2 window) of a max-pool."""

    argmax: npt.NDArray[np.uint8]
    input_shape: tuple[int, ...]


def _check_spatial(name: str, tensor: Tensor) -> None:
    if tensor.ndim not in (3, 4):
        raise ShapeError(
            f"{name} must be H x W x C or N x H x W x C, got shape {tensor.shape}"
        )


def _check_filters(filters: Tensor, channels: int) -> int:
    if filters.ndim != 4 or filters.shape[0] != filters.shape[1]:
        raise ShapeError(f"filters must be K x K x Cin x Cout, got {filters.shape}")
    kernel = filters.shape[0]
    if kernel % 2 == 0:
        raise ShapeError(f"kernel size must be odd, got {kernel}")
    if filters.shape[2] != channels:
        raise ShapeError(
            f"input has {channels} channels but filters expect {filters.shape[2]}"
        )
    return kernel


def _padded_windows(x: Tensor, kernel: int) -> Tensor:
    """View of every K x K neighbourhood: ``(..., H, W, C, K, K)``."""
    pad = (kernel - 1) // 2
    widths = [(0, 0)] * (x.ndim - 3) + [(pad, pad), (pad, pad), (0, 0)]
    padded = np.pad(x, widths)
    return sliding_window_view(padded, (kernel, kernel), axis=(-3, -2))


def conv2d_forward(input: Tensor, filters: Tensor, bias: Tensor) -> Tensor:
    """Stride-1 "same" cross-correlation plus per-channel bias.

    Args:
        input: ``H x W x Cin`` (or batched) frame or activation.
        filters: ``K x K x Cin x Cout`` with K odd.
        bias: ``Cout`` vector.

    Returns:
        ``H x W x Cout`` (or batched) output with the input's spatial size.
    """
    _check_spatial("input", input)
    kernel = _check_filters(filters, input.shape[-1])
    if bias.shape != (filters.shape[3],):
        raise ShapeError(f"bias must have shape ({filters.shape[3]},), got {bias.shape}")

    windows = _padded_windows(input, kernel)
    nd = windows.ndim
    out = np.tensordot(windows, filters, axes=([nd - 3, nd - 2, nd - 1], [2, 0, 1]))
    out += bias
    return out


def conv2d_backward(
    input: Tensor, filters: Tensor, grad_out: Tensor
) -> tuple[Tensor, Tensor, Tensor]:
    """Gradients of :func:`conv2d_forward` w.r.t. input, filters and bias."""
    _check_spatial("input", input)
    kernel = _check_filters(filters, input.shape[-1])
    expected = (*input.shape[:-1], filters.shape[3])
    if grad_out.shape != expected:
        raise ShapeError(f"grad_out must have shape {expected}, got {grad_out.shape}")

    windows = _padded_windows(input, kernel)
    lead = list(range(windows.ndim - 3))
    grad_filters = np.tensordot(windows, grad_out, axes=(lead, lead)).transpose(
        1, 2, 0, 3
    )
    grad_bias = grad_out.sum(axis=tuple(range(grad_out.ndim - 1)))

    # Input gradient is a "same" correlation of grad_out with the spatially
    # flipped filters, input/output channels swapped.
    flipped = np.ascontiguousarray(filters[::-1, ::-1].transpose(0, 1, 3, 2))
    grad_input = conv2d_forward(
        grad_out, flipped, np.zeros(filters.shape[2], dtype=filters.dtype)
    )
    return grad_input, np.ascontiguousarray(grad_filters), grad_bias


def maxpool_forward(input: Tensor) -> tuple[Tensor, PoolIndex]:
    """2x2, stride-2 max-pool; also returns the winner map for backward."""
    _check_spatial("input", input)
    *lead, height, width, channels = input.shape
    if height % 2 or width % 2:
        raise ShapeError(f"max-pool needs even spatial dims, got {height}x{width}")

    n = len(lead)
    blocks = input.reshape(*lead, height // 2, 2, width // 2, 2, channels)
    perm = [*range(n), n, n + 2, n + 4, n + 1, n + 3]
    windows = blocks.transpose(perm).reshape(
        *lead, height // 2, width // 2, channels, 4
    )
    argmax = windows.argmax(axis=-1)
    out = np.take_along_axis(windows, argmax[..., None], axis=-1)[..., 0]
    return np.ascontiguousarray(out), PoolIndex(
        argmax=argmax.astype(np.uint8), input_shape=input.shape
    )


def maxpool_backward(index: PoolIndex, grad_out: Tensor) -> Tensor:
    """Route each output gradient to the winning input position."""
    if grad_out.shape != index.argmax.shape:
        raise ShapeError(
            f"grad_out must have shape {index.argmax.shape}, got {grad_out.shape}"
        )
    *lead, height, width, channels = index.input_shape
    n = len(lead)
    routed = np.zeros((*grad_out.shape, 4), dtype=grad_out.dtype)
    np.put_along_axis(
        routed, index.argmax[..., None].astype(np.intp), grad_out[..., None], axis=-1
    )
    routed = routed.reshape(*lead, height // 2, width // 2, channels, 2, 2)
    perm = [*range(n), n, n + 3, n + 1, n + 4, n + 2]
    return np.ascontiguousarray(routed.transpose(perm)).reshape(index.input_shape)


def dense_forward(input: Tensor, weights: Tensor, bias: Tensor) -> Tensor:
    """Affine map ``input @ weights + bias`` over the last axis."""
    if weights.ndim != 2 or input.shape[-1] != weights.shape[0]:
        raise ShapeError(
            f"cannot apply {weights.shape} weights to input of shape {input.shape}"
        )
    if bias.shape != (weights.shape[1],):
        raise ShapeError(f"bias must have shape ({weights.shape[1]},), got {bias.shape}")
    return input @ weights + bias


def dense_backward(
    input: Tensor, weights: Tensor, grad_out: Tensor
) -> tuple[Tensor, Tensor, Tensor]:
    """Gradients of :func:`dense_forward` w.r.t. input, weights and bias."""
    expected = (*input.shape[:-1], weights.shape[1])
    if grad_out.shape != expected:
        raise ShapeError(f"grad_out must have shape {expected}, got {grad_out.shape}")
    flat_in = input.reshape(-1, weights.shape[0])
    flat_grad = grad_out.reshape(-1, weights.shape[1])
    return grad_out @ weights.T, flat_in.T @ flat_grad, flat_grad.sum(axis=0)


def relu(input: Tensor) -> Tensor:
    return np.maximum(input, 0)


def relu_backward(input: Tensor, grad_out: Tensor) -> Tensor:
    """Mask ``grad_out`` where ``input <= 0`` (subgradient 0 at the kink)."""
    if input.shape != grad_out.shape:
        raise ShapeError(f"shape mismatch {input.shape} vs {grad_out.shape}")
    return np.where(input > 0, grad_out, 0).astype(grad_out.dtype, copy=False)
