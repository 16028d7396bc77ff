"""Layer specifications and the layer objects a network is built from."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import numpy.typing as npt

from shotscore.errors import ShapeError, StateError
from shotscore.tensor import (
    PoolIndex,
    Rng,
    Tensor,
    conv2d_backward,
    conv2d_forward,
    dense_backward,
    dense_forward,
    maxpool_backward,
    maxpool_forward,
    relu,
    relu_backward,
)


class LayerKind(StrEnum):
    CONV = "conv"
    RELU = "relu"
    MAXPOOL = "maxpool"
    FLATTEN = "flatten"
    DENSE = "dense"
    DROPOUT = "dropout"


@dataclass(frozen=True)
class LayerSpec:
    """Declarative description of one layer.

    Attributes:
        kind: Layer type.
        name: Parameter suffix for conv/dense layers (``"1"`` -> ``W1``/``B1``).
        filters: Output channels of a conv layer.
        kernel: Square kernel size of a conv layer.
        units: Output width of a dense layer.
        keep_prob: Keep-probability of a dropout layer.
    """

    kind: LayerKind
    name: str = ""
    filters: int = 0
    kernel: int = 0
    units: int = 0
    keep_prob: float = 1.0


class Layer(ABC):
    """A pipeline stage with an explicit backward pass.

    Per-sample shapes exclude the batch axis; a leading batch axis on the
    input is carried through untouched.
    """

    def __init__(self, spec: LayerSpec):
        self.spec = spec
        self.params: dict[str, Tensor] = {}
        self.grads: dict[str, Tensor] = {}

    @abstractmethod
    def output_shape(self, input_shape: tuple[int, ...]) -> tuple[int, ...]:
        """Per-sample output shape; raises ShapeError if incompatible."""

    @abstractmethod
    def forward(self, x: Tensor, *, train: bool, rng: Rng | None) -> Tensor: ...

    @abstractmethod
    def backward(self, grad_out: Tensor) -> Tensor: ...

    def pattern(self) -> list[npt.NDArray]:
        """Discrete choices made in the last forward (ReLU gates, pool winners)."""
        return []

    def reset(self) -> None:
        """Drop cached activations."""

    def fan_in(self) -> int:
        return 0

    def _require(self, cached):
        if cached is None:
            raise StateError(
                f"{self.spec.kind} layer: backward called without a train-mode forward"
            )
        return cached


class Conv2D(Layer):
    def __init__(self, spec: LayerSpec, in_channels: int, dtype: np.dtype):
        super().__init__(spec)
        self.in_channels = in_channels
        weight_shape = (spec.kernel, spec.kernel, in_channels, spec.filters)
        self.params = {
            f"W{spec.name}": np.zeros(weight_shape, dtype=dtype),
            f"B{spec.name}": np.zeros(spec.filters, dtype=dtype),
        }
        self.grads = {key: np.zeros_like(value) for key, value in self.params.items()}
        self._input: Tensor | None = None

    @property
    def weight(self) -> Tensor:
        return self.params[f"W{self.spec.name}"]

    @property
    def bias(self) -> Tensor:
        return self.params[f"B{self.spec.name}"]

    def fan_in(self) -> int:
        return self.spec.kernel * self.spec.kernel * self.in_channels

    def output_shape(self, input_shape):
        if len(input_shape) != 3 or input_shape[2] != self.in_channels:
            raise ShapeError(
                f"conv{self.spec.name} expects H x W x {self.in_channels}, got {input_shape}"
            )
        return (input_shape[0], input_shape[1], self.spec.filters)

    def forward(self, x, *, train, rng):
        self._input = x if train else None
        return conv2d_forward(x, self.weight, self.bias)

    def backward(self, grad_out):
        x = self._require(self._input)
        grad_in, grad_w, grad_b = conv2d_backward(x, self.weight, grad_out)
        self.grads[f"W{self.spec.name}"] = grad_w
        self.grads[f"B{self.spec.name}"] = grad_b
        return grad_in

    def reset(self):
        self._input = None


class Dense(Layer):
    def __init__(self, spec: LayerSpec, in_units: int, dtype: np.dtype):
        super().__init__(spec)
        self.in_units = in_units
        self.params = {
            f"W{spec.name}": np.zeros((in_units, spec.units), dtype=dtype),
            f"B{spec.name}": np.zeros(spec.units, dtype=dtype),
        }
        self.grads = {key: np.zeros_like(value) for key, value in self.params.items()}
        self._input: Tensor | None = None

    @property
    def weight(self) -> Tensor:
        return self.params[f"W{self.spec.name}"]

    @property
    def bias(self) -> Tensor:
        return self.params[f"B{self.spec.name}"]

    def fan_in(self) -> int:
        return self.in_units

    def output_shape(self, input_shape):
        if input_shape != (self.in_units,):
            raise ShapeError(
                f"dense{self.spec.name} expects ({self.in_units},), got {input_shape}"
            )
        return (self.spec.units,)

    def forward(self, x, *, train, rng):
        self._input = x if train else None
        return dense_forward(x, self.weight, self.bias)

    def backward(self, grad_out):
        x = self._require(self._input)
        grad_in, grad_w, grad_b = dense_backward(x, self.weight, grad_out)
        self.grads[f"W{self.spec.name}"] = grad_w
        self.grads[f"B{self.spec.name}"] = grad_b
        return grad_in

    def reset(self):
        self._input = None


class ReLU(Layer):
    def __init__(self, spec: LayerSpec):
        super().__init__(spec)
        self._input: Tensor | None = None

    def output_shape(self, input_shape):
        return input_shape

    def forward(self, x, *, train, rng):
        self._input = x if train else None
        return relu(x)

    def backward(self, grad_out):
        return relu_backward(self._require(self._input), grad_out)

    def pattern(self):
        return [] if self._input is None else [self._input > 0]

    def reset(self):
        self._input = None


class MaxPool2D(Layer):
    def __init__(self, spec: LayerSpec):
        super().__init__(spec)
        self._index: PoolIndex | None = None

    def output_shape(self, input_shape):
        if len(input_shape) != 3 or input_shape[0] % 2 or input_shape[1] % 2:
            raise ShapeError(f"max-pool needs even H x W x C, got {input_shape}")
        return (input_shape[0] // 2, input_shape[1] // 2, input_shape[2])

    def forward(self, x, *, train, rng):
        out, index = maxpool_forward(x)
        self._index = index if train else None
        return out

    def backward(self, grad_out):
        return maxpool_backward(self._require(self._index), grad_out)

    def pattern(self):
        return [] if self._index is None else [self._index.argmax]

    def reset(self):
        self._index = None


class Flatten(Layer):
    def __init__(self, spec: LayerSpec):
        super().__init__(spec)
        self._input_shape: tuple[int, ...] | None = None

    def output_shape(self, input_shape):
        return (int(np.prod(input_shape)),)

    def forward(self, x, *, train, rng):
        self._input_shape = x.shape if train else None
        lead = x.shape[:-3]
        return x.reshape(*lead, -1)

    def backward(self, grad_out):
        return grad_out.reshape(self._require(self._input_shape))

    def reset(self):
        self._input_shape = None


class Dropout(Layer):
    """Inverted dropout: survivors are scaled by 1/keep_prob at train time.

    Eval mode is the identity. ``frozen_mask`` pins the scaled mask so
    repeated forwards (finite differences) see the same units dropped.
    """

    def __init__(self, spec: LayerSpec):
        super().__init__(spec)
        if not 0.0 < spec.keep_prob <= 1.0:
            raise ShapeError(f"keep_prob must be in (0, 1], got {spec.keep_prob}")
        self.frozen_mask: Tensor | None = None
        self._mask: Tensor | None = None

    def output_shape(self, input_shape):
        return input_shape

    def sample_mask(self, shape: tuple[int, ...], dtype, rng: Rng | None) -> Tensor:
        keep = self.spec.keep_prob
        if keep == 1.0:
            return np.ones(shape, dtype=dtype)
        if rng is None:
            raise StateError("train-mode dropout needs an Rng to sample its mask")
        return (rng.bernoulli(keep, shape) / keep).astype(dtype)

    def forward(self, x, *, train, rng):
        if not train:
            self._mask = None
            return x
        if self.frozen_mask is not None and self.frozen_mask.shape == x.shape:
            mask = self.frozen_mask
        else:
            mask = self.sample_mask(x.shape, x.dtype, rng)
        self._mask = mask
        return x * mask

    def backward(self, grad_out):
        return grad_out * self._require(self._mask)

    def freeze(self) -> None:
        """Pin the mask drawn by the last train-mode forward."""
        self.frozen_mask = self._require(self._mask)

    def unfreeze(self) -> None:
        self.frozen_mask = None

    def reset(self):
        self._mask = None
