"""The six-stage shot-importance network.

Stage layout: conv+relu, conv+relu+pool, conv+relu+pool, flatten,
dense+relu+dropout, dense regressor. Convolutions use stride 1 and "same"
zero padding, so the only spatial reductions are the two 2x max-pools.
"""

from __future__ import annotations

import copy
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import numpy.typing as npt

from shotscore.config import (
    CONV_FILTERS,
    HIDDEN_UNITS,
    INPUT_CHANNELS,
    KEEP_PROB,
    KERNEL_SIZE,
    OUTPUT_UNITS,
    SCORE_SCALE,
)
from shotscore.errors import ConfigError, ShapeError, StateError
from shotscore.network.layers import (
    Conv2D,
    Dense,
    Dropout,
    Flatten,
    Layer,
    LayerKind,
    LayerSpec,
    MaxPool2D,
    ReLU,
)
from shotscore.tensor import FLOAT32, Rng, Tensor

logger = logging.getLogger(__name__)


class Mode(StrEnum):
    TRAIN = "train"
    EVAL = "eval"


@dataclass(frozen=True)
class NetworkConfig:
    """Architecture hyperparameters."""

    conv_filters: tuple[int, int, int] = CONV_FILTERS
    kernel_size: int = KERNEL_SIZE
    hidden_units: int = HIDDEN_UNITS
    keep_prob: float = KEEP_PROB
    score_scale: int = SCORE_SCALE

    def __post_init__(self):
        if self.score_scale < 1:
            raise ConfigError("score_scale", f"must be >= 1, got {self.score_scale}")
        if self.kernel_size < 1 or self.kernel_size % 2 == 0:
            raise ConfigError("kernel_size", f"must be odd, got {self.kernel_size}")
        if not 0.0 < self.keep_prob <= 1.0:
            raise ConfigError("keep_prob", f"must be in (0, 1], got {self.keep_prob}")


def scoring_layer_specs(config: NetworkConfig) -> list[LayerSpec]:
    f1, f2, f3 = config.conv_filters
    k = config.kernel_size
    return [
        LayerSpec(LayerKind.CONV, name="1", filters=f1, kernel=k),
        LayerSpec(LayerKind.RELU),
        LayerSpec(LayerKind.CONV, name="2", filters=f2, kernel=k),
        LayerSpec(LayerKind.RELU),
        LayerSpec(LayerKind.MAXPOOL),
        LayerSpec(LayerKind.CONV, name="3", filters=f3, kernel=k),
        LayerSpec(LayerKind.RELU),
        LayerSpec(LayerKind.MAXPOOL),
        LayerSpec(LayerKind.FLATTEN),
        LayerSpec(LayerKind.DENSE, name="4", units=config.hidden_units),
        LayerSpec(LayerKind.RELU),
        LayerSpec(LayerKind.DROPOUT, keep_prob=config.keep_prob),
        LayerSpec(LayerKind.DENSE, name="R", units=OUTPUT_UNITS),
    ]


class Network:
    """Ordered layer pipeline with forward inference and a full backward pass.

    Usage:
        net = glorot_init(build_network(32, 3), Rng(0))
        y = net.eval().forward(frame)
    """

    def __init__(
        self,
        specs: Sequence[LayerSpec],
        input_shape: tuple[int, ...],
        config: NetworkConfig | None = None,
        dtype: npt.DTypeLike = FLOAT32,
    ):
        self.specs = list(specs)
        self.input_shape = tuple(input_shape)
        self.config = config or NetworkConfig()
        self.dtype = np.dtype(dtype)
        self.mode = Mode.TRAIN
        self.layers: list[Layer] = []
        self._output_shape: tuple[int, ...] = ()
        self._build()

    def _build(self) -> None:
        shape = self.input_shape
        for spec in self.specs:
            layer: Layer
            match spec.kind:
                case LayerKind.CONV:
                    if len(shape) != 3:
                        raise ShapeError(f"conv{spec.name} needs a spatial input, got {shape}")
                    layer = Conv2D(spec, shape[2], self.dtype)
                case LayerKind.DENSE:
                    if len(shape) != 1:
                        raise ShapeError(f"dense{spec.name} needs a flat input, got {shape}")
                    layer = Dense(spec, shape[0], self.dtype)
                case LayerKind.RELU:
                    layer = ReLU(spec)
                case LayerKind.MAXPOOL:
                    layer = MaxPool2D(spec)
                case LayerKind.FLATTEN:
                    if len(shape) != 3:
                        raise ShapeError(f"flatten needs a spatial input, got {shape}")
                    layer = Flatten(spec)
                case LayerKind.DROPOUT:
                    layer = Dropout(spec)
            shape = layer.output_shape(shape)
            self.layers.append(layer)
        if shape != (OUTPUT_UNITS,):
            raise ShapeError(f"network must end in a single output unit, got {shape}")
        self._output_shape = shape

        names = [name for layer in self.layers for name in layer.params]
        if len(names) != len(set(names)):
            raise ShapeError(f"duplicate parameter names in {names}")

    # -- parameters -------------------------------------------------------

    def parameters(self) -> dict[str, Tensor]:
        """Parameter tensors in layer order (W1, B1, ..., WR, BR)."""
        return {name: t for layer in self.layers for name, t in layer.params.items()}

    def gradients(self) -> dict[str, Tensor]:
        return {name: t for layer in self.layers for name, t in layer.grads.items()}

    def set_parameters(self, values: dict[str, Tensor]) -> None:
        """Replace parameter values in place; names and shapes must match."""
        for layer in self.layers:
            for name, current in layer.params.items():
                value = np.asarray(values[name])
                if value.shape != current.shape:
                    raise ShapeError(f"{name}: expected {current.shape}, got {value.shape}")
                layer.params[name] = value.astype(self.dtype, copy=True)

    def zero_grad(self) -> None:
        for layer in self.layers:
            for name, grad in layer.grads.items():
                layer.grads[name] = np.zeros_like(grad)

    def parameter_count(self) -> int:
        return sum(t.size for t in self.parameters().values())

    def flatten_width(self) -> int:
        for layer in self.layers:
            if isinstance(layer, Dense):
                return layer.in_units
        raise ShapeError("network has no dense layer")

    # -- mode and copies --------------------------------------------------

    def train(self) -> Network:
        self.mode = Mode.TRAIN
        return self

    def eval(self) -> Network:
        self.mode = Mode.EVAL
        self.reset()
        return self

    def reset(self) -> None:
        for layer in self.layers:
            layer.reset()

    def clone(self) -> Network:
        other = copy.deepcopy(self)
        other.reset()
        return other

    def astype(self, dtype: npt.DTypeLike) -> Network:
        """Copy of this network with parameters and gradients cast to ``dtype``."""
        other = self.clone()
        other.dtype = np.dtype(dtype)
        for layer in other.layers:
            layer.params = {k: v.astype(dtype) for k, v in layer.params.items()}
            layer.grads = {k: v.astype(dtype) for k, v in layer.grads.items()}
        return other

    def dropout_layers(self) -> list[Dropout]:
        return [layer for layer in self.layers if isinstance(layer, Dropout)]

    # -- passes -----------------------------------------------------------

    def _check_input(self, frames: Tensor) -> bool:
        """Validate the input shape; return True when a batch axis is present."""
        if frames.shape == self.input_shape:
            return False
        if frames.ndim == len(self.input_shape) + 1 and frames.shape[1:] == self.input_shape:
            return True
        raise ShapeError(
            f"network expects {self.input_shape} or N x {self.input_shape}, got {frames.shape}"
        )

    def forward(self, frames: Tensor, rng: Rng | None = None) -> float | Tensor:
        """Predict the importance score of one frame or a batch of frames.

        In train mode activations are cached for :meth:`backward` and dropout
        masks are drawn from ``rng``; the output is unclamped. In eval mode
        the pass is deterministic and the prediction is clamped to [0, L].

        Returns:
            A float for a single frame, an ``N`` vector for a batch.
        """
        batched = self._check_input(frames)
        train = self.mode is Mode.TRAIN
        x = np.asarray(frames, dtype=self.dtype)
        for layer in self.layers:
            x = layer.forward(x, train=train, rng=rng)
        y = x[..., 0]
        if not train:
            y = np.clip(y, 0.0, float(self.config.score_scale))
        return y if batched else float(y)

    def backward(self, d_loss_d_pred: float | Tensor) -> Network:
        """Populate every gradient slot from dLoss/dPrediction.

        Raises:
            StateError: If no train-mode forward preceded this call.
        """
        if self.mode is not Mode.TRAIN:
            raise StateError("backward requires a train-mode forward pass")
        grad = np.asarray(d_loss_d_pred, dtype=self.dtype)[..., None]
        for layer in reversed(self.layers):
            grad = layer.backward(grad)
        return self

    def activation_pattern(self) -> list[npt.NDArray]:
        """ReLU gates and pool winners from the last train-mode forward."""
        return [p for layer in self.layers for p in layer.pattern()]


def build_network(
    input_side: int,
    channels: int = INPUT_CHANNELS,
    config: NetworkConfig | None = None,
    dtype: npt.DTypeLike = FLOAT32,
) -> Network:
    """Build the six-stage network for square ``input_side`` frames.

    Raises:
        ConfigError: If ``input_side`` is not a positive multiple of 4.
    """
    if input_side <= 0 or input_side % 4:
        raise ConfigError(
            "input_side", f"must be a positive multiple of 4, got {input_side}"
        )
    if channels <= 0:
        raise ConfigError("channels", f"must be positive, got {channels}")
    config = config or NetworkConfig()
    net = Network(
        scoring_layer_specs(config), (input_side, input_side, channels), config, dtype
    )
    logger.debug(
        "built network side=%d flatten=%d params=%d",
        input_side,
        net.flatten_width(),
        net.parameter_count(),
    )
    return net


def _largest_at_most(bound: float, dtype: np.dtype) -> np.floating:
    value = dtype.type(bound)
    if float(value) > bound:
        value = np.nextafter(value, dtype.type(0))
    return value


def glorot_init(net: Network, rng: Rng) -> Network:
    """Draw weights from U[-1/sqrt(M), 1/sqrt(M)] with M the fan-in; zero biases."""
    for layer in net.layers:
        fan_in = layer.fan_in()
        if not fan_in:
            continue
        bound = 1.0 / np.sqrt(fan_in)
        limit = _largest_at_most(bound, net.dtype)
        for name, tensor in layer.params.items():
            if name.startswith("W"):
                drawn = rng.uniform(-bound, bound, tensor.shape, dtype=net.dtype)
                layer.params[name] = np.clip(drawn, -limit, limit)
            else:
                layer.params[name] = np.zeros_like(tensor)
    net.zero_grad()
    return net
