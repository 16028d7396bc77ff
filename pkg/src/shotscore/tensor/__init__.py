from .core import FLOAT32, FLOAT64, Rng, Tensor, as_tensor, zeros
from .io import decode_tensor, encode_tensor, read_tensor, write_tensor
from .kernels import (
    PoolIndex,
    conv2d_backward,
    conv2d_forward,
    dense_backward,
    dense_forward,
    maxpool_backward,
    maxpool_forward,
    relu,
    relu_backward,
)

__all__ = [
    "FLOAT32",
    "FLOAT64",
    "PoolIndex",
    "Rng",
    "Tensor",
    "as_tensor",
    "conv2d_backward",
    "conv2d_forward",
    "decode_tensor",
    "dense_backward",
    "dense_forward",
    "encode_tensor",
    "maxpool_backward",
    "maxpool_forward",
    "read_tensor",
    "relu",
    "relu_backward",
    "write_tensor",
    "zeros",
]
