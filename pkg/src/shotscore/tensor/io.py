"""FTNS binary tensor format.

Layout (little-endian): magic ``FTNS``, version u8 = 1, dtype u8
(1 = float32, 2 = float64), rank u8 (1..4), reserved u8 = 0, rank x u32
dims, then the row-major payload.
"""

from __future__ import annotations

import math
import struct
from pathlib import Path

import numpy as np

from shotscore.errors import (
    BadMagicError,
    TensorFormatError,
    TruncatedFileError,
    UnsupportedDtypeError,
    UnsupportedVersionError,
)
from shotscore.tensor.core import MAX_RANK, Tensor

MAGIC = b"FTNS"
VERSION = 1
DTYPE_CODES = {np.dtype("<f4"): 1, np.dtype("<f8"): 2}
CODE_DTYPES = {code: dtype for dtype, code in DTYPE_CODES.items()}
_HEADER = struct.Struct("<4sBBBB")


def encode_tensor(tensor: Tensor) -> bytes:
    """Serialize a tensor into an FTNS blob."""
    array = np.asarray(tensor)
    dtype = array.dtype.newbyteorder("<")
    if dtype not in DTYPE_CODES:
        raise UnsupportedDtypeError(f"cannot serialize dtype {array.dtype}")
    if not 1 <= array.ndim <= MAX_RANK or 0 in array.shape:
        raise TensorFormatError(f"cannot serialize tensor of shape {array.shape}")
    header = _HEADER.pack(MAGIC, VERSION, DTYPE_CODES[dtype], array.ndim, 0)
    dims = struct.pack(f"<{array.ndim}I", *array.shape)
    payload = np.ascontiguousarray(array, dtype=dtype).tobytes(order="C")
    return header + dims + payload


def decode_tensor(buffer: bytes, offset: int = 0) -> tuple[Tensor, int]:
    """Decode one FTNS blob starting at ``offset``.

    Returns:
        The tensor and the offset just past its payload.
    """
    if len(buffer) - offset < _HEADER.size:
        raise TruncatedFileError("file ends inside the tensor header")
    magic, version, dtype_code, rank, _reserved = _HEADER.unpack_from(buffer, offset)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported tensor format version {version}")
    if dtype_code not in CODE_DTYPES:
        raise UnsupportedDtypeError(f"unsupported tensor dtype code {dtype_code}")
    if not 1 <= rank <= MAX_RANK:
        raise TensorFormatError(f"tensor rank must be 1..{MAX_RANK}, got {rank}")
    offset += _HEADER.size

    dims_size = 4 * rank
    if len(buffer) - offset < dims_size:
        raise TruncatedFileError("file ends inside the tensor dims")
    dims = struct.unpack_from(f"<{rank}I", buffer, offset)
    if 0 in dims:
        raise TensorFormatError(f"tensor dims must be positive, got {dims}")
    offset += dims_size

    dtype = CODE_DTYPES[dtype_code]
    count = math.prod(dims)
    nbytes = count * dtype.itemsize
    if len(buffer) - offset < nbytes:
        raise TruncatedFileError(
            f"payload needs {nbytes} bytes, only {len(buffer) - offset} present"
        )
    data = np.frombuffer(buffer, dtype=dtype, count=count, offset=offset)
    tensor = data.reshape(dims).astype(dtype.newbyteorder("="), copy=True)
    return tensor, offset + nbytes


def write_tensor(tensor: Tensor, path: str | Path) -> None:
    Path(path).write_bytes(encode_tensor(tensor))


def read_tensor(path: str | Path) -> Tensor:
    """Read a single-tensor FTNS file."""
    buffer = Path(path).read_bytes()
    tensor, end = decode_tensor(buffer)
    if end != len(buffer):
        raise TensorFormatError(f"{len(buffer) - end} trailing bytes after tensor")
    return tensor
