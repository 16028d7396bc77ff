"""FCKP checkpoint files.

Layout (little-endian): magic ``FCKP``, version u8 = 1, u16 tensor count,
then per tensor a u16 name length, the UTF-8 name and an embedded FTNS blob.
"""

from __future__ import annotations

import logging
import struct
from pathlib import Path

from shotscore.errors import (
    BadMagicError,
    CheckpointError,
    TensorFormatError,
    TruncatedFileError,
    UnsupportedVersionError,
)
from shotscore.network.model import Network
from shotscore.tensor import Tensor, decode_tensor, encode_tensor

logger = logging.getLogger(__name__)

MAGIC = b"FCKP"
VERSION = 1
_HEADER = struct.Struct("<4sBH")
_NAME_LEN = struct.Struct("<H")


def encode_checkpoint(tensors: dict[str, Tensor]) -> bytes:
    parts = [_HEADER.pack(MAGIC, VERSION, len(tensors))]
    for name, tensor in tensors.items():
        raw_name = name.encode("utf-8")
        parts.append(_NAME_LEN.pack(len(raw_name)))
        parts.append(raw_name)
        parts.append(encode_tensor(tensor))
    return b"".join(parts)


def decode_checkpoint(buffer: bytes) -> dict[str, Tensor]:
    if len(buffer) < _HEADER.size:
        raise TruncatedFileError("file ends inside the checkpoint header")
    magic, version, count = _HEADER.unpack_from(buffer, 0)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported checkpoint version {version}")

    offset = _HEADER.size
    tensors: dict[str, Tensor] = {}
    for _ in range(count):
        if len(buffer) - offset < _NAME_LEN.size:
            raise TruncatedFileError("file ends inside a tensor name")
        (name_len,) = _NAME_LEN.unpack_from(buffer, offset)
        offset += _NAME_LEN.size
        if len(buffer) - offset < name_len:
            raise TruncatedFileError("file ends inside a tensor name")
        try:
            name = buffer[offset : offset + name_len].decode("utf-8")
        except UnicodeDecodeError as exc:
            raise TensorFormatError(f"tensor name is not UTF-8: {exc.reason}") from exc
        offset += name_len
        if name in tensors:
            raise TensorFormatError(f"duplicate tensor {name!r} in checkpoint")
        tensors[name], offset = decode_tensor(buffer, offset)
    if offset != len(buffer):
        raise TensorFormatError(f"{len(buffer) - offset} trailing bytes after checkpoint")
    return tensors


def save_checkpoint(net: Network, path: str | Path) -> Path:
    """Write every parameter of ``net`` to ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_checkpoint(net.parameters()))
    logger.debug("wrote checkpoint %s", path)
    return path


def read_checkpoint(path: str | Path) -> dict[str, Tensor]:
    return decode_checkpoint(Path(path).read_bytes())


def load_checkpoint(path: str | Path, net: Network) -> Network:
    """Load parameters from ``path`` into ``net``.

    Raises:
        CheckpointError: If a tensor is missing or unexpected, or a shape
            differs from the network's configuration.
    """
    tensors = read_checkpoint(path)
    expected = net.parameters()

    missing = [name for name in expected if name not in tensors]
    if missing:
        raise CheckpointError(f"checkpoint is missing tensor(s): {', '.join(missing)}")
    unexpected = [name for name in tensors if name not in expected]
    if unexpected:
        raise CheckpointError(f"unexpected tensor(s) in checkpoint: {', '.join(unexpected)}")
    for name, current in expected.items():
        if tensors[name].shape != current.shape:
            raise CheckpointError(
                f"{name}: shape mismatch, checkpoint has {tensors[name].shape}, "
                f"network expects {current.shape}"
            )

    net.set_parameters(tensors)
    return net
