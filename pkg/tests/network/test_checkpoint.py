"""Tests for FCKP checkpoint files."""

import struct

import numpy as np
import pytest

from shotscore.errors import (
    BadMagicError,
    CheckpointError,
    TensorFormatError,
    TruncatedFileError,
)
from shotscore.network import build_network, glorot_init, load_checkpoint, read_checkpoint, save_checkpoint
from shotscore.network.checkpoint import decode_checkpoint, encode_checkpoint
from shotscore.tensor import Rng, encode_tensor


@pytest.fixture
def trained_net():
    return glorot_init(build_network(8, 3), Rng(42))


def test_save_load_forward_identical(tmp_path, trained_net):
    path = save_checkpoint(trained_net, tmp_path / "nested" / "net.fckp")
    frame = np.random.default_rng(0).uniform(size=(8, 8, 3)).astype(np.float32)

    restored = load_checkpoint(path, build_network(8, 3))
    assert restored.eval().forward(frame) == trained_net.eval().forward(frame)
    for name, tensor in trained_net.parameters().items():
        assert restored.parameters()[name].tobytes() == tensor.tobytes()


def test_encode_decode_random_cases():
    rng = np.random.default_rng(1)
    for case in range(100):
        tensors = {}
        for i in range(int(rng.integers(1, 5))):
            rank = int(rng.integers(1, 5))
            shape = tuple(int(d) for d in rng.integers(1, 4, size=rank))
            dtype = np.float64 if (case + i) % 2 else np.float32
            tensors[f"T{i}"] = rng.normal(size=shape).astype(dtype)
        decoded = decode_checkpoint(encode_checkpoint(tensors))
        assert list(decoded) == list(tensors)
        for name, tensor in tensors.items():
            assert decoded[name].dtype == tensor.dtype
            assert decoded[name].tobytes() == tensor.tobytes()


def test_missing_tensor(tmp_path, trained_net):
    tensors = dict(trained_net.parameters())
    del tensors["W3"]
    path = tmp_path / "missing.fckp"
    path.write_bytes(encode_checkpoint(tensors))
    with pytest.raises(CheckpointError, match="W3"):
        load_checkpoint(path, build_network(8, 3))


def test_unexpected_tensor(tmp_path, trained_net):
    tensors = {**trained_net.parameters(), "W9": np.ones(2, dtype=np.float32)}
    path = tmp_path / "extra.fckp"
    path.write_bytes(encode_checkpoint(tensors))
    with pytest.raises(CheckpointError, match="W9"):
        load_checkpoint(path, build_network(8, 3))


def test_side_mismatch(tmp_path):
    path = save_checkpoint(glorot_init(build_network(32, 3), Rng(0)), tmp_path / "small.fckp")
    with pytest.raises(CheckpointError, match="shape mismatch"):
        load_checkpoint(path, build_network(64, 3))


def test_bad_magic_and_truncation(tmp_path, trained_net):
    blob = encode_checkpoint(trained_net.parameters())
    with pytest.raises(BadMagicError):
        decode_checkpoint(b"NOPE" + blob[4:])
    with pytest.raises(TruncatedFileError):
        decode_checkpoint(blob[:5])
    with pytest.raises(TruncatedFileError):
        decode_checkpoint(blob[: len(blob) // 2])


def test_duplicate_name_rejected():
    entry = struct.pack("<H", 1) + b"A" + encode_tensor(np.ones(1))
    blob = struct.pack("<4sBH", b"FCKP", 1, 2) + entry + entry
    with pytest.raises(TensorFormatError, match="duplicate"):
        decode_checkpoint(blob)


def test_trailing_bytes_rejected(tmp_path, trained_net):
    path = tmp_path / "trailing.fckp"
    path.write_bytes(encode_checkpoint(trained_net.parameters()) + b"\x00\x00")
    with pytest.raises(TensorFormatError, match="trailing"):
        read_checkpoint(path)


def test_non_utf8_name_rejected():
    entry = struct.pack("<H", 2) + b"\xff\xfe" + encode_tensor(np.ones(1))
    blob = struct.pack("<4sBH", b"FCKP", 1, 1) + entry
    with pytest.raises(TensorFormatError, match="UTF-8"):
        decode_checkpoint(blob)
