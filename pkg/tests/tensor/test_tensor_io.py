"""Tests for the FTNS tensor file format."""

import struct

import numpy as np
import pytest

from shotscore.errors import (
    BadMagicError,
    TensorFormatError,
    TruncatedFileError,
    UnsupportedDtypeError,
    UnsupportedVersionError,
)
from shotscore.tensor import decode_tensor, encode_tensor, read_tensor, write_tensor


def test_round_trip_is_bit_exact(tmp_path):
    rng = np.random.default_rng(0)
    for case in range(100):
        rank = int(rng.integers(1, 5))
        shape = tuple(int(d) for d in rng.integers(1, 5, size=rank))
        dtype = np.float32 if case % 2 else np.float64
        tensor = rng.normal(size=shape).astype(dtype)
        path = tmp_path / f"t{case}.ftns"
        write_tensor(tensor, path)
        back = read_tensor(path)
        assert back.dtype == tensor.dtype
        assert back.shape == tensor.shape
        assert back.tobytes() == tensor.tobytes()


def test_header_layout():
    blob = encode_tensor(np.zeros((2, 3), dtype=np.float32))
    assert blob[:4] == b"FTNS"
    assert blob[4:8] == bytes([1, 1, 2, 0])
    assert struct.unpack("<2I", blob[8:16]) == (2, 3)
    assert len(blob) == 16 + 6 * 4


def test_decode_returns_next_offset():
    first = encode_tensor(np.ones(3))
    second = encode_tensor(np.full((2, 2), 7.0, dtype=np.float32))
    tensor, offset = decode_tensor(first + second)
    assert offset == len(first)
    tensor, end = decode_tensor(first + second, offset)
    assert end == len(first) + len(second)
    assert np.all(tensor == 7.0)


def test_bad_magic(tmp_path):
    path = tmp_path / "bad.ftns"
    path.write_bytes(b"XXXX" + encode_tensor(np.ones(2))[4:])
    with pytest.raises(BadMagicError):
        read_tensor(path)


def test_unsupported_version():
    blob = bytearray(encode_tensor(np.ones(2)))
    blob[4] = 9
    with pytest.raises(UnsupportedVersionError):
        decode_tensor(bytes(blob))


def test_unsupported_dtype_code_and_array_dtype():
    blob = bytearray(encode_tensor(np.ones(2)))
    blob[5] = 7
    with pytest.raises(UnsupportedDtypeError):
        decode_tensor(bytes(blob))
    with pytest.raises(UnsupportedDtypeError):
        encode_tensor(np.ones(2, dtype=np.int32))


def test_empty_dims_rejected():
    blob = bytearray(encode_tensor(np.ones((1, 1))))
    blob[8:12] = struct.pack("<I", 0)
    with pytest.raises(TensorFormatError, match="positive"):
        decode_tensor(bytes(blob))
    with pytest.raises(TensorFormatError):
        encode_tensor(np.ones((0, 2)))


def test_bad_rank_rejected():
    blob = bytearray(encode_tensor(np.ones(2)))
    blob[6] = 0
    with pytest.raises(TensorFormatError, match="rank"):
        decode_tensor(bytes(blob))


@pytest.mark.parametrize("cut", [3, 10, 20])
def test_truncated(cut):
    blob = encode_tensor(np.ones((2, 2)))
    with pytest.raises(TruncatedFileError):
        decode_tensor(blob[:cut])


def test_huge_dims_reported_as_truncation():
    header = b"FTNS" + bytes([1, 1, 4, 0]) + struct.pack("<4I", 2**31, 2**31, 4, 1)
    with pytest.raises(TruncatedFileError):
        decode_tensor(header + b"\x00" * 16)


def test_trailing_bytes_rejected(tmp_path):
    path = tmp_path / "extra.ftns"
    path.write_bytes(encode_tensor(np.ones(2)) + b"\x00")
    with pytest.raises(TensorFormatError, match="trailing"):
        read_tensor(path)


def test_format_errors_are_os_errors():
    with pytest.raises(OSError):
        decode_tensor(b"XXXX\x01\x01\x01\x00")
