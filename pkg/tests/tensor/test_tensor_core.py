"""Tests for tensor conversion and the seeded random source."""

import numpy as np
import pytest

from shotscore.errors import ShapeError
from shotscore.tensor import FLOAT32, FLOAT64, Rng, as_tensor, zeros


class TestAsTensor:
    def test_converts_dtype_and_layout(self):
        out = as_tensor(np.arange(6, dtype=np.int64).reshape(2, 3).T, FLOAT64)
        assert out.dtype == FLOAT64
        assert out.flags["C_CONTIGUOUS"]
        assert out.shape == (3, 2)

    @pytest.mark.parametrize("value", [1.0, np.zeros((1, 1, 1, 1, 1))])
    def test_rejects_rank_outside_one_to_four(self, value):
        with pytest.raises(ShapeError, match="rank"):
            as_tensor(value)

    def test_rejects_zero_dimension(self):
        with pytest.raises(ShapeError, match="positive"):
            as_tensor(np.zeros((2, 0)))

    def test_rejects_non_finite_unless_disabled(self):
        with pytest.raises(ShapeError, match="non-finite"):
            as_tensor([1.0, np.nan])
        assert np.isinf(as_tensor([np.inf], check_finite=False)[0])

    def test_zeros(self):
        out = zeros((2, 2))
        assert out.dtype == FLOAT32
        assert not out.any()


class TestRng:
    def test_same_seed_same_stream(self):
        a = Rng(7).uniform(0, 1, (5,))
        b = Rng(7).uniform(0, 1, (5,))
        np.testing.assert_array_equal(a, b)

    def test_spawn_depends_only_on_seed_and_key(self):
        parent = Rng(3)
        first = parent.spawn("init").uniform(0, 1, (4,))
        parent.uniform(0, 1, (100,))
        again = parent.spawn("init").uniform(0, 1, (4,))
        other = parent.spawn("dropout").uniform(0, 1, (4,))
        np.testing.assert_array_equal(first, again)
        assert not np.array_equal(first, other)

    def test_uniform_dtype_does_not_change_draws(self):
        single = Rng(11).uniform(-1, 1, (8,), FLOAT32)
        double = Rng(11).uniform(-1, 1, (8,), FLOAT64)
        np.testing.assert_array_equal(single, double.astype(FLOAT32))

    def test_integers_scalar_and_vector(self):
        rng = Rng(0)
        value = rng.integers(1, 9)
        assert isinstance(value, int)
        assert 1 <= value < 9
        codes = rng.integers(1, 9, size=1000)
        assert codes.min() >= 1 and codes.max() <= 8

    def test_permutation_and_bernoulli(self):
        rng = Rng(5)
        assert sorted(rng.permutation(10).tolist()) == list(range(10))
        assert rng.bernoulli(1.0, (3, 3)).all()
        assert not rng.bernoulli(0.0, (3, 3)).any()

    def test_rejects_seed_outside_64_bits(self):
        with pytest.raises(ValueError, match="64-bit"):
            Rng(-1)
        with pytest.raises(ValueError, match="64-bit"):
            Rng(2**64)
