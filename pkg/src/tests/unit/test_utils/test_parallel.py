"""
Unit tests for deterministic chunked sampling.

Tests cover:
- Chunk plans
- Per-chunk generators
- Independence of the result from the worker count
"""

import numpy as np
import pytest

from achronal.errors import InvalidArgumentError
from achronal.utils import chunk_plan, chunk_rng, map_chunks


def _uniform(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.uniform(size=size)


@pytest.mark.unit
@pytest.mark.utils
class TestChunkPlan:
    """Test chunk_plan."""

    def test_even_split(self):
        """Test chunks of equal size."""
        assert chunk_plan(6, 3) == [(0, 3), (1, 3)]

    def test_remainder(self):
        """Test that the last chunk holds the remainder."""
        assert chunk_plan(7, 3) == [(0, 3), (1, 3), (2, 1)]

    def test_empty(self):
        """Test that zero samples produce no chunks."""
        assert chunk_plan(0, 3) == []

    def test_rejects_bad_sizes(self):
        """Test negative counts and a zero chunk size."""
        with pytest.raises(InvalidArgumentError):
            chunk_plan(-1, 3)
        with pytest.raises(InvalidArgumentError):
            chunk_plan(5, 0)


@pytest.mark.unit
@pytest.mark.utils
class TestMapChunks:
    """Test map_chunks."""

    def test_chunk_generators_differ(self):
        """Test that chunks draw from distinct streams."""
        first = chunk_rng(7, 0).uniform(size=4)
        second = chunk_rng(7, 1).uniform(size=4)

        assert not np.array_equal(first, second)
        assert np.array_equal(first, chunk_rng(7, 0).uniform(size=4))

    def test_length_and_order(self):
        """Test that chunks are concatenated in chunk order."""
        samples = map_chunks(_uniform, 10, seed=3, chunk_size=4)

        assert samples.shape == (10,)
        assert np.array_equal(samples[4:8], chunk_rng(3, 1).uniform(size=4))

    @pytest.mark.parametrize("workers", [2, 4, 8])
    def test_independent_of_workers(self, workers):
        """Test bitwise-identical output for any worker count."""
        single = map_chunks(_uniform, 1000, seed=11, workers=1, chunk_size=64)
        threaded = map_chunks(_uniform, 1000, seed=11, workers=workers, chunk_size=64)

        assert np.array_equal(single, threaded)

    def test_rows_with_columns(self):
        """Test chunk outputs with a trailing axis."""
        samples = map_chunks(lambda rng, size: rng.normal(size=(size, 3)), 50, seed=0, chunk_size=16)

        assert samples.shape == (50, 3)

    def test_empty_run(self):
        """Test that zero samples return an empty array."""
        assert map_chunks(_uniform, 0, seed=0).size == 0

    def test_rejects_zero_workers(self):
        """Test that at least one worker is required."""
        with pytest.raises(InvalidArgumentError):
            map_chunks(_uniform, 10, seed=0, workers=0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
