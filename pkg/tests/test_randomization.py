"""Tests for seeded random streams and process fan-out."""

import numpy as np
import pytest

from src.harness.trials import run_trials
from src.utils.parallel import run_parallel
from src.utils.randomization import chunk_bounds, derive_rng, derive_seed_sequence


def _square(x: int) -> int:
    return x * x


def _draw(trial: int) -> float:
    return float(derive_rng(11, "trial", trial).random())


class TestDeriveRng:
    """Test stream derivation."""

    def test_same_keys_same_stream(self):
        """Test that identical keys reproduce the stream."""
        a = derive_rng(5, "prior", 3).integers(0, 10**9, size=8)
        b = derive_rng(5, "prior", 3).integers(0, 10**9, size=8)
        np.testing.assert_array_equal(a, b)

    def test_different_keys_differ(self):
        a = derive_rng(5, "prior", 3).integers(0, 10**9, size=8)
        b = derive_rng(5, "prior", 4).integers(0, 10**9, size=8)
        c = derive_rng(5, "trial", 3).integers(0, 10**9, size=8)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_different_seeds_differ(self):
        a = derive_rng(0, "trial", 0).random(4)
        b = derive_rng(1, "trial", 0).random(4)
        assert not np.array_equal(a, b)

    def test_seed_sequence_entropy(self):
        seq = derive_seed_sequence(7, 1, 2)
        assert list(seq.entropy) == [7, 1, 2]

    def test_negative_key_rejected(self):
        with pytest.raises(ValueError):
            derive_rng(0, -1)


class TestChunkBounds:
    """Test chunk splitting."""

    def test_chunks_cover_range(self):
        assert chunk_bounds(10, 4) == [(0, 0, 4), (1, 4, 8), (2, 8, 10)]

    def test_empty_total(self):
        assert chunk_bounds(0, 4) == []

    def test_invalid_chunk_size(self):
        with pytest.raises(ValueError):
            chunk_bounds(10, 0)


class TestRunParallel:
    """Test ordered fan-out."""

    def test_serial_preserves_order(self):
        assert run_parallel(_square, [3, 1, 2]) == [9, 1, 4]

    @pytest.mark.integration
    def test_parallel_matches_serial(self):
        """Test that worker count does not change results."""
        assert run_parallel(_square, range(20), workers=2) == [x * x for x in range(20)]

    @pytest.mark.integration
    def test_trials_independent_of_workers(self):
        """Test that seeded trials are reproducible across schedules."""
        assert run_trials(_draw, 12, workers=1) == run_trials(_draw, 12, workers=3)
