"""Seeded random streams.

Every stochastic routine takes a base seed and derives its own generator from
``(seed, *keys)``, so results never depend on call order or on how trials are
scheduled across workers.
"""

import zlib

import numpy as np


def _key_to_int(key: int | str) -> int:
    if isinstance(key, str):
        return zlib.crc32(key.encode("utf-8"))
    if key < 0:
        raise ValueError(f"Seed keys must be nonnegative, got {key}")
    return int(key)


def derive_seed_sequence(seed: int, *keys: int | str) -> np.random.SeedSequence:
    """Build the SeedSequence for ``(seed, *keys)``."""
    return np.random.SeedSequence([_key_to_int(seed), *(_key_to_int(k) for k in keys)])


def derive_rng(seed: int, *keys: int | str) -> np.random.Generator:
    """Return an independent generator for the stream named by ``(seed, *keys)``.

    Args:
        seed: Base seed of the run
        keys: Stream labels, e.g. a stage name and a trial index

    Returns:
        numpy Generator seeded deterministically from the labels
    """
    return np.random.default_rng(derive_seed_sequence(seed, *keys))


def chunk_bounds(total: int, chunk_size: int) -> list[tuple[int, int, int]]:
    """Split ``range(total)`` into ``(chunk_index, start, stop)`` triples."""
    if chunk_size < 1:
        raise ValueError("chunk_size must be positive")
    return [(i, start, min(start + chunk_size, total)) for i, start in enumerate(range(0, total, chunk_size))]
