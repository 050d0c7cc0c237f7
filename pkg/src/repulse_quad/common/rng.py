"""Random stream derivation.

Every random draw in the package comes from a generator derived from the run
seed, a module tag and optional indices (replicate, rung, grid cell). Streams
with different (tag, indices) are statistically independent and the mapping is
stable across processes and Python versions.
"""

import hashlib
from typing import Tuple

import numpy as np

from .exceptions import ValidationError


def _tag_key(tag: str) -> int:
    """Stable 32-bit key for a stream tag"""
    digest = hashlib.sha256(tag.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "little")


def _seed_sequence(seed: int, tag: str, indices: Tuple[int, ...]) -> np.random.SeedSequence:
    if seed < 0:
        raise ValidationError(f"Seed must be non-negative, got {seed}")
    if any(index < 0 for index in indices):
        raise ValidationError(f"Stream indices must be non-negative, got {indices}")
    return np.random.SeedSequence(entropy=seed, spawn_key=(_tag_key(tag), *indices))


def derive_rng(seed: int, tag: str, *indices: int) -> np.random.Generator:
    """Generator for the stream (seed, tag, *indices)"""
    return np.random.Generator(np.random.PCG64(_seed_sequence(seed, tag, indices)))


def derive_seed(seed: int, tag: str, *indices: int) -> int:
    """64-bit sub-seed for the stream (seed, tag, *indices), recorded in reports"""
    state = _seed_sequence(seed, tag, indices).generate_state(2, dtype=np.uint32)
    return int(state[0]) | (int(state[1]) << 32)
