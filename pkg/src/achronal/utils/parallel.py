"""
Deterministic chunked sampling.

Samples are split into fixed-size chunks. Chunk i draws from a generator
seeded by SeedSequence(seed, spawn_key=(i,)), so the concatenated output is
identical for any worker count.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Tuple

import numpy as np

from achronal.logger import get_logger
from achronal.utils.validation import require_count

logger = get_logger("utils.parallel")

ChunkFn = Callable[[np.random.Generator, int], np.ndarray]


def chunk_plan(n_samples: int, chunk_size: int) -> List[Tuple[int, int]]:
    """Return (chunk_index, size) pairs covering n_samples."""
    n_samples = require_count("n_samples", n_samples, minimum=0)
    chunk_size = require_count("chunk_size", chunk_size)
    plan = []
    start = 0
    index = 0
    while start < n_samples:
        size = min(chunk_size, n_samples - start)
        plan.append((index, size))
        start += size
        index += 1
    return plan


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for one chunk, derived from the run seed and the chunk counter."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def map_chunks(
    fn: ChunkFn,
    n_samples: int,
    seed: int,
    workers: int = 1,
    chunk_size: int = 65536
) -> np.ndarray:
    """
    Evaluate `fn(rng, size)` on every chunk and concatenate in chunk order.

    Args:
        fn: Produces an array with `size` rows from its generator
        n_samples: Total number of rows
        seed: Run seed
        workers: Thread count; does not affect the result
        chunk_size: Rows per chunk

    Returns:
        Array of n_samples rows
    """
    workers = require_count("workers", workers)
    plan = chunk_plan(n_samples, chunk_size)
    if not plan:
        return np.empty(0)

    def run(item: Tuple[int, int]) -> np.ndarray:
        index, size = item
        return np.asarray(fn(chunk_rng(seed, index), size))

    if workers == 1 or len(plan) == 1:
        parts = [run(item) for item in plan]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            # map preserves input order, which fixes the reduction order
            parts = list(executor.map(run, plan))

    logger.debug(f"Sampled {n_samples} rows in {len(plan)} chunks with {workers} workers")
    return np.concatenate(parts, axis=0)
