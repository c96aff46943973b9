"""
Random Streams
Counter-based generator streams keyed by (master seed, chunk index)

Every chunk of realizations draws from its own Philox stream, so the values
seen by a realization depend only on the seed and its chunk, never on how
chunks are spread over worker processes.
"""
import logging

import numpy as np

logger = logging.getLogger(__name__)

# Realizations per stream; fixed so results do not depend on the worker count
CHUNK_SIZE = 200
SEED_MAX = 2 ** 64 - 1


def check_seed(seed: int) -> int:
    """Validate a 64-bit master seed"""
    if not 0 <= int(seed) <= SEED_MAX:
        raise ValueError(f"seed must lie in [0, 2^64 - 1], got {seed}")
    return int(seed)


def chunk_stream(seed: int, chunk_index: int) -> np.random.Generator:
    """
    Generator for one chunk of realizations

    Args:
        seed: 64-bit master seed
        chunk_index: Position of the chunk in realization order

    Returns:
        numpy.random.Generator: Philox stream for that chunk
    """
    sequence = np.random.SeedSequence([check_seed(seed), int(chunk_index)])
    return np.random.Generator(np.random.Philox(sequence))


def chunk_layout(n_realizations: int, chunk_size: int = CHUNK_SIZE):
    """
    Split realizations into fixed-size chunks

    Returns:
        list: (chunk_index, first_realization, size) in realization order
    """
    layout = []
    for index, start in enumerate(range(0, n_realizations, chunk_size)):
        layout.append((index, start, min(chunk_size, n_realizations - start)))
    logger.debug(f"[MC] {n_realizations} realizations in {len(layout)} chunks of {chunk_size}")
    return layout
