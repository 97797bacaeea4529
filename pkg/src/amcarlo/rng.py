"""Counter-based random substreams for reproducible parallel simulation.

Every path owns three independent Philox substreams keyed by
(seed, path_index, purpose): one for the Wiener increments, one for the
jump clock, one for the drift-redraw kernel. Streams are derived through
SeedSequence spawn keys, so results do not depend on thread scheduling,
batch chunking, or how many draws other paths consume.
"""

from __future__ import annotations

import numpy as np

WIENER = 0
CLOCK = 1
KERNEL = 2


def substream(seed: int, path_index: int, purpose: int) -> np.random.Generator:
    """Generator for the (seed, path_index, purpose) substream."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(path_index, purpose))
    return np.random.Generator(np.random.Philox(ss))


def positive_uniform(rng: np.random.Generator) -> float:
    """Uniform draw guaranteed to land strictly inside (0, 1).

    numpy's random() may return exactly 0.0, which the Laplace quantile
    rejects; redraw in that (probability 2^-53) case.
    """
    u = rng.random()
    while u == 0.0:
        u = rng.random()
    return u
