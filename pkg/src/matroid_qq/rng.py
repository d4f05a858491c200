"""Seedable, splittable random streams.

A stream is identified by a root seed plus an integer path, e.g.
``stream(42, n, trial)``; distinct paths give statistically independent
generators and the same path always gives the same bits.
"""

import numpy as np


def stream(seed: int, *path: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=path)))
