"""Seeded random streams.

Each stream is a PCG64 generator whose seed sequence is keyed by the master
seed plus a tuple of integers (density index, realization index, ...), so a
realization draws the same numbers whichever worker runs it.
"""

import numpy as np

RngStream = np.random.Generator


def stream(master_seed: int, *key: int) -> RngStream:
    ss = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))
