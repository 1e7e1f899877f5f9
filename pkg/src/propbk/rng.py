"""Counter-keyed random streams.

Every random draw in the package comes from a generator keyed by
``(seed, label, index...)``.  No generator carries state from one trial or
block to the next, so results do not depend on how work is partitioned.
"""

from __future__ import annotations

import zlib

import numpy as np

__all__ = ["stream", "label_key"]


def label_key(label: str) -> int:
    """Stable 32-bit integer for a string label."""
    return zlib.crc32(label.encode("utf-8"))


def stream(seed: int, label: str, *index: int) -> np.random.Generator:
    """Return an independent Philox generator for ``(seed, label, *index)``."""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    key = (label_key(label),) + tuple(int(i) for i in index)
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=key)
    return np.random.Generator(np.random.Philox(ss))
