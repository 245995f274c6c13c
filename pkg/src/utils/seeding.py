"""
Seed Derivation.

Child seeds are spawned from numpy SeedSequence objects, so that every
random step is a pure function of one integer seed.
"""
from __future__ import annotations

from typing import List

import numpy as np


def derive_seeds(seed: int, count: int) -> List[int]:
    """
    Derive ``count`` independent integer seeds from ``seed``.

    Args:
        seed: Parent seed (non-negative)
        count: Number of children

    Returns:
        List of 64-bit integer seeds
    """
    children = np.random.SeedSequence(int(seed)).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]
