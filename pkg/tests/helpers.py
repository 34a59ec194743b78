"""Shared test utilities: chi-square statistic and an independent lookup oracle."""

import math

import numpy as np

from binomialhash.hashing import MASK64, STREAM_GAMMA, mix, mix64


def chi_square_uniform(values, cells: int) -> float:
    """Chi-square statistic of ``values`` against uniform on [0, cells)."""
    counts = np.bincount(np.asarray(values, dtype=np.int64), minlength=cells)
    expected = len(values) / cells
    return float(((counts - expected) ** 2 / expected).sum())


def reference_lookup(key_digest: int, n: int, omega: int = 6) -> int:
    """Second, independent evaluation of the lookup contract.

    Shares only the frozen hash primitives with the library; geometry comes
    from floating-point logs instead of bit tricks, the digest stream is
    materialized up front, and the control flow is written from the contract
    rather than ported from the engine.
    """
    if n == 1:
        return 0
    height = math.ceil(math.log2(n))
    enclosing = 2**height
    minor = 2 ** (height - 1)

    def relocate(b: int, h: int) -> int:
        if b < 2:
            return b
        depth = math.floor(math.log2(b))
        level_mask = 2**depth - 1
        return 2**depth + (mix(h, level_mask) & level_mask)

    h = key_digest & MASK64
    stream = [h] + [mix64((h + i * STREAM_GAMMA) & MASK64) for i in range(1, omega + 1)]
    for i in range(omega):
        slot = stream[i] & (enclosing - 1)
        candidate = relocate(slot, stream[i])
        if candidate < minor:
            return relocate(h & (minor - 1), h)
        if candidate < n:
            return candidate
    return relocate(h & (minor - 1), h)
