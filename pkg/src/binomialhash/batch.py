"""Vectorized twins of the scalar hash and lookup operations.

The scalar functions in ``engine`` and ``hashing`` are the reference
implementations; the array versions here produce bit-identical results
element by element (the test suite pins that equivalence) and exist so the
simulation harness can resolve millions of keys per second.  All arrays are
uint64 and all arithmetic wraps modulo 2^64, matching the scalar word model.
"""

import numpy as np

from .engine import tree_geometry
from .hashing import LEVEL_SALT, MASK64, STREAM_GAMMA


def mix64_array(x: np.ndarray) -> np.ndarray:
    """mix64 applied elementwise to a uint64 array."""
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(33)
    x *= np.uint64(0xFF51AFD7ED558CCD)
    x ^= x >> np.uint64(33)
    x *= np.uint64(0xC4CEB9FE1A85EC53)
    x ^= x >> np.uint64(33)
    return x


def relocate_array(buckets: np.ndarray, digests: np.ndarray) -> np.ndarray:
    """relocate_within_level applied elementwise.

    Levels are handled one depth at a time: the elements whose highest set
    bit is ``d`` share the same mask and salt, so each level costs one
    vectorized mix.
    """
    out = buckets.astype(np.uint64, copy=True)
    if buckets.size == 0:
        return out
    top = int(buckets.max())
    d = 1
    while (1 << d) <= top:
        on_level = (buckets >> np.uint64(d)) == np.uint64(1)
        if on_level.any():
            level_mask = np.uint64((1 << d) - 1)
            salt = np.uint64(((1 << d) * LEVEL_SALT) & MASK64)
            draw = mix64_array(digests[on_level] ^ salt)
            out[on_level] = np.uint64(1 << d) + (draw & level_mask)
        d += 1
    return out


def lookup_array(key_digests: np.ndarray, n: int, omega: int = 6) -> np.ndarray:
    """Buckets in [0, n) for an array of base digests (int64 result)."""
    digests = np.ascontiguousarray(key_digests, dtype=np.uint64)
    geo = tree_geometry(n)
    if n == 1:
        return np.zeros(digests.shape, dtype=np.int64)

    enclosing_mask = np.uint64(geo.enclosing - 1)
    minor_mask = np.uint64(geo.minor - 1)
    minor = np.uint64(geo.minor)
    size = np.uint64(n)

    out = np.empty(digests.shape, dtype=np.int64)
    active = np.arange(digests.size)
    hi = digests.copy()
    for i in range(omega):
        b = hi & enclosing_mask
        c = relocate_array(b, hi)
        to_minor = c < minor
        direct = ~to_minor & (c < size)
        if to_minor.any():
            sel = active[to_minor]
            h = digests[sel]
            out[sel] = relocate_array(h & minor_mask, h).astype(np.int64)
        if direct.any():
            out[active[direct]] = c[direct].astype(np.int64)
        unresolved = ~(to_minor | direct)
        if not unresolved.any():
            return out
        active = active[unresolved]
        shift = np.uint64(((i + 1) * STREAM_GAMMA) & MASK64)
        hi = mix64_array(digests[active] + shift)

    h = digests[active]
    out[active] = relocate_array(h & minor_mask, h).astype(np.int64)
    return out


def counter_digests(count: int, seed: int = 0) -> np.ndarray:
    """Deterministic uniform digests: a seeded counter pushed through mix64.

    Element j equals mix64(seed + (j + 1) * STREAM_GAMMA) with wrapping
    arithmetic; regenerating with the same (count, seed) yields the
    identical array.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    counter = np.arange(1, count + 1, dtype=np.uint64)
    counter *= np.uint64(STREAM_GAMMA)
    counter += np.uint64(seed & MASK64)
    return mix64_array(counter)
