"""Constant-time key-to-bucket lookup over binary-tree bucket geometry.

A cluster of ``n`` buckets, numbered 0..n-1, is viewed as a binary tree
filled level by level.  The *enclosing tree* is the smallest such tree with
a power-of-two capacity ``E >= n``; the *minor tree* is the one below it
with capacity ``M = E / 2 < n``.  Buckets in ``[M, E)`` form the lowest
level, of which only ``[M, n)`` are valid.

``lookup`` maps a 64-bit key digest against the enclosing tree for up to
``omega`` attempts.  An attempt landing in the minor tree resolves through
a remap of the *original* digest against the minor tree; one landing on a
valid lowest-level bucket resolves directly; anything else retries with the
next digest in the stream.  Keys exhausting all attempts fall back to the
minor-tree remap.  Because every branch depends only on the key's digests
and on (E, M) -- never on the exact invalid slot hit -- adding bucket ``n``
moves keys only onto bucket ``n``, and removing the last bucket moves only
the keys that lived on it.

All operations are pure functions of their arguments; there is no shared
state, so concurrent use needs no synchronization.
"""

from dataclasses import dataclass

from .hashing import MASK64, digest_key, mix, stream_digest

# Headroom so the enclosing capacity and bit masks never leave a 64-bit word.
MAX_CLUSTER_SIZE = 1 << 62


@dataclass(frozen=True)
class ClusterGeometry:
    """Tree parameters derived from a cluster size.

    ``height`` is the enclosing-tree height, ``enclosing`` its capacity and
    ``minor`` the capacity of the minor tree.  For ``size > 1`` these satisfy
    enclosing = 2**height = 2 * minor and minor < size <= enclosing.  The
    singleton cluster is degenerate (height 0, minor 0): lookups bypass the
    tree entirely.
    """

    size: int
    height: int
    enclosing: int
    minor: int


@dataclass(frozen=True)
class LookupParams:
    """Lookup configuration: attempt budget and hash-family seed.

    ``omega`` bounds the rehash loop; the fraction of keys settled by the
    minor-tree fallback (the source of residual imbalance) shrinks like
    2**-omega, so the default of 6 keeps it under 1.6%.  ``seed`` feeds
    digest_key when keys are ingested as bytes.
    """

    omega: int = 6
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.omega <= 64:
            raise ValueError(f"omega must be in [1, 64], got {self.omega}")


DEFAULT_PARAMS = LookupParams()


def tree_geometry(n: int) -> ClusterGeometry:
    """Geometry of the enclosing and minor trees for an ``n``-bucket cluster."""
    if n < 1 or n > MAX_CLUSTER_SIZE:
        raise ValueError(f"cluster size must be in [1, 2^62], got {n}")
    if n == 1:
        return ClusterGeometry(size=1, height=0, enclosing=1, minor=0)
    height = (n - 1).bit_length()
    enclosing = 1 << height
    return ClusterGeometry(size=n, height=height, enclosing=enclosing, minor=enclosing >> 1)


def highest_one_bit_index(value: int) -> int:
    """Index of the highest set bit, i.e. floor(log2(value)) for value >= 1.

    This is the depth of bucket ``value`` within the tree: buckets at depth
    ``d`` are exactly those in [2^d, 2^(d+1)).
    """
    value = int(value)
    if value < 1:
        raise ValueError("depth is undefined for bucket 0")
    return value.bit_length() - 1


def relocate_within_level(bucket: int, digest: int) -> int:
    """Redistribute ``bucket`` uniformly across its own tree level.

    Buckets 0 and 1 are alone on their levels and pass through unchanged.
    Deeper buckets map to 2^d + (draw & (2^d - 1)), which stays within
    [2^d, 2^(d+1)).  The result depends on ``bucket`` only through its depth
    ``d``, which is what keeps assignments stable when the tree grows or
    shrinks by a level.
    """
    bucket = int(bucket)
    if bucket < 2:
        return bucket
    d = bucket.bit_length() - 1
    level_mask = (1 << d) - 1
    return (1 << d) + (mix(int(digest), level_mask) & level_mask)


def lookup(key_digest: int, n: int, params: LookupParams = DEFAULT_PARAMS) -> int:
    """Bucket in [0, n) for a key with base digest ``key_digest``.

    Runs at most ``params.omega`` attempts against the enclosing tree and at
    most that many stream advances, independent of ``n``.  The minor-tree
    fallbacks remap the original base digest, not the current attempt's, so
    the fallback assignment is a pure function of the key.
    """
    # geometry inlined (same values as tree_geometry): this is the hot path
    if n < 1 or n > MAX_CLUSTER_SIZE:
        raise ValueError(f"cluster size must be in [1, 2^62], got {n}")
    if n == 1:
        return 0
    h = int(key_digest) & MASK64
    height = (n - 1).bit_length()
    enclosing_mask = (1 << height) - 1
    minor = 1 << (height - 1)
    minor_mask = minor - 1

    hi = h
    for i in range(params.omega):
        b = hi & enclosing_mask
        c = relocate_within_level(b, hi)
        if c < minor:
            return relocate_within_level(h & minor_mask, h)
        if c < n:
            return c
        hi = stream_digest(h, i + 1)
    return relocate_within_level(h & minor_mask, h)


def lookup_key(key: bytes | str, n: int, params: LookupParams = DEFAULT_PARAMS) -> int:
    """End-to-end lookup for a raw key: digest with ``params.seed``, then map."""
    return lookup(digest_key(key, params.seed), n, params)
