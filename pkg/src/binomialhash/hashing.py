"""Bit-exact 64-bit hash primitives for the bucket-lookup engine.

Primitives:
    mix64         -- full-avalanche finalizer (xorshift-multiply rounds)
    digest_key    -- seeded byte-string digester (FNV-1a fold, then mix64)
    stream_digest -- per-attempt digest stream derived from a base digest
    mix           -- digest/mask mixer feeding within-level relocation

Everything here is pure, total, and operates on unsigned 64-bit words, so
two independent runs (or two independent implementations honouring the same
constants) produce identical digests on any platform or endianness.  The
constants are frozen: golden regression tests depend on them.
"""

MASK64 = 0xFFFFFFFFFFFFFFFF

# FNV-1a, 64-bit variant
FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3

# Increment for deriving the per-attempt digest stream (2^64 / golden ratio).
STREAM_GAMMA = 0x9E3779B97F4A7C15

# Salt for the relocation mixer; distinct from STREAM_GAMMA so relocation
# draws stay decorrelated from stream draws.
LEVEL_SALT = 0xD1B54A32D192ED03


def mix64(x: int) -> int:
    """Avalanche finalizer: three xorshift-multiply rounds, bijective on 64 bits.

    Flipping any single input bit flips about half of the output bits, which
    is what lets masked slices of the output act as uniform draws.
    """
    x = int(x) & MASK64
    x ^= x >> 33
    x = (x * 0xFF51AFD7ED558CCD) & MASK64
    x ^= x >> 33
    x = (x * 0xC4CEB9FE1A85EC53) & MASK64
    x ^= x >> 33
    return x


def digest_key(key: bytes | str, seed: int = 0) -> int:
    """Digest a bounded-size key into a 64-bit value.

    FNV-1a byte fold, XOR with the seed, then a finalizing mix64 so that
    short keys still avalanche.  Strings are digested as UTF-8.  The empty
    key is allowed and folds to the FNV offset basis.
    """
    if isinstance(key, str):
        key = key.encode("utf-8")
    h = FNV_OFFSET
    for byte in key:
        h = ((h ^ byte) * FNV_PRIME) & MASK64
    return mix64(h ^ (seed & MASK64))


def stream_digest(h0: int, i: int) -> int:
    """Digest for attempt ``i`` of a key whose base digest is ``h0``.

    Attempt 0 is the base digest itself; later attempts re-mix the base
    digest shifted by a multiple of STREAM_GAMMA, giving a stream of
    decorrelated 64-bit draws that is a pure function of (h0, i).
    """
    if i == 0:
        return int(h0) & MASK64
    return mix64((int(h0) + i * STREAM_GAMMA) & MASK64)


def mix(h: int, mask: int) -> int:
    """Relocation draw for digest ``h`` within the level selected by ``mask``.

    ``mask`` must be 2^d - 1 for the level of capacity 2^d.  Salting with
    (mask + 1) * LEVEL_SALT separates this domain from stream_digest, so the
    relocation draw is independent of the attempt draws for the same digest.
    """
    return mix64(int(h) ^ (((mask + 1) * LEVEL_SALT) & MASK64))
