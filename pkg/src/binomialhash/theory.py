"""Closed-form load-balance model for the tree lookup engine.

For a cluster of ``n`` buckets with minor-tree capacity ``M`` and enclosing
capacity ``2M``, every key resolved inside the attempt loop is uniform over
all ``n`` buckets, while the fallback mass (probability ((2M-n)/2M)**omega)
lands only on the minor tree.  That splits the per-bucket expectations into
two groups -- minor-tree buckets are slightly over mean, lowest-level
buckets slightly under -- and everything here is closed-form arithmetic on
that two-group split:

    prob_lowest_level   probability a key lands on a lowest-level bucket
    expected_keys       the two group means (minor, lowest)
    relative_gap        gap between group means, normalized by keys/bucket
    std_dev             spread of per-bucket load predicted by the model
    two_group_std_dev   spread computed directly from the group expectations
    sigma_max           worst-case std_dev over cluster sizes, per mean load
    balance_model       all of the above bundled for one (n, keys, omega)

The gap and spread functions can be evaluated on real-valued ``n`` across a
whole capacity segment [M, 2M] by passing ``minor`` explicitly; this is for
curve analysis (locating maxima), since n = M itself is not a reachable
cluster size.  With ``minor`` omitted, integer cluster geometry is derived
from the size, and powers of two sit at the balanced n = 2M end of their
segment (gap and spread both zero).
"""

import math
from dataclasses import dataclass

from .engine import tree_geometry


def _segment(n: float, minor: int | None) -> int:
    """Minor-tree capacity of the segment containing ``n``."""
    if minor is None:
        if n != int(n):
            raise ValueError("real-valued n requires an explicit minor capacity")
        return tree_geometry(int(n)).minor
    if minor < 1 or minor & (minor - 1):
        raise ValueError(f"minor capacity must be a power of two, got {minor}")
    if not minor <= n <= 2 * minor:
        raise ValueError(f"n={n} outside segment [{minor}, {2 * minor}]")
    return minor


def _check_omega(omega: int) -> None:
    if omega < 1:
        raise ValueError(f"omega must be >= 1, got {omega}")


def prob_lowest_level(n: int, omega: int) -> float:
    """Probability that a key resolves to a bucket in [M, n).

    Only keys settled inside the attempt loop can reach the lowest level, so
    the mass is (n-M)/n scaled by the chance of settling within ``omega``
    attempts.  Undefined for the singleton cluster.
    """
    _check_omega(omega)
    if n <= 1:
        raise ValueError(f"balance model needs n > 1, got {n}")
    geo = tree_geometry(n)
    miss = (geo.enclosing - n) / geo.enclosing
    return (n - geo.minor) / n * (1.0 - miss**omega)


def expected_keys(n: int, k: float, omega: int) -> tuple[float, float]:
    """Expected keys per bucket in each group: (minor-tree, lowest-level).

    The minor mean is always >= k/n and the lowest mean <= k/n; the totals
    conserve mass exactly: minor * M + lowest * (n - M) == k.
    """
    if k < 0:
        raise ValueError(f"key count must be >= 0, got {k}")
    p = prob_lowest_level(n, omega)
    geo = tree_geometry(n)
    lowest = p * k / (n - geo.minor)
    minor = (1.0 - p) * k / geo.minor
    return minor, lowest


def relative_gap(n: float, omega: int, minor: int | None = None) -> float:
    """Gap between the group means, normalized by the balanced mean k/n.

    Independent of the key count.  As a function of n over a segment
    [M, 2M] it decreases monotonically from 2**-omega at n = M to zero at
    n = 2M, so 2**-omega bounds the relative imbalance for any cluster.
    """
    _check_omega(omega)
    m = _segment(n, minor)
    a = (n - m) / m
    return (1.0 + a) * (1.0 - a) ** omega / 2.0**omega


def std_dev(n: float, k: float, omega: int, minor: int | None = None) -> float:
    """Model spread of per-bucket load for ``k`` keys on ``n`` buckets.

    Zero at both segment ends (n = M has no lowest-level bucket to starve,
    n = 2M is perfectly uniform) with a single interior maximum; see
    sigma_max for its location and value.
    """
    _check_omega(omega)
    if k < 0:
        raise ValueError(f"key count must be >= 0, got {k}")
    m = _segment(n, minor)
    over = (n - m) / m
    miss = (2 * m - n) / (2 * m)
    return k / n * math.sqrt(over * miss**omega)


def two_group_std_dev(n: int, k: float, omega: int) -> float:
    """Spread of the per-bucket *expectations*, computed from the group means.

    This is the structural (sampling-free) part of the empirical standard
    deviation; the simulation harness adds multinomial noise on top of it
    when predicting measured spreads.
    """
    minor_mean, lowest_mean = expected_keys(n, k, omega)
    geo = tree_geometry(n)
    q = k / n
    var = (geo.minor * (q - minor_mean) ** 2 + (n - geo.minor) * (lowest_mean - q) ** 2) / n
    return math.sqrt(var)


def sigma_max(q: float, omega: int) -> tuple[float, float]:
    """Worst case of std_dev over a segment, for mean load ``q`` per bucket.

    Returns (n_star / M, sigma), where n_star is the real-valued size
    maximizing std_dev.  The maximum decreases monotonically in omega.
    """
    _check_omega(omega)
    if q < 0:
        raise ValueError(f"mean load must be >= 0, got {q}")
    n_star_ratio = (2 + omega) / (1 + omega)
    sigma = q * math.sqrt(1.0 / (1 + omega) * (omega / (2.0 * (1 + omega))) ** omega)
    return n_star_ratio, sigma


@dataclass(frozen=True)
class BalanceModel:
    """Closed-form balance predictions for one (size, keys, omega) triple."""

    size: int
    keys: float
    omega: int
    prob_lowest: float
    minor_mean: float
    lowest_mean: float
    gap: float
    sigma: float
    mean: float


def balance_model(n: int, k: float, omega: int) -> BalanceModel:
    """Evaluate the whole model at once (used by the CLI theory table)."""
    minor_mean, lowest_mean = expected_keys(n, k, omega)
    return BalanceModel(
        size=n,
        keys=k,
        omega=omega,
        prob_lowest=prob_lowest_level(n, omega),
        minor_mean=minor_mean,
        lowest_mean=lowest_mean,
        gap=relative_gap(n, omega),
        sigma=std_dev(n, k, omega),
        mean=k / n,
    )
