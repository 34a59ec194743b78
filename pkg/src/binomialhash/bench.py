"""Wall-clock measurement of scalar lookup latency.

Per-call timing at nanosecond scale is dominated by timer overhead, so
lookups are measured in batches on the monotonic clock: each batch of at
least 10^4 calls yields one per-lookup estimate, the first batch of every
repetition is discarded as warmup, and the summary statistics are taken
over the remaining batch estimates.  Absolute numbers are hardware- and
runtime-specific; the meaningful signal is their flatness across cluster
sizes.
"""

import time
from dataclasses import dataclass

import numpy as np

from .engine import LookupParams, lookup

MIN_BATCH = 10_000


@dataclass(frozen=True)
class TimingRow:
    """Per-lookup latency summary for one (cluster size, repetition) pass."""

    size: int
    rep: int
    mean_ns: float
    p50_ns: float
    p99_ns: float


def time_lookups(
    n: int,
    key_digests,
    omega: int = 6,
    repetitions: int = 3,
    batch_size: int = MIN_BATCH,
) -> list[TimingRow]:
    """Time scalar lookups of ``key_digests`` against ``n`` buckets.

    Returns one row per repetition.  Needs enough digests for at least two
    batches (one is warmup).
    """
    if repetitions < 3:
        raise ValueError(f"timing needs >= 3 repetitions, got {repetitions}")
    batch_size = max(batch_size, MIN_BATCH)
    digests = [int(d) for d in key_digests]
    if len(digests) < 2 * batch_size:
        raise ValueError(
            f"need at least {2 * batch_size} digests (warmup + one measured batch), "
            f"got {len(digests)}"
        )
    params = LookupParams(omega=omega)
    batches = [digests[start : start + batch_size] for start in range(0, len(digests), batch_size)]

    rows = []
    for rep in range(repetitions):
        per_lookup_ns = []
        for index, chunk in enumerate(batches):
            start = time.perf_counter_ns()
            for digest in chunk:
                lookup(digest, n, params)
            elapsed = time.perf_counter_ns() - start
            if index == 0:
                continue
            per_lookup_ns.append(elapsed / len(chunk))
        estimates = np.asarray(per_lookup_ns)
        rows.append(
            TimingRow(
                size=n,
                rep=rep,
                mean_ns=float(estimates.mean()),
                p50_ns=float(np.percentile(estimates, 50)),
                p99_ns=float(np.percentile(estimates, 99)),
            )
        )
    return rows
