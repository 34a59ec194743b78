"""Stateless constant-time consistent hashing over binary-tree bucket geometry.

Core usage:

    >>> from binomialhash import lookup_key
    >>> lookup_key("user:1234", 11)
    7

Adding a bucket moves keys only onto the new bucket; removing the last
bucket moves only the keys that lived on it; per-bucket load stays within a
2**-omega relative band of perfectly even.  See the submodules for the
engine, hash primitives, the closed-form balance model, the simulation
harness, and the CLI.
"""

from .batch import counter_digests, lookup_array, mix64_array, relocate_array
from .bench import TimingRow, time_lookups
from .engine import (
    DEFAULT_PARAMS,
    MAX_CLUSTER_SIZE,
    ClusterGeometry,
    LookupParams,
    highest_one_bit_index,
    lookup,
    lookup_key,
    relocate_within_level,
    tree_geometry,
)
from .hashing import MASK64, digest_key, mix, mix64, stream_digest
from .simulate import (
    BalanceReport,
    KeyPopulation,
    SimulationReport,
    TheoryComparison,
    balance_stats,
    check_resize,
    generate_keys,
    theory_vs_empirical,
)
from .theory import (
    BalanceModel,
    balance_model,
    expected_keys,
    prob_lowest_level,
    relative_gap,
    sigma_max,
    std_dev,
    two_group_std_dev,
)

__version__ = "0.1.0"

__all__ = [
    "BalanceModel",
    "BalanceReport",
    "ClusterGeometry",
    "DEFAULT_PARAMS",
    "KeyPopulation",
    "LookupParams",
    "MASK64",
    "MAX_CLUSTER_SIZE",
    "SimulationReport",
    "TheoryComparison",
    "TimingRow",
    "balance_model",
    "balance_stats",
    "check_resize",
    "counter_digests",
    "digest_key",
    "expected_keys",
    "generate_keys",
    "highest_one_bit_index",
    "lookup",
    "lookup_array",
    "lookup_key",
    "mix",
    "mix64",
    "mix64_array",
    "prob_lowest_level",
    "relative_gap",
    "relocate_array",
    "relocate_within_level",
    "sigma_max",
    "std_dev",
    "stream_digest",
    "theory_vs_empirical",
    "time_lookups",
    "tree_geometry",
    "two_group_std_dev",
]
