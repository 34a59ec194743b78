"""Deterministic cluster-lifecycle simulation and statistical validation.

Generates reproducible key populations, replays single-step cluster grows
and shrinks while counting key movement, and compares measured per-bucket
distributions against the closed-form balance model.  Everything is keyed
by explicit seeds: rerunning with the same inputs reproduces every report
bit for bit.

Empirical spreads at finite key counts contain multinomial sampling noise
on top of the structural two-group imbalance, so predictions combine both:
sigma_predicted**2 = structural**2 + mean per-bucket multinomial variance.
Proportion checks use four binomial standard errors; spread checks use a
20% relative band on the variance.
"""

import math
from dataclasses import dataclass

import numpy as np

from .batch import counter_digests, lookup_array
from .engine import tree_geometry
from .theory import expected_keys, prob_lowest_level, relative_gap, two_group_std_dev

PROPORTION_SIGMAS = 4.0
VARIANCE_BAND = 0.20


@dataclass(frozen=True)
class KeyPopulation:
    """A reproducible set of key digests: same (count, seed), same digests."""

    count: int
    seed: int
    digests: np.ndarray


def generate_keys(count: int, seed: int = 0) -> KeyPopulation:
    """Materialize ``count`` uniform 64-bit key digests from ``seed``."""
    return KeyPopulation(count=count, seed=seed, digests=counter_digests(count, seed))


@dataclass(frozen=True)
class SimulationReport:
    """Outcome of one single-step resize.

    ``violations`` counts keys that broke the resize contract: on a grow,
    keys that changed bucket without landing on the new one; on a shrink,
    keys that changed bucket without having lived on the removed one.
    ``moved_to_new`` counts keys on the added bucket (grow) or keys that had
    to leave the removed bucket (shrink).
    """

    n_before: int
    n_after: int
    moved: int
    moved_to_new: int
    violations: int
    per_bucket: np.ndarray


def check_resize(
    population: KeyPopulation, n_from: int, n_to: int, omega: int = 6
) -> SimulationReport:
    """Replay one adjacent resize step and audit every key's movement.

    Multi-step walks are composed from single steps; non-adjacent sizes are
    rejected.
    """
    if abs(n_from - n_to) != 1:
        raise ValueError(f"resize steps must be adjacent sizes, got {n_from} -> {n_to}")
    if min(n_from, n_to) < 1:
        raise ValueError("cluster sizes must be >= 1")
    before = lookup_array(population.digests, n_from, omega)
    after = lookup_array(population.digests, n_to, omega)
    changed = after != before
    moved = int(np.count_nonzero(changed))
    if n_to > n_from:
        new_bucket = n_from
        moved_to_new = int(np.count_nonzero(after == new_bucket))
        violations = int(np.count_nonzero(changed & (after != new_bucket)))
    else:
        removed = n_to
        moved_to_new = int(np.count_nonzero(before == removed))
        violations = int(np.count_nonzero(changed & (before != removed)))
    per_bucket = np.bincount(after, minlength=n_to)
    return SimulationReport(
        n_before=n_from,
        n_after=n_to,
        moved=moved,
        moved_to_new=moved_to_new,
        violations=violations,
        per_bucket=per_bucket,
    )


@dataclass(frozen=True)
class BalanceReport:
    """Per-bucket load distribution of a population on one cluster size."""

    size: int
    keys: int
    omega: int
    per_bucket: np.ndarray
    empirical_sigma: float
    empirical_p: float
    min_relative: float
    max_relative: float


def balance_stats(population: KeyPopulation, n: int, omega: int = 6) -> BalanceReport:
    """Histogram the population over ``n`` buckets with summary statistics.

    ``empirical_p`` is the fraction of keys on lowest-level buckets [M, n);
    ``min_relative``/``max_relative`` are the least/most loaded bucket
    relative to the mean (signed, 0 means exactly mean).
    """
    geo = tree_geometry(n)
    counts = np.bincount(lookup_array(population.digests, n, omega), minlength=n)
    k = population.count
    if k == 0:
        return BalanceReport(n, 0, omega, counts, 0.0, 0.0, 0.0, 0.0)
    mean = k / n
    empirical_p = float(counts[geo.minor :].sum() / k) if n > 1 else 0.0
    return BalanceReport(
        size=n,
        keys=k,
        omega=omega,
        per_bucket=counts,
        empirical_sigma=float(counts.std()),
        empirical_p=empirical_p,
        min_relative=float(counts.min() / mean - 1.0),
        max_relative=float(counts.max() / mean - 1.0),
    )


@dataclass(frozen=True)
class TheoryComparison:
    """One row of the model-versus-measurement table."""

    size: int
    keys: int
    prob_theory: float
    prob_empirical: float
    prob_se: float
    prob_ok: bool
    gap_theory: float
    gap_empirical: float
    gap_se: float
    gap_ok: bool
    sigma_predicted: float
    sigma_empirical: float
    sigma_ok: bool


def theory_vs_empirical(
    n_range, q: int, omega: int = 6, seed: int = 0
) -> list[TheoryComparison]:
    """Compare measured distributions against the closed-form model.

    For each size ``n`` a fresh population of ``q * n`` keys is resolved;
    the lowest-level fraction, the normalized group-mean gap, and the
    per-bucket spread are each compared against their predictions at the
    tolerances in the module docstring.
    """
    if q < 100:
        raise ValueError(f"need q >= 100 keys per bucket for stable statistics, got {q}")
    rows = []
    for n in n_range:
        k = q * n
        geo = tree_geometry(n)
        m = geo.minor
        counts = np.bincount(
            lookup_array(counter_digests(k, seed), n, omega), minlength=n
        )

        p_theory = prob_lowest_level(n, omega)
        p_emp = float(counts[m:].sum() / k)
        p_se = math.sqrt(p_theory * (1.0 - p_theory) / k)

        gap_theory = relative_gap(n, omega)
        gap_emp = float((counts[:m].mean() - counts[m:].mean()) / (k / n))
        # the two group means are linear in one binomial count, hence this SE
        gap_se = n * n / (m * (n - m)) * p_se

        structural = two_group_std_dev(n, k, omega)
        minor_mean, lowest_mean = expected_keys(n, k, omega)
        p_minor, p_lowest = minor_mean / k, lowest_mean / k
        sampling_var = (
            k / n * (m * p_minor * (1.0 - p_minor) + (n - m) * p_lowest * (1.0 - p_lowest))
        )
        sigma_pred = math.sqrt(structural**2 + sampling_var)
        sigma_emp = float(counts.std())

        rows.append(
            TheoryComparison(
                size=n,
                keys=k,
                prob_theory=p_theory,
                prob_empirical=p_emp,
                prob_se=p_se,
                prob_ok=abs(p_emp - p_theory) <= PROPORTION_SIGMAS * p_se,
                gap_theory=gap_theory,
                gap_empirical=gap_emp,
                gap_se=gap_se,
                gap_ok=abs(gap_emp - gap_theory) <= PROPORTION_SIGMAS * gap_se,
                sigma_predicted=sigma_pred,
                sigma_empirical=sigma_emp,
                sigma_ok=abs(sigma_emp**2 - sigma_pred**2) <= VARIANCE_BAND * sigma_pred**2,
            )
        )
    return rows
