"""Command-line front end: lookup, benchmarks, balance, simulation, theory.

Subcommands emit RFC-4180-style CSV (header row, CRLF, '.' decimal
separator, full double precision) either to stdout or to --csv <path>.
Every run is deterministic given its flags, apart from wall-clock timing
fields.  The environment variable BINOMIAL_SEED, when set, overrides
--seed for all subcommands.  Exit codes: 0 success, 1 failure (invalid
sizes, consistency violations), 2 usage errors.
"""

import argparse
import csv
import os
import sys

from .batch import counter_digests
from .bench import time_lookups
from .engine import LookupParams, lookup_key, tree_geometry
from .simulate import balance_stats, check_resize, generate_keys
from .theory import balance_model, prob_lowest_level, sigma_max

DEFAULT_BENCH_SIZES = "10,100,1000,10000,100000"


def parse_sizes(text: str) -> list[int]:
    """Expand a size spec: comma-separated integers and inclusive a:b ranges."""
    sizes: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            lo_text, hi_text = token.split(":", 1)
            lo, hi = int(lo_text), int(hi_text)
            step = 1 if hi >= lo else -1
            sizes.extend(range(lo, hi + step, step))
        else:
            sizes.append(int(token))
    return sizes


def parse_walk(text: str) -> list[tuple[int, int]]:
    """Expand a walk spec into adjacent (n_from, n_to) steps.

    Legs are a:b tokens joined by commas; each leg walks one node at a time
    and consecutive legs must chain (the next leg starts where the previous
    one ended).
    """
    steps: list[tuple[int, int]] = []
    position: int | None = None
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        lo_text, _, hi_text = token.partition(":")
        start = int(lo_text)
        end = int(hi_text) if hi_text else start
        if position is not None and start != position:
            raise ValueError(f"walk legs must chain: leg starts at {start}, expected {position}")
        step = 1 if end >= start else -1
        for n_from in range(start, end, step):
            steps.append((n_from, n_from + step))
        position = end
    return steps


def _format_field(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: str | None, header: list[str], rows) -> None:
    handle = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_field(value) for value in row])
    finally:
        if path:
            handle.close()


def _cmd_lookup(args) -> int:
    params = LookupParams(omega=args.omega, seed=args.seed)
    print(lookup_key(args.key, args.nodes, params))
    return 0


def _cmd_bench_lookup(args) -> int:
    sizes = parse_sizes(args.nodes)
    digests = counter_digests(args.keys, args.seed)
    rows = []
    for n in sizes:
        tree_geometry(n)  # fail fast on invalid sizes before timing anything
        for timing in time_lookups(n, digests, omega=args.omega, repetitions=args.reps):
            rows.append((timing.size, timing.rep, timing.mean_ns, timing.p50_ns, timing.p99_ns))
    _write_csv(args.csv, ["n", "rep", "mean_ns", "p50_ns", "p99_ns"], rows)
    return 0


def _cmd_balance(args) -> int:
    sizes = parse_sizes(args.nodes)
    rows = []
    for n in sizes:
        keys = args.keys if args.keys is not None else args.mean_keys * n
        report = balance_stats(generate_keys(keys, args.seed), n, args.omega)
        theory_p = prob_lowest_level(n, args.omega) if n > 1 else 0.0
        mean = keys / n
        sigma_rel = report.empirical_sigma / mean if mean else 0.0
        rows.append(
            (n, report.min_relative, report.max_relative, sigma_rel, report.empirical_p, theory_p)
        )
    _write_csv(
        args.csv, ["n", "min_rel", "max_rel", "sigma_rel", "empirical_P", "theory_P"], rows
    )
    return 0


def _cmd_simulate(args) -> int:
    steps = parse_walk(args.walk)
    population = generate_keys(args.keys, args.seed)
    rows = []
    total_violations = 0
    for index, (n_from, n_to) in enumerate(steps):
        report = check_resize(population, n_from, n_to, args.omega)
        total_violations += report.violations
        rows.append((index, n_from, n_to, report.moved, report.violations))
    _write_csv(args.csv, ["step", "n_from", "n_to", "moved", "violations"], rows)
    if total_violations:
        print(f"error: {total_violations} consistency violations", file=sys.stderr)
        return 1
    return 0


def _cmd_theory(args) -> int:
    sizes = parse_sizes(args.nodes)
    rows = []
    for n in sizes:
        if n < 2:
            raise ValueError(f"theory table needs n >= 2, got {n}")
        model = balance_model(n, args.mean_keys * n, args.omega)
        minor = tree_geometry(n).minor
        n_star_ratio, _ = sigma_max(args.mean_keys, args.omega)
        flagged = n == round(n_star_ratio * minor)
        rows.append(
            (
                n,
                model.prob_lowest,
                model.minor_mean,
                model.lowest_mean,
                model.gap,
                model.sigma,
                flagged,
            )
        )
    _write_csv(
        args.csv, ["n", "P", "K", "K_prime", "gap", "sigma", "sigma_max_flag"], rows
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binomialhash",
        description="Constant-time consistent hashing: lookup, benchmarks, and model checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, seed=0, omega=6):
        p.add_argument("--omega", type=int, default=omega, help="rehash attempt budget")
        p.add_argument("--seed", type=lambda s: int(s, 0), default=seed, help="64-bit seed")

    p = sub.add_parser("lookup", help="map one key to its bucket")
    p.add_argument("key", help="key to look up (UTF-8)")
    p.add_argument("--nodes", type=int, required=True, help="cluster size n")
    add_common(p)
    p.set_defaults(func=_cmd_lookup)

    p = sub.add_parser("bench-lookup", help="time lookups across cluster sizes")
    p.add_argument("--nodes", default=DEFAULT_BENCH_SIZES, help="sizes (comma list or a:b)")
    p.add_argument("--keys", type=int, default=1_000_000, help="lookups per size")
    p.add_argument("--reps", type=int, default=3, help="timing repetitions (>= 3)")
    p.add_argument("--csv", default=None, help="CSV output path (default stdout)")
    add_common(p)
    p.set_defaults(func=_cmd_bench_lookup)

    p = sub.add_parser("balance", help="measured load distribution vs model")
    p.add_argument("--nodes", default="2:64", help="sizes (comma list or a:b)")
    p.add_argument("--keys", type=int, default=None, help="total keys per size")
    p.add_argument("--mean-keys", type=int, default=1000, help="keys per bucket (when --keys unset)")
    p.add_argument("--csv", default=None, help="CSV output path (default stdout)")
    add_common(p)
    p.set_defaults(func=_cmd_balance)

    p = sub.add_parser("simulate", help="replay a resize walk and audit key movement")
    p.add_argument("--walk", required=True, help="walk legs, e.g. 1:64,64:1")
    p.add_argument("--keys", type=int, default=100_000, help="population size")
    p.add_argument("--csv", default=None, help="CSV output path (default stdout)")
    add_common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("theory", help="closed-form balance table")
    p.add_argument("--nodes", default="2:64", help="sizes (comma list or a:b)")
    p.add_argument("--mean-keys", type=int, default=1000, help="keys per bucket")
    p.add_argument("--csv", default=None, help="CSV output path (default stdout)")
    add_common(p)
    p.set_defaults(func=_cmd_theory)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_seed = os.environ.get("BINOMIAL_SEED")
    if env_seed is not None and hasattr(args, "seed"):
        args.seed = int(env_seed, 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
