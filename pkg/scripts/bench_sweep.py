#!/usr/bin/env python3
"""Sweep transform lengths for one modulus and record direct-vs-fast timings.

Writes the same CSV schema as `exactntt bench` with one pair of rows per
length, plus a human summary of the crossover point on stderr.

    python scripts/bench_sweep.py --modulus 319489 --max-log2 12 --out sweep.csv
"""

import argparse
import sys

from exactntt.bench import CSV_HEADER, direct_over_fast_ratio, run_benchmark
from exactntt.registry import find_modulus


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--modulus", type=int, default=319489)
    parser.add_argument("--max-log2", type=int, default=12)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--kernel", choices=("mul", "shift"), default="mul")
    parser.add_argument("--out", default="-", help="CSV path (default stdout)")
    args = parser.parse_args()

    entry = find_modulus(args.modulus)
    rows = []
    ratios = {}
    for k in range(1, args.max_log2 + 1):
        n = 1 << k
        if not entry.admits_length(n):
            print(f"skipping N=2^{k}: exceeds n_max={entry.n_max}", file=sys.stderr)
            break
        results = run_benchmark(n, entry, kernels=(args.kernel,), repeats=args.repeats)
        rows.extend(results)
        ratios[k] = direct_over_fast_ratio(results, args.kernel)
        print(f"N=2^{k:<2} direct/fast = {ratios[k]:6.2f}", file=sys.stderr)

    stream = sys.stdout if args.out == "-" else open(args.out, "w")
    try:
        print(CSV_HEADER, file=stream)
        for row in rows:
            print(row.csv_row(), file=stream)
    finally:
        if stream is not sys.stdout:
            stream.close()

    crossover = next((k for k, r in sorted(ratios.items()) if r > 1), None)
    if crossover is not None:
        print(f"fast path wins from N=2^{crossover} on", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
