#!/usr/bin/env python3
"""Partition-census report: class sizes against their explicit bounds.

Usage: python scripts/run_partition_report.py [--b B] [--nmax N]
       [--d D] [--v V]
"""

import argparse

from maxminpoly import census


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b", type=int, default=2)
    ap.add_argument("--nmax", type=int, default=10)
    ap.add_argument("--d", type=float, default=2.0)
    ap.add_argument("--v", type=float, default=2.0)
    args = ap.parse_args()

    params = census.BoundParams.make(args.d, args.v)
    header = ["b", "n", "sigma", "total"]
    header += [f"e{i}" for i in range(1, 8)]
    header += [f"bound{i}" for i in range(1, 8)]
    print(",".join(header))
    for n in range(2, args.nmax + 1):
        part = census.partition_census(args.b, n, params)
        row = [args.b, n, part.sigma, part.total]
        row += list(part.sizes)
        row += [f"{x:.4g}" for x in part.explicit_bounds]
        print(",".join(str(x) for x in row))


if __name__ == "__main__":
    main()
