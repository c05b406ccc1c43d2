#!/usr/bin/env python3
"""Irreducible-density sweep over the vector length n.

Exhaustive fractions where the space is small enough, seeded Monte-Carlo
estimates with Wilson intervals beyond that.  Emits CSV on stdout.

Usage: python scripts/run_density_sweep.py [--b B] [--seed S] [--trials T]
       [--nmax N] [--exhaustive-limit L]
"""

import argparse

from maxminpoly import stochastic


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b", type=int, default=2)
    ap.add_argument("--seed", type=int, default=20250809)
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--nmax", type=int, default=32)
    ap.add_argument("--exhaustive-limit", type=int, default=1 << 16)
    args = ap.parse_args()

    print("b,n,mode,estimate,ci_low,ci_high,samples")
    n = 2
    while n <= args.nmax:
        config = stochastic.ExperimentConfig(
            seed=args.seed, trials=args.trials, b=args.b, n=n
        )
        exhaustive = args.b**n <= args.exhaustive_limit
        rep = stochastic.density_experiment(config, exhaustive=exhaustive)
        mode = "exhaustive" if exhaustive else "sampled"
        print(
            f"{args.b},{n},{mode},{rep.estimate:.6f},{rep.ci_low:.6f},"
            f"{rep.ci_high:.6f},{rep.trials}"
        )
        n *= 2


if __name__ == "__main__":
    main()
