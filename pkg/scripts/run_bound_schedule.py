#!/usr/bin/env python3
"""Log-scale table of the four reducible-count bound terms under the
vanishing schedule d = 2*sqrt(n+1)*ln(n), v = 3*log2(n).

Emits natural logs: linear values overflow quickly because the middle
terms grow like exp(4*sqrt(n)*(ln n)^2) before the b^-n factor wins;
at base 2 the crossover sits far beyond n = 10^5, so t2 and t4 increase
throughout any desk-scale sweep while t1 and t3 shrink.

Usage: python scripts/run_bound_schedule.py [--b B] [--nmax N]
"""

import argparse

from maxminpoly import stochastic


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b", type=int, default=2)
    ap.add_argument("--nmax", type=int, default=800)
    args = ap.parse_args()

    print("b,n,d,v,log_t1,log_t2,log_t3,log_t4")
    n = 50
    while n <= args.nmax:
        rep = stochastic.bound_terms(args.b, n, stochastic.default_params(n))
        logs = ",".join(f"{x:.3f}" for x in rep.log_terms)
        print(f"{args.b},{n},{rep.d:.3f},{rep.v:.3f},{logs}")
        n *= 2


if __name__ == "__main__":
    main()
