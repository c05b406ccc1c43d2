#!/usr/bin/env python3
"""Regenerate the offline base-2 prime-count snapshot.

Counts primes per digit length under the classical unrestricted
convention: a nonzero digit string is prime when every factorization
carries the multiplicative identity (the constant 1 in base 2) as a
factor, the identity itself excluded.  Computed by marking every product
f*g with f, g != 1, where the base-2 max-min product of bitmasks is the
OR of shifted copies; no package code is involved, so the file doubles
as an independent cross-check of the census pipeline.

Usage: python scripts/make_oeis_snapshot.py [MAX_LEN] [OUT_FILE]
"""

import sys
import time
from pathlib import Path

DEFAULT_MAX_LEN = 20
DEFAULT_OUT = Path(__file__).resolve().parent.parent / "src" / "maxminpoly" / "data" / "a169912_snapshot.txt"


def raw_prime_counts_base2(max_len: int) -> dict[int, int]:
    max_deg = max_len - 1
    composite = bytearray(1 << max_len)
    for m in range(max_deg + 1):
        for dg in range(m // 2 + 1):
            df = m - dg
            for g in range(1 << dg, 1 << (dg + 1)):
                if g == 1:
                    continue
                for f in range(1 << df, 1 << (df + 1)):
                    if f == 1:
                        continue
                    prod = 0
                    gg = g
                    j = 0
                    while gg:
                        if gg & 1:
                            prod |= f << j
                        gg >>= 1
                        j += 1
                    composite[prod] = 1
    counts = {}
    for n in range(1, max_len + 1):
        counts[n] = sum(
            1 for mask in range(1 << (n - 1), 1 << n) if not composite[mask] and mask != 1
        )
    return counts


def main() -> None:
    max_len = int(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_MAX_LEN
    out = Path(sys.argv[2]) if len(sys.argv) > 2 else DEFAULT_OUT
    t0 = time.time()
    counts = raw_prime_counts_base2(max_len)
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        "# Base-2 primes by digit length, classical convention (every",
        "# factorization carries the identity constant 1; the identity itself",
        "# is excluded).  Offline fallback for the published sequence; see",
        "# scripts/make_oeis_snapshot.py for the generating procedure.",
    ]
    lines += [f"{n} {counts[n]}" for n in sorted(counts)]
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out} (max_len={max_len}) in {time.time() - t0:.1f}s")
    print(counts)


if __name__ == "__main__":
    main()
