"""Finite-truncation diagnostics for power series over max-min semirings.

A DigitStream is a truncated digit sequence together with valid_to, the
count of leading digits that are exact for derived products.  Since the
n-th product digit depends only on input digits at indices <= n, the
product of a stream with a finite polynomial keeps every truncated digit
exact; scans never read past the valid prefix, which keeps truncation
boundaries from producing false matches.

Occurrence counting is overlapping sliding-window counting throughout,
and window frequencies are reported against the window count, so a set
containing every length-r window has empirical frequency exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .core import MaxMinPoly, check_base
from .errors import BaseMismatch, InsufficientSupport, WindowTooShort

GENERATOR_ID = "numpy.PCG64"


@dataclass(frozen=True, slots=True)
class DigitStream:
    base: int
    digits: tuple[int, ...]
    valid_to: int

    def __post_init__(self) -> None:
        check_base(self.base)
        if not 0 <= self.valid_to <= len(self.digits):
            raise ValueError("valid_to must lie within the digit buffer")


def make_stream(b: int, digits: Iterable[int], valid_to: int | None = None) -> DigitStream:
    seq = tuple(int(d) for d in digits)
    for d in seq:
        if not 0 <= d < b:
            raise ValueError(f"digit {d} out of range for base {b}")
    return DigitStream(b, seq, len(seq) if valid_to is None else valid_to)


def random_stream(b: int, length: int, seed: int) -> DigitStream:
    """iid uniform digits from the seeded PCG64 generator."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return DigitStream(b, tuple(int(d) for d in rng.integers(0, b, size=length)), length)


def support_stream(stream: DigitStream) -> DigitStream:
    """Base-2 indicator stream of the nonzero digits."""
    return DigitStream(2, tuple(1 if d else 0 for d in stream.digits), stream.valid_to)


def product_stream(f: DigitStream, g: Union[MaxMinPoly, DigitStream]) -> DigitStream:
    """Max-min product; output digits are exact up to the returned valid_to."""
    if isinstance(g, MaxMinPoly):
        if f.base != g.base:
            raise BaseMismatch(f"bases differ: {f.base} vs {g.base}")
        n_out = f.valid_to
        gsup = [(j, c) for j, c in enumerate(g.coeffs) if c]
        out = []
        fd = f.digits
        for n in range(n_out):
            best = 0
            for j, c in gsup:
                if j > n:
                    break
                v = fd[n - j]
                if c < v:
                    v = c
                if v > best:
                    best = v
            out.append(best)
        return DigitStream(f.base, tuple(out), n_out)
    if f.base != g.base:
        raise BaseMismatch(f"bases differ: {f.base} vs {g.base}")
    n_out = min(f.valid_to, g.valid_to)
    fd, gd = f.digits, g.digits
    out = []
    for n in range(n_out):
        best = 0
        for k in range(n + 1):
            v = min(fd[k], gd[n - k])
            if v > best:
                best = v
        out.append(best)
    return DigitStream(f.base, tuple(out), n_out)


# -- occurrence counting -------------------------------------------------------


def count_occurrences(stream: DigitStream, s: Sequence[int]) -> int:
    """Overlapping occurrences of the digit string s in the valid prefix."""
    k = len(s)
    if k < 1:
        raise WindowTooShort("pattern must be nonempty")
    if k > stream.valid_to:
        raise WindowTooShort(f"pattern of length {k} exceeds valid prefix {stream.valid_to}")
    pat = tuple(s)
    d = stream.digits
    first = pat[0]
    count = 0
    for start in range(stream.valid_to - k + 1):
        if d[start] != first:
            continue
        if d[start : start + k] == pat:
            count += 1
    return count


@dataclass(frozen=True, slots=True)
class ZWindowSet:
    """Length-r windows whose digits are nonzero wherever g1_prefix is 1.

    There are (b-1)^k * b^(r-k) such windows; membership is tested per
    window in O(r) instead of materializing them.
    """

    g1_prefix: tuple[int, ...]
    r: int
    k: int

    def __post_init__(self) -> None:
        if len(self.g1_prefix) != self.r:
            raise ValueError("prefix length must equal the window length")
        if sum(1 for x in self.g1_prefix if x) != self.k:
            raise ValueError("k must count the ones of the prefix")

    def contains(self, window: Sequence[int]) -> bool:
        if len(window) != self.r:
            return False
        for flag, digit in zip(self.g1_prefix, window):
            if flag and digit == 0:
                return False
        return True

    def size(self, b: int) -> int:
        return (b - 1) ** self.k * b ** (self.r - self.k)

    def expected_frequency(self, b: int) -> Fraction:
        return Fraction(self.size(b), b**self.r)


def count_set_occurrences(stream: DigitStream, z: Union[ZWindowSet, Iterable[Sequence[int]]]) -> int:
    """Total overlapping occurrences of every window in z."""
    if isinstance(z, ZWindowSet):
        r = z.r
        if r > stream.valid_to:
            raise WindowTooShort(f"window length {r} exceeds valid prefix {stream.valid_to}")
        d = stream.digits
        prefix_ones = [j for j, flag in enumerate(z.g1_prefix) if flag]
        count = 0
        for start in range(stream.valid_to - r + 1):
            ok = True
            for j in prefix_ones:
                if d[start + j] == 0:
                    ok = False
                    break
            if ok:
                count += 1
        return count
    patterns = [tuple(p) for p in z]
    if not patterns:
        return 0
    lengths = {len(p) for p in patterns}
    if len(lengths) != 1:
        raise ValueError("all windows in an explicit set must share one length")
    (r,) = lengths
    if r < 1:
        raise WindowTooShort("windows must be nonempty")
    if r > stream.valid_to:
        raise WindowTooShort(f"window length {r} exceeds valid prefix {stream.valid_to}")
    pats = set(patterns)
    d = stream.digits
    return sum(1 for start in range(stream.valid_to - r + 1) if d[start : start + r] in pats)


# -- forbidden-string diagnostics ----------------------------------------------


def t1_forbidden_scan(h1: DigitStream, m: int) -> int:
    """Occurrences of the string 0^(m+1) 1 0^(m+1) in the valid prefix."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    pattern = (0,) * (m + 1) + (1,) + (0,) * (m + 1)
    return count_occurrences(h1, pattern)


def t1_isolation_check(h1: DigitStream, m: int) -> bool:
    """True iff every 1 early enough to see m digits ahead has another 1
    within distance m (on either side)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    d = h1.digits
    limit = h1.valid_to - m - 1
    for p in range(limit + 1):
        if not d[p]:
            continue
        lo = max(0, p - m)
        hi = min(h1.valid_to - 1, p + m)
        if not any(d[q] for q in range(lo, hi + 1) if q != p):
            return False
    return True


# -- interval-count measure bounds ----------------------------------------------


@dataclass(frozen=True, slots=True)
class T2Bound:
    b: int
    n: int
    lhs: Fraction
    rhs: float


def t2_ratio(b: int) -> float:
    return 1.94 * (b - 1) ** 0.2 / b


def _t2_rhs_fifth_power(b: int, n: int) -> Fraction:
    """Exact fifth power of n * (1.94 (b-1)^(1/5) / b)^n."""
    ratio5 = Fraction(97, 50) ** 5 * (b - 1)
    return Fraction(n) ** 5 * ratio5**n / Fraction(b) ** (5 * n)


def t2_measure_bound(b: int, n: int) -> T2Bound:
    """Exact interval-count bound b^-n * sum_{k<=n/5} (b-1)^k C(2n+2, k)
    against the closed-form tail envelope."""
    check_base(b)
    if n < 1:
        raise ValueError("n must be >= 1")
    total = sum((b - 1) ** k * math.comb(2 * n + 2, k) for k in range(n // 5 + 1))
    lhs = Fraction(total, b**n)
    return T2Bound(b, n, lhs, n * t2_ratio(b) ** n)


def t2_chain_check(b: int, n: int) -> bool:
    """lhs <= rhs, decided in exact rational arithmetic via fifth powers
    (the envelope's only irrational factor is a fifth root)."""
    bound = t2_measure_bound(b, n)
    return bound.lhs**5 <= _t2_rhs_fifth_power(b, n)


def t2_partial_sums(b: int, upto: int) -> list[float]:
    """Partial sums of sum_n n * ratio^n for n = 1..upto."""
    r = t2_ratio(b)
    out = []
    acc = 0.0
    term = 1.0
    for n in range(1, upto + 1):
        term *= r
        acc += n * term
        out.append(acc)
    return out


# -- window families for the normality contradiction ----------------------------


def choose_k(b: int) -> int:
    """Minimal k with ((b-1)/b)^k < 1/10, decided exactly."""
    check_base(b)
    k = 1
    while 10 * (b - 1) ** k >= b**k:
        k += 1
    return k


def choose_r(g: MaxMinPoly, k: int) -> int:
    """Minimal r with exactly k nonzero coefficients among g[0..r-1]."""
    if k < 1:
        raise ValueError("k must be >= 1")
    seen = 0
    for idx, c in enumerate(g.coeffs):
        if c:
            seen += 1
            if seen == k:
                return idx + 1
    raise InsufficientSupport(f"polynomial has {seen} < {k} nonzero coefficients")


def z_set(g: MaxMinPoly, r: int) -> ZWindowSet:
    """Window family covering the support of g's first r coefficients."""
    if r < 1:
        raise ValueError("r must be >= 1")
    prefix = tuple(1 if c else 0 for c in g.coeffs[:r])
    prefix = prefix + (0,) * (r - len(prefix))
    return ZWindowSet(prefix, r, sum(prefix))


def t3_window_invariant(f: DigitStream, g: Union[MaxMinPoly, DigitStream], z: ZWindowSet) -> bool:
    """Every window of the product starting under a nonzero digit of f is
    a member of z (built from g's support prefix)."""
    h = product_stream(f, g)
    r = z.r
    if r > h.valid_to:
        raise WindowTooShort(f"window length {r} exceeds valid prefix {h.valid_to}")
    fd, hd = f.digits, h.digits
    for s in range(min(f.valid_to, h.valid_to) - r + 1):
        if fd[s] and not z.contains(hd[s : s + r]):
            return False
    return True


@dataclass(frozen=True, slots=True)
class FrequencyReport:
    empirical: float
    normal_expectation: float
    windows: int
    occurrences: int


def z_frequency_report(h: DigitStream, z: Union[ZWindowSet, Iterable[Sequence[int]]]) -> FrequencyReport:
    """Empirical window-family frequency versus the equidistribution value.

    No verdict is attached: normality of a finite stream is undecidable,
    so both numbers are simply reported.
    """
    if isinstance(z, ZWindowSet):
        r = z.r
        expectation = float(z.expected_frequency(h.base))
    else:
        z = [tuple(p) for p in z]
        lengths = {len(p) for p in z}
        if len(lengths) != 1:
            raise ValueError("all windows in an explicit set must share one length")
        (r,) = lengths
        expectation = len(set(z)) / h.base**r
    occurrences = count_set_occurrences(h, z)
    windows = h.valid_to - r + 1
    return FrequencyReport(occurrences / windows, expectation, windows, occurrences)


# -- stream files ---------------------------------------------------------------


def write_stream(path, stream: DigitStream) -> None:
    """Two-line text format: 'b N' then N space-separated digits."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{stream.base} {len(stream.digits)}\n")
        fh.write(" ".join(str(d) for d in stream.digits) + "\n")


def read_stream(path) -> DigitStream:
    with open(path, encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("stream file must start with 'b N'")
        b, n = int(header[0]), int(header[1])
        digits = [int(tok) for tok in fh.readline().split()]
    if len(digits) != n:
        raise ValueError(f"stream file declares {n} digits but carries {len(digits)}")
    return make_stream(b, digits)
