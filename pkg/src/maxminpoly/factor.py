"""Exact divisibility, factorization search and irreducibility/primality
classification over max-min polynomial semirings.

Division uses residuation: for a fixed divisor g the set of f with
f*g <= h (coefficientwise) has a maximum f*, computable per coefficient as

    f*[i] = min over j of ( h[i+j]  if g[j] > h[i+j]  else  b-1 ).

g divides h exactly when f* * g == h, and any exact quotient is <= f*
pointwise, so checking the single maximal candidate decides divisibility.

A polynomial is irreducible when every factorization has a monomial
factor.  The witness search enumerates candidate divisors g with
1 <= deg g <= floor(deg h / 2) in (degree, lexicographic) order over the
little-endian coefficient tuples, prunes candidates whose boolean support
fails to divide the support of h, and returns the first verified witness,
which makes classification deterministic.  Base-2 polynomials run on a
packed-bitmask path; both paths enumerate identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import core
from .core import MaxMinPoly, mul_coeffs, support_mask
from .errors import (
    BaseMismatch,
    DegreeTooLarge,
    ZeroDivisor,
    ZeroPolynomial,
)

MONOMIAL = "monomial"
IRREDUCIBLE = "irreducible"
REDUCIBLE = "reducible"

PRIME = "prime"
COMPOSITE_CANDIDATE = "composite-candidate"
NOT_CANDIDATE = "not-candidate"

REASON_ZERO_POLY = "zero-polynomial"
REASON_ZERO_CONSTANT = "zero-constant-term"
REASON_MAX_BELOW = "max-coefficient-below-b-1"


@dataclass(frozen=True, slots=True)
class FactorWitness:
    """A verified non-monomial factorization, ordered deg g <= deg h
    (ties broken lexicographically on coefficient tuples)."""

    g: MaxMinPoly
    h: MaxMinPoly

    def as_pair(self) -> tuple[MaxMinPoly, MaxMinPoly]:
        return (self.g, self.h)


def make_witness(product: MaxMinPoly, a: MaxMinPoly, b: MaxMinPoly) -> FactorWitness:
    """Normalize and validate a factorization of `product` into (a, b)."""
    if core.is_monomial(a) or core.is_monomial(b):
        raise ValueError("witness factors must be non-monomial")
    if core.mul(a, b) != product:
        raise ValueError("witness factors do not multiply to the target")
    key_a = (len(a.coeffs), a.coeffs)
    key_b = (len(b.coeffs), b.coeffs)
    if key_b < key_a:
        a, b = b, a
    return FactorWitness(a, b)


@dataclass(frozen=True, slots=True)
class Classification:
    kind: str  # MONOMIAL | IRREDUCIBLE | REDUCIBLE
    witness: Optional[FactorWitness] = None


@dataclass(frozen=True, slots=True)
class PrimeStatus:
    kind: str  # PRIME | COMPOSITE_CANDIDATE | NOT_CANDIDATE
    witness: Optional[FactorWitness] = None
    reason: Optional[str] = None


def candidate_reason(f: MaxMinPoly) -> Optional[str]:
    """Why f fails the prime-candidate test, or None if it passes."""
    if f.is_zero():
        return REASON_ZERO_POLY
    if f.coeffs[0] == 0:
        return REASON_ZERO_CONSTANT
    if max(f.coeffs) < f.base - 1:
        return REASON_MAX_BELOW
    return None


def is_prime_candidate(f: MaxMinPoly) -> bool:
    """Nonzero constant term and maximum coefficient b-1."""
    return candidate_reason(f) is None


# -- residuation ------------------------------------------------------------


def residual_coeffs(b: int, h: Sequence[int], g: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Exact quotient of raw canonical tuples, or None.

    Requires h, g nonzero canonical with len(g) <= len(h).
    """
    dh = len(h) - 1
    dg = len(g) - 1
    df = dh - dg
    top = b - 1
    gsup = [(j, bj) for j, bj in enumerate(g) if bj]
    q = []
    for i in range(df + 1):
        lim = top
        for j, bj in gsup:
            gamma = h[i + j]
            if bj > gamma and gamma < lim:
                lim = gamma
        q.append(lim)
    if q[df] == 0:
        return None
    if mul_coeffs(q, g) != tuple(h):
        return None
    return tuple(q)


def _b2_quotient(h: int, g: int) -> Optional[int]:
    """Exact quotient of base-2 bitmask polynomials, or None."""
    df = (h.bit_length() - 1) - (g.bit_length() - 1)
    q = (1 << (df + 1)) - 1
    gg = g
    j = 0
    while gg:
        if gg & 1:
            q &= h >> j
        gg >>= 1
        j += 1
    prod = 0
    gg = g
    j = 0
    while gg:
        if gg & 1:
            prod |= q << j
        gg >>= 1
        j += 1
    return q if prod == h else None


def residual_divide(h: MaxMinPoly, g: MaxMinPoly) -> Optional[MaxMinPoly]:
    """Maximal f with f*g <= h if it divides exactly, else None."""
    if g.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    if h.is_zero():
        raise ZeroPolynomial("dividend must be nonzero")
    if h.base != g.base:
        raise BaseMismatch(f"bases differ: {h.base} vs {g.base}")
    if len(g.coeffs) > len(h.coeffs):
        raise DegreeTooLarge("divisor degree exceeds dividend degree")
    if h.base == 2:
        q = _b2_quotient(support_mask(h.coeffs), support_mask(g.coeffs))
        return None if q is None else _poly_from_mask(q)
    q = residual_coeffs(h.base, h.coeffs, g.coeffs)
    return None if q is None else MaxMinPoly(h.base, q)


def divides(g: MaxMinPoly, h: MaxMinPoly) -> bool:
    """True iff g divides h exactly (False when deg g > deg h)."""
    if g.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    if h.is_zero():
        raise ZeroPolynomial("dividend must be nonzero")
    if h.base != g.base:
        raise BaseMismatch(f"bases differ: {h.base} vs {g.base}")
    if len(g.coeffs) > len(h.coeffs):
        return False
    return residual_divide(h, g) is not None


# -- candidate divisors for the witness search ------------------------------


def _mask_lex_key(g: int, dg: int) -> tuple[int, ...]:
    return tuple((g >> j) & 1 for j in range(dg + 1))


def _b2_candidate_masks(h: int, dg: int) -> list[int]:
    """Non-monomial degree-dg bitmasks that can divide h, in lex order.

    Every divisor g of h satisfies ord(g) <= ord(h) and, writing
    t = ord(h), supp(g) shifted by (t - ord(g)) sits inside supp(h).
    """
    t = (h & -h).bit_length() - 1
    top = 1 << dg
    cands: list[int] = []
    for og in range(0, min(t, dg - 1) + 1):
        allowed = h >> (t - og)
        if not (allowed >> og) & 1 or not (allowed >> dg) & 1:
            continue
        middle = allowed & (top - 1) & ~((1 << (og + 1)) - 1)
        bm = (1 << og) | top
        sub = middle
        while True:
            cands.append(bm | sub)
            if sub == 0:
                break
            sub = (sub - 1) & middle
    cands.sort(key=lambda g: _mask_lex_key(g, dg))
    return cands


def _b2_classify(h: int) -> tuple[str, Optional[tuple[int, int]]]:
    """Classify a base-2 bitmask polynomial; witness as (g, q) masks."""
    if h & (h - 1) == 0:
        return (MONOMIAL, None)
    dh = h.bit_length() - 1
    for dg in range(1, dh // 2 + 1):
        for g in _b2_candidate_masks(h, dg):
            q = _b2_quotient(h, g)
            if q is not None and q & (q - 1):
                return (REDUCIBLE, (g, q))
    return (IRREDUCIBLE, None)


def _b2_reducible_dfs(h: int, q: int, g: int, bits: tuple[int, ...], idx: int) -> bool:
    """DFS over optional divisor-support bits with an accumulated quotient.

    q is the AND of (h >> j) over the bits already in g; adding bits only
    shrinks it, so a quotient already down to one bit prunes the subtree.
    """
    if not q & (q - 1):
        return False
    if idx == len(bits):
        prod = 0
        gg = g
        j = 0
        while gg:
            if gg & 1:
                prod |= q << j
            gg >>= 1
            j += 1
        return prod == h
    if _b2_reducible_dfs(h, q, g, bits, idx + 1):
        return True
    j = bits[idx]
    return _b2_reducible_dfs(h, q & (h >> j), g | (1 << j), bits, idx + 1)


def _b2_reducible(h: int) -> bool:
    """Order-free reducibility test for a base-2 bitmask polynomial.

    Same outcome as _b2_classify(h)[0] == REDUCIBLE, without the witness
    bookkeeping; used on enumeration and sampling hot paths.
    """
    if h & (h - 1) == 0:
        return False
    dh = h.bit_length() - 1
    t = (h & -h).bit_length() - 1
    for dg in range(1, dh // 2 + 1):
        qmask = (1 << (dh - dg + 1)) - 1
        for og in range(min(t, dg - 1) + 1):
            allowed = h >> (t - og)
            if not (allowed >> og) & 1 or not (allowed >> dg) & 1:
                continue
            middle = allowed & ((1 << dg) - 1) & ~((1 << (og + 1)) - 1)
            bits = []
            j = og + 1
            mm = middle >> j
            while mm:
                if mm & 1:
                    bits.append(j)
                mm >>= 1
                j += 1
            q0 = qmask & (h >> og) & (h >> dg)
            if _b2_reducible_dfs(h, q0, (1 << og) | (1 << dg), tuple(bits), 0):
                return True
    return False


def _candidate_divisors(b: int, h: Sequence[int], dg: int) -> list[tuple[int, ...]]:
    """Non-monomial degree-dg coefficient tuples that can divide h, lex order.

    Prunes by: support shift-containment in supp(h); boolean divisibility
    of the supports; leading coefficient >= lead(h); some coefficient
    >= max(h); constant term >= h[0] when applicable.
    """
    h1 = support_mask(h)
    maxh = max(h)
    leadh = h[-1]
    supports = set()
    for s in _b2_candidate_masks(h1, dg):
        if _b2_quotient(h1, s) is not None:
            supports.add(s)
    cands: list[tuple[int, ...]] = []
    for s in sorted(supports):
        positions = [j for j in range(dg + 1) if (s >> j) & 1]
        lows = [1] * len(positions)
        if positions[0] == 0 and h[0] > 0:
            lows[0] = h[0]
        lows[-1] = max(lows[-1], leadh)

        def rec(idx: int, current: list[int], has_max: bool) -> None:
            if idx == len(positions):
                if has_max:
                    cands.append(tuple(current))
                return
            pos = positions[idx]
            last = idx == len(positions) - 1
            for v in range(lows[idx], b):
                current[pos] = v
                ok = has_max or v >= maxh
                if ok or not last:
                    rec(idx + 1, current, ok)
            current[pos] = 0

        rec(0, [0] * (dg + 1), False)
    cands.sort()
    return cands


def _classify_generic(b: int, h: Sequence[int]) -> tuple[str, Optional[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Classify a raw canonical nonzero coefficient tuple over base b."""
    nz = sum(1 for c in h if c)
    if nz == 1:
        return (MONOMIAL, None)
    dh = len(h) - 1
    for dg in range(1, dh // 2 + 1):
        for g in _candidate_divisors(b, h, dg):
            q = residual_coeffs(b, h, g)
            if q is not None and sum(1 for c in q if c) >= 2:
                return (REDUCIBLE, (g, q))
    return (IRREDUCIBLE, None)


def _poly_from_mask(m: int) -> MaxMinPoly:
    return MaxMinPoly(2, tuple((m >> j) & 1 for j in range(m.bit_length())))


def classify_irreducible(h: MaxMinPoly) -> Classification:
    """Monomial, Irreducible, or Reducible with the first witness found."""
    if h.is_zero():
        raise ZeroPolynomial("cannot classify the zero polynomial")
    if h.base == 2:
        kind, wit = _b2_classify(support_mask(h.coeffs))
        if wit is None:
            return Classification(kind)
        g, q = wit
        return Classification(REDUCIBLE, make_witness(h, _poly_from_mask(g), _poly_from_mask(q)))
    kind, witt = _classify_generic(h.base, h.coeffs)
    if witt is None:
        return Classification(kind)
    g, q = witt
    return Classification(
        REDUCIBLE,
        make_witness(h, MaxMinPoly(h.base, g), MaxMinPoly(h.base, q)),
    )


def classify_prime(h: MaxMinPoly) -> PrimeStatus:
    """Prime status per the candidate test plus irreducibility.

    Non-candidates are reported with their disqualifying reason.  For a
    candidate, every factorization either has a constant-(b-1) factor or
    is a non-monomial pair (nonzero constant term rules out x^j factors,
    maximum coefficient b-1 rules out constants below b-1), so a candidate
    is prime exactly when it is irreducible; the candidate monomial is the
    constant b-1 itself, whose only factorizations are by b-1.
    """
    if h.is_zero():
        raise ZeroPolynomial("cannot classify the zero polynomial")
    reason = candidate_reason(h)
    if reason is not None:
        return PrimeStatus(NOT_CANDIDATE, reason=reason)
    cls = classify_irreducible(h)
    if cls.kind == REDUCIBLE:
        return PrimeStatus(COMPOSITE_CANDIDATE, witness=cls.witness)
    return PrimeStatus(PRIME)


# -- exhaustive factorization listings ---------------------------------------


def _cofactors(b: int, h: Sequence[int], g: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All non-monomial f with f*g == h, in lex order."""
    qmax = residual_coeffs(b, h, g)
    if qmax is None:
        return
    df = len(h) - len(g)
    target = tuple(h)

    def rec(idx: int, current: list[int]) -> Iterator[tuple[int, ...]]:
        if idx == df + 1:
            f = tuple(current)
            if sum(1 for c in f if c) >= 2 and mul_coeffs(f, g) == target:
                yield f
            return
        low = 1 if idx == df else 0
        for v in range(low, qmax[idx] + 1):
            current[idx] = v
            yield from rec(idx + 1, current)
        current[idx] = 0

    yield from rec(0, [0] * (df + 1))


def all_factorizations(h: MaxMinPoly, max_results: Optional[int] = None) -> list[FactorWitness]:
    """Every non-monomial x non-monomial factorization of h, deduplicated
    as unordered pairs and listed in (deg g, g, f) lexicographic order."""
    if h.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    out: list[FactorWitness] = []
    if core.is_monomial(h):
        return out
    b = h.base
    hc = h.coeffs
    dh = len(hc) - 1
    for dg in range(1, dh // 2 + 1):
        df = dh - dg
        for g in _candidate_divisors(b, hc, dg):
            for f in _cofactors(b, hc, g):
                if dg == df and f < g:
                    continue
                out.append(FactorWitness(MaxMinPoly(b, g), MaxMinPoly(b, f)))
                if max_results is not None and len(out) >= max_results:
                    return out
    return out
