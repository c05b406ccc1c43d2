"""Seeded Monte-Carlo experiments over random coefficient vectors.

All randomness flows from numpy's PCG64 generator.  A run is split into
fixed-size trial chunks; chunk i draws from the i-th child of the seed
sequence, so results are bit-identical regardless of how chunks are
scheduled across workers.  Every report records the generator identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import census as census_mod
from . import factor
from .census import ALL_VECTORS, BoundParams, EXACT_DEGREE, SPACES
from .core import MaxMinPoly
from .errors import BudgetExceeded, LevelOutOfRange

GENERATOR_ID = "numpy.PCG64"
CHUNK = 2048


@dataclass(frozen=True, slots=True)
class ExperimentConfig:
    seed: int
    trials: int
    b: int
    n: int
    space: str = ALL_VECTORS

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.space not in SPACES:
            raise ValueError(f"unknown enumeration space {self.space!r}")


@dataclass(frozen=True, slots=True)
class TailReport:
    i: int
    epsilon: float
    empirical_tail: float
    hoeffding_bound: float
    trials: int
    generator: str = GENERATOR_ID


@dataclass(frozen=True, slots=True)
class DensityReport:
    estimate: float
    ci_low: float
    ci_high: float
    trials: int
    irreducible: int
    exhaustive: bool
    generator: str = GENERATOR_ID


@dataclass(frozen=True, slots=True)
class BoundReport:
    """The four normalized reducible-count bound terms, kept in log space.

    log_terms holds natural logs of
        t1 = n * exp(-d^2 / 4(n+1))
        t2 = v * n^(2d+1) * 2^v * b^-n
        t3 = n^2 * 2^-v
        t4 = n^(2d+3) * 2^(d/2 - n/3)
    which stay finite long after the linear values overflow a float.
    """

    b: int
    n: int
    d: float
    v: float
    log_terms: tuple[float, float, float, float]

    def term_values(self) -> tuple[float, float, float, float]:
        """Linear-scale terms; may overflow to inf for large parameters."""
        out = []
        for lt in self.log_terms:
            try:
                out.append(math.exp(lt))
            except OverflowError:
                out.append(math.inf)
        return tuple(out)


def _chunk_rngs(seed: int, trials: int) -> Iterator[tuple[np.random.Generator, int]]:
    n_chunks = (trials + CHUNK - 1) // CHUNK
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    for i, child in enumerate(children):
        size = min(CHUNK, trials - i * CHUNK)
        yield np.random.Generator(np.random.PCG64(child)), size


def _draw_digits(rng: np.random.Generator, rows: int, config: ExperimentConfig) -> np.ndarray:
    digits = rng.integers(0, config.b, size=(rows, config.n))
    if config.space == EXACT_DEGREE:
        digits[:, -1] = rng.integers(1, config.b, size=rows)
    return digits


def sample_stream(config: ExperimentConfig) -> Iterator[MaxMinPoly]:
    """The deterministic stream of sampled polynomials for a config."""
    for rng, size in _chunk_rngs(config.seed, config.trials):
        block = _draw_digits(rng, size, config)
        for row in block:
            yield MaxMinPoly(config.b, _trim_row(row))


def _trim_row(row: np.ndarray) -> tuple[int, ...]:
    end = len(row)
    while end and row[end - 1] == 0:
        end -= 1
    return tuple(int(c) for c in row[:end])


def sample_poly(config: ExperimentConfig) -> MaxMinPoly:
    """First draw of the config's stream (identical for identical configs)."""
    return next(sample_stream(config))


def hoeffding_bound(epsilon: float, n: int) -> float:
    return 2.0 * math.exp(-2.0 * epsilon * epsilon * n)


def hoeffding_experiment(config: ExperimentConfig, i: int, epsilon: float) -> TailReport:
    """Empirical frequency of | |f_i| - (b-i)n/b | > eps*n versus the bound."""
    b, n = config.b, config.n
    if not 1 <= i <= b - 1:
        raise LevelOutOfRange(f"level {i} outside 1..{b - 1}")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    mean = (b - i) * n / b
    threshold = epsilon * n
    hits = 0
    for rng, size in _chunk_rngs(config.seed, config.trials):
        block = _draw_digits(rng, size, config)
        support_sizes = (block >= i).sum(axis=1)
        hits += int(np.count_nonzero(np.abs(support_sizes - mean) > threshold))
    return TailReport(
        i=i,
        epsilon=epsilon,
        empirical_tail=hits / config.trials,
        hoeffding_bound=hoeffding_bound(epsilon, n),
        trials=config.trials,
    )


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return (lo, hi)


def _b2_irreducible(mask: int) -> bool:
    return mask & (mask - 1) != 0 and not factor._b2_reducible(mask)


def _density_chunk(job: tuple[int, int, int, int, str, int]) -> int:
    """Irreducible draws in one seed-derived trial chunk (order-free)."""
    seed, trials, b, n, space, chunk_idx = job
    config = ExperimentConfig(seed=seed, trials=trials, b=b, n=n, space=space)
    n_chunks = (trials + CHUNK - 1) // CHUNK
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    rng = np.random.Generator(np.random.PCG64(children[chunk_idx]))
    size = min(CHUNK, trials - chunk_idx * CHUNK)
    block = _draw_digits(rng, size, config)
    hits = 0
    if b == 2:
        powers = 1 << np.arange(n, dtype=object)
        for mask in block.astype(object) @ powers:
            if mask and _b2_irreducible(int(mask)):
                hits += 1
    else:
        for row in block:
            coeffs = _trim_row(row)
            if coeffs and factor._classify_generic(b, coeffs)[0] == factor.IRREDUCIBLE:
                hits += 1
    return hits


def density_experiment(config: ExperimentConfig, *, exhaustive: bool = False, threads: int = 1) -> DensityReport:
    """Fraction of irreducible draws with a 95% Wilson confidence interval.

    With exhaustive=True the full space is enumerated instead of sampled,
    reproducing the census fraction exactly (trials is ignored).  Trial
    chunks carry seed-derived substreams, so the result is independent of
    the worker count.
    """
    b, n = config.b, config.n
    if exhaustive:
        rec = census_mod.census(b, n, config.space)
        frac = rec.irreducible_fraction()
        lo, hi = wilson_interval(rec.irreducible, rec.total)
        return DensityReport(float(frac), lo, hi, rec.total, rec.irreducible, True)
    if b**n <= 1:
        raise BudgetExceeded("space too small to sample")
    n_chunks = (config.trials + CHUNK - 1) // CHUNK
    jobs = [
        (config.seed, config.trials, b, n, config.space, i) for i in range(n_chunks)
    ]
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            hits = sum(pool.map(_density_chunk, jobs))
    else:
        hits = sum(_density_chunk(job) for job in jobs)
    lo, hi = wilson_interval(hits, config.trials)
    return DensityReport(hits / config.trials, lo, hi, config.trials, hits, False)


def default_params(n: int) -> BoundParams:
    """The vanishing schedule d = 2*sqrt(n+1)*ln(n), v = 3*log2(n)."""
    if n < 2:
        raise ValueError("schedule requires n >= 2")
    d = 2.0 * math.sqrt(n + 1.0) * math.log(n)
    v = 3.0 * math.log2(n)
    return BoundParams(Fraction(d), Fraction(v))


def bound_terms(b: int, n: int, params: BoundParams) -> BoundReport:
    """Evaluate the four normalized bound terms in log space."""
    d = float(params.d)
    v = float(params.v)
    ln_n = math.log(n)
    ln_2 = math.log(2.0)
    log_t1 = ln_n - d * d / (4.0 * (n + 1.0))
    log_t2 = math.log(v) + (2.0 * d + 1.0) * ln_n + v * ln_2 - n * math.log(b)
    log_t3 = 2.0 * ln_n - v * ln_2
    log_t4 = (2.0 * d + 3.0) * ln_n + (d / 2.0 - n / 3.0) * ln_2
    return BoundReport(b, n, d, v, (log_t1, log_t2, log_t3, log_t4))
