"""Seeded uniform samplers and Monte Carlo first-ascent estimates.

Randomness comes from numpy's PCG64 bit generator. A Monte Carlo run of
``trials`` draws is cut into fixed blocks of ``BLOCK`` trials; block ``b`` is
driven by ``SeedSequence(seed, spawn_key=(b,))``. Worker count only decides
who runs which block, so results depend on (seed, trials) alone.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bijections import krattenthaler_from_path
from .core import LatticePath, Permutation

BLOCK = 10_000
POPULATIONS = ("all_perms", "avoiders")
SEED_ENV = "ASCENTLAB_SEED"


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def _rng(seed) -> np.random.Generator:
    # Passing a Generator through lets callers draw many samples from one stream.
    return np.random.default_rng(seed)


def sample_uniform_permutation(n: int, seed) -> Permutation:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Permutation(_rng(seed).permutation(n) + 1)


def cycle_lemma_conjugate(words: np.ndarray) -> np.ndarray:
    """Map rows with n East (+1) and n+1 North (-1) steps to Dyck words.

    Exactly one rotation of such a row keeps every proper prefix sum >= 0: the
    one starting right after the first place the running sum hits its minimum.
    Dropping that rotation's final North step leaves a Dyck word. Every Dyck
    word has exactly 2n+1 preimages, so uniform rows give uniform paths.
    """
    length = words.shape[1]
    start = np.argmin(np.cumsum(words, axis=1), axis=1) + 1
    idx = (start[:, None] + np.arange(length)[None, :]) % length
    return np.take_along_axis(words, idx, axis=1)[:, :-1]


def _dyck_words(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` uniform Dyck words of order n as rows of +1 (East) / -1 (North)."""
    base = np.concatenate([np.ones(n, dtype=np.int8), -np.ones(n + 1, dtype=np.int8)])
    return cycle_lemma_conjugate(rng.permuted(np.tile(base, (size, 1)), axis=1))


def _as_steps(row: np.ndarray) -> str:
    return np.where(row > 0, ord("E"), ord("N")).astype(np.uint8).tobytes().decode("ascii")


def decode_dyck_batch(words: np.ndarray) -> np.ndarray:
    """Vectorized inverse Krattenthaler map on rows of +1/-1 Dyck words.

    The i-th East step is the i-th letter. It is a right-to-left maximum iff a
    North step follows, with value n minus the North steps before it; the other
    letters take the leftover values in descending order.
    """
    size, length = words.shape
    n = length // 2
    east = np.nonzero(words > 0)[1].reshape(size, n)
    north_before = east - np.arange(n)[None, :]
    is_max = np.take_along_axis(words, east + 1, axis=1) < 0
    max_val = n - north_before
    rows = np.arange(size)[:, None]
    taken = np.zeros((size, n + 1), dtype=bool)
    taken[np.broadcast_to(rows, (size, n))[is_max], max_val[is_max]] = True
    desc = np.arange(n, 0, -1)
    # Stable sort puts the free values first, still in descending order.
    order = np.argsort(taken[:, ::-1][:, :n], axis=1, kind="stable")
    free_desc = desc[order]
    rank = np.cumsum(~is_max, axis=1) - 1
    free_val = np.take_along_axis(free_desc, np.clip(rank, 0, n - 1), axis=1)
    return np.where(is_max, max_val, free_val)


def _first_ascents(perms: np.ndarray) -> np.ndarray:
    n = perms.shape[1]
    if n == 1:
        return np.ones(perms.shape[0], dtype=np.int64)
    asc = perms[:, :-1] < perms[:, 1:]
    return np.where(asc.any(axis=1), asc.argmax(axis=1) + 1, n)


def sample_dyck_path(n: int, seed) -> LatticePath:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return LatticePath((0, 0), _as_steps(_dyck_words(n, 1, _rng(seed))[0]))


def sample_uniform_avoider(n: int, seed) -> Permutation:
    """Uniform 123-avoider of [n]: uniform Dyck path, then the inverse bijection."""
    return krattenthaler_from_path(sample_dyck_path(n, seed))


def sample_uniform_avoiders(n: int, size: int, seed) -> list[Permutation]:
    """Batch version of :func:`sample_uniform_avoider` (one shared stream)."""
    return [Permutation(p) for p in decode_dyck_batch(_dyck_words(n, size, _rng(seed)))]


@dataclass
class SampleStats:
    trials: int
    mean: float
    variance: float
    histogram: dict[int, int] = field(default_factory=dict)
    seed: int = 0
    n: int = 0
    population: str = ""

    @classmethod
    def from_histogram(cls, histogram, *, seed: int, n: int, population: str) -> SampleStats:
        hist = dict(sorted(histogram.items()))
        trials = sum(hist.values())
        mean = Fraction(sum(k * c for k, c in hist.items()), trials)
        second = Fraction(sum(k * k * c for k, c in hist.items()), trials)
        # Population (ddof = 0) variance of the sample.
        return cls(trials, float(mean), float(second - mean * mean), hist, seed, n, population)

    @property
    def standard_error(self) -> float:
        return (self.variance / self.trials) ** 0.5

    def to_json(self) -> str:
        return json.dumps({
            "population": self.population,
            "n": self.n,
            "seed": self.seed,
            "trials": self.trials,
            "mean": repr(self.mean),
            "variance": repr(self.variance),
            "histogram": {str(k): c for k, c in self.histogram.items()},
        })

    @classmethod
    def from_json(cls, text: str) -> SampleStats:
        d = json.loads(text)
        return cls(
            d["trials"], float(d["mean"]), float(d["variance"]),
            {int(k): c for k, c in d["histogram"].items()},
            d["seed"], d["n"], d["population"],
        )


def _block_counts(args) -> Counter:
    n, size, population, seed, block = args
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))
    if population == "all_perms":
        perms = rng.permuted(np.tile(np.arange(n), (size, 1)), axis=1)
    else:
        perms = decode_dyck_batch(_dyck_words(n, size, rng))
    k = _first_ascents(perms)
    return Counter({int(v): int(c) for v, c in zip(*np.unique(k, return_counts=True))})


def monte_carlo_first_ascent(
    n: int, trials: int, population: str = "all_perms", seed: int = 0, *, jobs: int = 1
) -> SampleStats:
    """Histogram of first-ascent positions over ``trials`` uniform draws."""
    if n < 1 or trials < 1:
        raise ValueError(f"need n >= 1 and trials >= 1, got n={n}, trials={trials}")
    if population not in POPULATIONS:
        raise ValueError(f"population must be one of {POPULATIONS}, got {population!r}")
    tasks = [
        (n, min(BLOCK, trials - start), population, seed, b)
        for b, start in enumerate(range(0, trials, BLOCK))
    ]
    total: Counter = Counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for c in pool.map(_block_counts, tasks):
                total.update(c)
    else:
        for t in tasks:
            total.update(_block_counts(t))
    return SampleStats.from_histogram(total, seed=seed, n=n, population=population)
