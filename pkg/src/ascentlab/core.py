"""Permutations and lattice paths, plus the basic statistics used everywhere else.

All positions are 1-indexed: ``p[k]`` in the docstrings below means the k-th
letter of the one-line word, so "first ascent at k" means ``p(k) < p(k+1)``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "LatticePath",
    "RlmDecomposition",
    "parse_permutation",
    "is_123_avoiding",
    "is_123_avoiding_reference",
    "first_ascent_position",
    "position_of_max",
    "right_to_left_maxima",
    "regular_descent_length",
]


@dataclass(frozen=True)
class Permutation:
    """A permutation of [n] in one-line notation (n >= 1)."""

    entries: tuple[int, ...]

    def __init__(self, entries: Iterable[int]):
        entries = tuple(int(x) for x in entries)
        n = len(entries)
        if n == 0:
            raise ValueError("permutation must have at least one letter")
        if sorted(entries) != list(range(1, n + 1)):
            raise ValueError(f"{entries} is not a permutation of 1..{n}")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def at(self, k: int) -> int:
        """Letter at 1-indexed position ``k``."""
        return self.entries[k - 1]

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.entries))
        return " ".join(map(str, self.entries))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"


def parse_permutation(text: str) -> Permutation:
    """Parse ``"76584213"``, ``"7 6 5 8"`` or ``"10,9,1,..."``.

    Contiguous digit strings are read one letter per digit, so that form
    only works for n <= 9.

    >>> parse_permutation("312").entries
    (3, 1, 2)
    >>> parse_permutation("10, 9 8,7,6,5,4,3,2,1").n
    10
    """
    text = text.strip()
    if not text:
        raise ValueError("empty permutation string")
    if re.fullmatch(r"\d+", text):
        return Permutation(int(c) for c in text)
    parts = [t for t in re.split(r"[\s,]+", text) if t]
    if not all(t.isdigit() for t in parts):
        raise ValueError(f"cannot parse permutation from {text!r}")
    return Permutation(int(t) for t in parts)


_STEP = {"E": (1, 0), "N": (0, 1)}


@dataclass(frozen=True)
class LatticePath:
    """Monotone path of unit East/North steps starting at ``start``.

    ``steps`` is a string over ``"EN"``. The textual form used for Dyck
    paths in the literature writes East as ``X`` and North as ``Y``; see
    :meth:`from_xy` and :meth:`to_xy`.
    """

    start: tuple[int, int]
    steps: str

    def __post_init__(self):
        if set(self.steps) - {"E", "N"}:
            raise ValueError(f"path steps must be over 'EN', got {self.steps!r}")
        object.__setattr__(self, "start", (int(self.start[0]), int(self.start[1])))

    @classmethod
    def from_xy(cls, text: str, start: tuple[int, int] = (0, 0)) -> LatticePath:
        text = text.strip().upper()
        if set(text) - {"X", "Y"}:
            raise ValueError(f"path string must be over 'XY', got {text!r}")
        return cls(start, text.replace("X", "E").replace("Y", "N"))

    def to_xy(self) -> str:
        return self.steps.replace("E", "X").replace("N", "Y")

    def points(self) -> list[tuple[int, int]]:
        """Every lattice point visited, start included."""
        x, y = self.start
        pts = [(x, y)]
        for s in self.steps:
            dx, dy = _STEP[s]
            x, y = x + dx, y + dy
            pts.append((x, y))
        return pts

    @property
    def end(self) -> tuple[int, int]:
        x, y = self.start
        e = self.steps.count("E")
        return (x + e, y + len(self.steps) - e)

    def is_good(self) -> bool:
        """True iff no visited point lies strictly above the diagonal y = x."""
        return all(y <= x for x, y in self.points())

    def is_dyck(self, n: int | None = None) -> bool:
        if self.start != (0, 0):
            return False
        ex, ey = self.end
        if ex != ey or (n is not None and ex != n):
            return False
        return self.is_good()

    @property
    def order(self) -> int:
        return self.steps.count("E")

    def __str__(self) -> str:
        return self.to_xy()


@dataclass(frozen=True)
class RlmDecomposition:
    """``p = w_s m_s ... w_1 m_1`` split at its right-to-left maxima.

    ``maxima`` holds ``(position, value)`` pairs left to right, so the first
    one is always the letter n and the last is always the final letter.
    ``words[i]`` is the (possibly empty) block immediately before
    ``maxima[i]``.
    """

    maxima: tuple[tuple[int, int], ...]
    words: tuple[tuple[int, ...], ...]

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.maxima)

    def reassemble(self) -> tuple[int, ...]:
        out: list[int] = []
        for word, (_, m) in zip(self.words, self.maxima):
            out.extend(word)
            out.append(m)
        return tuple(out)


def is_123_avoiding(p: Sequence[int]) -> bool:
    """Linear scan keeping the two smallest "increasing tails".

    ``low`` is the smallest letter seen; ``mid`` is the smallest letter seen
    that has something smaller before it. A letter above ``mid`` closes a 123.
    """
    low = mid = None
    for x in p:
        if mid is not None and x > mid:
            return False
        if low is None or x < low:
            low = x
        elif x > low and (mid is None or x < mid):
            mid = x
    return True


def is_123_avoiding_reference(p: Sequence[int]) -> bool:
    """Cubic triple scan; only for cross-checking :func:`is_123_avoiding`."""
    return not any(a < b < c for a, b, c in itertools.combinations(tuple(p), 3))


def first_ascent_position(p: Sequence[int]) -> int:
    """Smallest k with p(k) < p(k+1); n for the strictly decreasing permutation.

    >>> first_ascent_position((2, 1, 3)), first_ascent_position((3, 2, 1))
    (2, 3)
    """
    for i in range(len(p) - 1):
        if p[i] < p[i + 1]:
            return i + 1
    return len(p)


def position_of_max(p: Sequence[int]) -> int:
    return tuple(p).index(len(p)) + 1


def right_to_left_maxima(p: Sequence[int]) -> RlmDecomposition:
    entries = tuple(p)
    flags = [False] * len(entries)
    best = 0
    for i in range(len(entries) - 1, -1, -1):
        if entries[i] > best:
            best = entries[i]
            flags[i] = True
    maxima = []
    words = []
    word: list[int] = []
    for i, x in enumerate(entries):
        if flags[i]:
            maxima.append((i + 1, x))
            words.append(tuple(word))
            word = []
        else:
            word.append(x)
    return RlmDecomposition(tuple(maxima), tuple(words))


def regular_descent_length(p: Sequence[int]) -> int:
    """Length of the initial run n, n-1, n-2, ... (0 if p does not start with n)."""
    n = len(p)
    j = 0
    while j < n and p[j] == n - j:
        j += 1
    return j
