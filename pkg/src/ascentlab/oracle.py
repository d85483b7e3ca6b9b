"""Ground-truth enumeration of 123-avoiding permutations.

Two generators that share nothing but the avoidance test: a brute-force filter
over all n! permutations, and the insertion growth rule (put the letter n into
any of the first k+1 slots of an avoider of [n-1] whose first ascent is k).
"""
from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator

from .core import Permutation, first_ascent_position, is_123_avoiding

BRUTEFORCE_CAP = 9
GROW_CAP = 18


def enumerate_avoiders_bruteforce(n: int) -> Iterator[Permutation]:
    """All avoiders of [n] in lexicographic order, by filtering every permutation."""
    if not 1 <= n <= BRUTEFORCE_CAP:
        raise ValueError(f"brute-force enumeration needs 1 <= n <= {BRUTEFORCE_CAP}, got {n}")
    for p in permutations(range(1, n + 1)):
        if is_123_avoiding(p):
            yield Permutation(p)


def insert_max(p: tuple[int, ...], slot: int) -> tuple[int, ...]:
    """Insert the letter len(p)+1 so that it becomes the ``slot``-th letter (1-indexed)."""
    return p[:slot - 1] + (len(p) + 1,) + p[slot - 1:]


def _children(p: tuple[int, ...], k: int):
    # Slot 1 pushes the old first ascent to k+1; slot i >= 2 makes n the top of
    # an ascent at i-1. Slots beyond k+1 would create a 123.
    yield insert_max(p, 1), k + 1
    for slot in range(2, k + 2):
        yield insert_max(p, slot), slot - 1


def _grow_subtree(root: tuple[int, ...], k: int, n: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Depth-first growth of ``root`` up to length n; yields (perm, first ascent)."""
    if len(root) == n:
        yield root, k
        return
    stack = [(root, k)]
    while stack:
        p, pk = stack.pop()
        if len(p) + 1 == n:
            yield from _children(p, pk)
        else:
            # Reverse so children come off the stack in slot order.
            stack.extend(reversed(list(_children(p, pk))))


def grow_avoiders(n: int) -> Iterator[Permutation]:
    """Every avoider of [n], each exactly once, grown from the single letter 1.

    Memory stays O(n^2) because the growth tree is walked depth first.
    """
    if n < 1:
        raise ValueError(f"grow_avoiders needs n >= 1, got {n}")
    for p, _ in _grow_subtree((1,), 1, n):
        yield Permutation(p)


def grow_generation(prev: list[tuple[tuple[int, ...], int]]) -> list[tuple[tuple[int, ...], int]]:
    """One full generation step over a materialized list of (perm, first ascent)."""
    return [child for p, k in prev for child in _children(p, k)]


@dataclass
class Census:
    n: int
    by_first_ascent: dict[int, int] = field(default_factory=dict)
    by_max_position: dict[int, int] = field(default_factory=dict)
    total: int = 0

    def rows(self):
        for k in range(1, self.n + 1):
            yield k, self.by_first_ascent.get(k, 0), self.by_max_position.get(k, 0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "first_ascent_count", "max_position_count"])
        for k, fa, mp in self.rows():
            w.writerow([self.n, k, fa, mp])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "total": str(self.total),
            "rows": [
                {"k": k, "first_ascent_count": str(fa), "max_position_count": str(mp)}
                for k, fa, mp in self.rows()
            ],
        })

    @classmethod
    def from_csv(cls, text: str) -> Census:
        recs = list(csv.DictReader(io.StringIO(text)))
        n = int(recs[0]["n"])
        fa = {int(r["k"]): int(r["first_ascent_count"]) for r in recs}
        mp = {int(r["k"]): int(r["max_position_count"]) for r in recs}
        return cls(n, fa, mp, sum(fa.values()))

    @classmethod
    def from_json(cls, text: str) -> Census:
        d = json.loads(text)
        fa = {r["k"]: int(r["first_ascent_count"]) for r in d["rows"]}
        mp = {r["k"]: int(r["max_position_count"]) for r in d["rows"]}
        return cls(d["n"], fa, mp, int(d["total"]))


def _tally(pairs) -> tuple[Counter, Counter]:
    fa: Counter = Counter()
    mp: Counter = Counter()
    for p, k in pairs:
        fa[k] += 1
        mp[p.index(len(p)) + 1] += 1
    return fa, mp


def _tally_shard(args) -> tuple[Counter, Counter]:
    roots, n = args
    fa: Counter = Counter()
    mp: Counter = Counter()
    for root, k in roots:
        a, b = _tally(_grow_subtree(root, k, n))
        fa.update(a)
        mp.update(b)
    return fa, mp


def census(n: int, method: str = "bruteforce", *, jobs: int = 1, cap: int | None = None) -> Census:
    """Tally avoiders of [n] by first-ascent position and by position of n.

    ``method`` is ``"bruteforce"`` (n <= 9) or ``"grow"`` (n <= ``cap``,
    default 18). With ``jobs > 1`` the grow method splits the growth tree at a
    shallow level and tallies subtrees in worker processes; the merge is plain
    integer addition, so the result does not depend on ``jobs``.
    """
    if n < 1:
        raise ValueError(f"census needs n >= 1, got {n}")
    if method == "bruteforce":
        if n > (cap or BRUTEFORCE_CAP):
            raise ValueError(f"bruteforce census is capped at n <= {cap or BRUTEFORCE_CAP}, got {n}")
        pairs = ((p.entries, first_ascent_position(p)) for p in enumerate_avoiders_bruteforce(n))
        fa, mp = _tally(pairs)
    elif method == "grow":
        if n > (cap or GROW_CAP):
            raise ValueError(f"grow census is capped at n <= {cap or GROW_CAP}, got {n}")
        if jobs <= 1 or n <= 6:
            fa, mp = _tally(_grow_subtree((1,), 1, n))
        else:
            level = [((1,), 1)]
            while len(level[0][0]) < 6:
                level = grow_generation(level)
            shards = [(level[i::jobs], n) for i in range(jobs)]
            fa, mp = Counter(), Counter()
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for a, b in pool.map(_tally_shard, shards):
                    fa.update(a)
                    mp.update(b)
    else:
        raise ValueError(f"unknown census method {method!r}")
    return Census(n, dict(sorted(fa.items())), dict(sorted(mp.items())), sum(fa.values()))


def check_growth_rule_soundness(n: int) -> list[tuple[tuple[int, ...], int]]:
    """Insert n+1 into every slot of every avoider of [n].

    Returns the (parent, slot) pairs that break the rule: a slot <= k+1 giving a
    non-avoider, or a slot >= k+2 giving an avoider. Empty means the rule holds.
    """
    bad = []
    for p in enumerate_avoiders_bruteforce(n):
        k = first_ascent_position(p)
        for slot in range(1, n + 2):
            ok = is_123_avoiding(insert_max(p.entries, slot))
            if ok != (slot <= k + 1):
                bad.append((p.entries, slot))
    return bad


def enumerate_dyck_paths(n: int) -> Iterator[str]:
    """Every Dyck word of order n over 'EN' (prefixes keep #E >= #N)."""
    def rec(prefix: str, e: int, nn: int):
        if e == n and nn == n:
            yield prefix
            return
        if e < n:
            yield from rec(prefix + "E", e + 1, nn)
        if nn < e:
            yield from rec(prefix + "N", e, nn + 1)
    yield from rec("", 0, 0)


def enumerate_good_paths(start: tuple[int, int], n: int) -> Iterator[str]:
    """Every E/N word from ``start`` to (n, n) staying in y <= x."""
    def rec(prefix: str, x: int, y: int):
        if x == n and y == n:
            yield prefix
            return
        if x < n:
            yield from rec(prefix + "E", x + 1, y)
        if y < x and y < n:
            yield from rec(prefix + "N", x, y + 1)
    a, b = start
    if b <= a <= n:
        yield from rec("", a, b)


__all__ = [
    "Census",
    "census",
    "enumerate_avoiders_bruteforce",
    "grow_avoiders",
    "grow_generation",
    "insert_max",
    "check_growth_rule_soundness",
    "enumerate_dyck_paths",
    "enumerate_good_paths",
]
