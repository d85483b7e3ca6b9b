"""Executable bijections between 123-avoiders, Dyck paths and good lattice paths.

* Krattenthaler's map (avoider -> Dyck path) and its inverse.
* The structural check on mu, the leftmost right-to-left maximum that has a
  non-empty word in front of it.
* The path shift from paths starting at (k, 1) to paths starting at (k+1, i).
* phi, which moves n to position k in an avoider whose first ascent is k, and
  its inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby

from .core import (
    LatticePath,
    Permutation,
    first_ascent_position,
    is_123_avoiding,
    position_of_max,
    regular_descent_length,
    right_to_left_maxima,
)


def _require_avoider(p: Permutation) -> None:
    if not is_123_avoiding(p.entries):
        raise ValueError(f"{p} is not 123-avoiding")


def krattenthaler_to_path(p: Permutation) -> LatticePath:
    """For each word/maximum pair left to right: |w|+1 East steps, then
    m_i - m_{i-1} North steps (the maximum to the right, or 0)."""
    _require_avoider(p)
    dec = right_to_left_maxima(p.entries)
    values = dec.values + (0,)
    steps = []
    for i, word in enumerate(dec.words):
        steps.append("E" * (len(word) + 1))
        steps.append("N" * (values[i] - values[i + 1]))
    return LatticePath((0, 0), "".join(steps))


def krattenthaler_from_path(path: LatticePath) -> Permutation:
    """Inverse of :func:`krattenthaler_to_path`.

    Each East-run of length a followed by a North-run of length d gives a word
    of a-1 letters and a maximum. Maxima are suffix sums of the d's. The
    remaining letters of an avoider always form one decreasing sequence, so
    they are dealt out in descending order across the words.
    """
    n = path.order
    if n == 0 or not path.is_dyck(n):
        raise ValueError(f"{path} is not a Dyck path of positive order")
    return Permutation(decode_dyck_steps(path.steps, n))


def decode_dyck_steps(steps: str, n: int) -> list[int]:
    """Unchecked core of :func:`krattenthaler_from_path`; ``steps`` must be Dyck."""
    runs = [len(list(g)) for _, g in groupby(steps)]
    # Runs alternate East/North, starting East and ending North.
    maxima = []
    remaining = n
    for d in runs[1::2]:
        maxima.append(remaining)
        remaining -= d
    is_max = [False] * (n + 1)
    for m in maxima:
        is_max[m] = True
    others = [v for v in range(n, 0, -1) if not is_max[v]]
    out: list[int] = []
    pos = 0
    for a, m in zip(runs[0::2], maxima):
        out.extend(others[pos:pos + a - 1])
        pos += a - 1
        out.append(m)
    return out


@dataclass(frozen=True)
class MuReport:
    mu_position: int
    mu_value: int
    first_ascent: int
    case: str  # "mu_equals_n" or "mu_is_predecessor_minus_one"
    holds: bool


def check_mu_structure(p: Permutation) -> MuReport:
    """Locate mu and test that it sits at k+1 and is n or one less than the
    nearest right-to-left maximum on its left."""
    _require_avoider(p)
    k = first_ascent_position(p.entries)
    if k == p.n:
        raise ValueError(f"{p} has no ascent, so mu is undefined")
    dec = right_to_left_maxima(p.entries)
    idx = next(i for i, w in enumerate(dec.words) if w)
    pos, mu = dec.maxima[idx]
    if mu == p.n:
        case, shape_ok = "mu_equals_n", True
    else:
        case = "mu_is_predecessor_minus_one"
        shape_ok = idx > 0 and dec.maxima[idx - 1][1] == mu + 1
    return MuReport(pos, mu, k, case, holds=shape_ok and pos == k + 1)


def path_shift(path: LatticePath) -> LatticePath:
    """Drop the leading North-run of a path from (k, 1) and the East step after it.

    The result starts at (k+1, i) with 1 <= i <= k.
    """
    k, one = path.start
    if one != 1:
        raise ValueError(f"path must start at height 1, got start {path.start}")
    if not path.is_good():
        raise ValueError(f"path {path.steps} from {path.start} crosses above y = x")
    lead = len(path.steps) - len(path.steps.lstrip("N"))
    if lead == len(path.steps):
        raise ValueError("path has no East step to remove")
    return LatticePath((k + 1, 1 + lead), path.steps[lead + 1:])


def perm_prefix_signature(p: Permutation) -> tuple[int, int]:
    """``(j, k)``: regular-descent length from n (0 if p(1) != n) and first ascent."""
    return regular_descent_length(p.entries), first_ascent_position(p.entries)


def path_prefix_signature(path: LatticePath) -> tuple[int, int] | None:
    """Read ``(j, k)`` off the front of a Dyck path.

    A prefix (EN)^j E^(k-j+1) N with k-j+1 >= 2 gives ``(j, k)``. Returns None
    for the all-(EN) path, which belongs to the decreasing permutation.
    """
    s = path.steps
    j = 0
    while s.startswith("EN", 2 * j):
        j += 1
    rest = s[2 * j:]
    if not rest:
        return None
    run = len(rest) - len(rest.lstrip("E"))
    return j, j + run - 1


def phi_max_position(p: Permutation) -> Permutation:
    """Move n from position 1 or k+1 to position k (first ascent k >= 2)."""
    _require_avoider(p)
    n = p.n
    k = first_ascent_position(p.entries)
    if k < 2:
        raise ValueError(f"phi needs first ascent k >= 2, {p} has k = {k}")
    where = position_of_max(p.entries)
    if where not in (1, k + 1):
        raise ValueError(f"n sits at position {where} in {p}, expected 1 or {k + 1}")
    rest = [x for x in p.entries if x != n]
    rest.insert(k - 1, n)
    return Permutation(rest)


def phi_inverse(q: Permutation) -> Permutation:
    """Undo :func:`phi_max_position` for q with n at position k >= 2.

    If q(k-1) < q(k+1), n goes back to the front; otherwise to position k+1.
    When k = n there is no q(k+1); it is read as larger than everything, which
    sends n to the front and recovers the decreasing permutation.
    """
    _require_avoider(q)
    n = q.n
    k = position_of_max(q.entries)
    if k < 2:
        raise ValueError(f"phi_inverse needs n at position >= 2, {q} has it at {k}")
    left = q.at(k - 1)
    right = q.at(k + 1) if k < n else n + 1
    rest = [x for x in q.entries if x != n]
    if left < right:
        rest.insert(0, n)
    else:
        rest.insert(k, n)
    return Permutation(rest)


__all__ = [
    "MuReport",
    "krattenthaler_from_path",
    "krattenthaler_to_path",
    "check_mu_structure",
    "decode_dyck_steps",
    "path_prefix_signature",
    "path_shift",
    "perm_prefix_signature",
    "phi_inverse",
    "phi_max_position",
]
