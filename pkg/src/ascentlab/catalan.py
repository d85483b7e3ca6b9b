"""Catalan numbers and k-fold Catalan convolutions, computed exactly.

Three independent routes to ``C(n, k)`` live here: the closed form
``k/(2n-k) * binom(2n-k, n)``, the defining sum over compositions, and the
triangle filled by ``A(n,k) = A(n-1,k-1) + A(n,k+1)``. Good lattice paths are
counted by a separate dynamic program so the path identities are checked by a
different mechanism than the formulas they are compared against.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass

DEFINITION_CAP = 16


def exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"inexact division {num} / {den}")
    return q


def catalan(n: int) -> int:
    """C_n = binom(2n, n) / (n + 1).

    >>> [catalan(i) for i in range(6)]
    [1, 1, 2, 5, 14, 42]
    """
    if n < 0:
        raise ValueError(f"catalan(n) needs n >= 0, got {n}")
    return exact_div(math.comb(2 * n, n), n + 1)


def catalan_convolution(n: int, k: int) -> int:
    """k-fold Catalan convolution C(n, k) = k/(2n-k) * binom(2n-k, n).

    ``k = 0`` gives 0 and ``k = n`` gives 1.

    >>> [catalan_convolution(4, k) for k in range(5)]
    [0, 5, 5, 3, 1]
    """
    if n < 1:
        raise ValueError(f"catalan_convolution needs n >= 1, got n={n}")
    if not 0 <= k <= n:
        raise ValueError(f"catalan_convolution needs 0 <= k <= n, got n={n}, k={k}")
    if k == 0:
        return 0
    return exact_div(k * math.comb(2 * n - k, n), 2 * n - k)


def convolution_by_definition(n: int, k: int, cap: int = DEFINITION_CAP) -> int:
    """Sum over compositions i_1 + ... + i_k = n (parts >= 1) of prod C_{i_r - 1}.

    Compositions are enumerated by choosing the k-1 bar positions among the
    n-1 gaps, so the work grows like binom(n-1, k-1); ``cap`` bounds n.
    """
    if not 1 <= k <= n:
        raise ValueError(f"convolution_by_definition needs 1 <= k <= n, got n={n}, k={k}")
    if n > cap:
        raise ValueError(f"convolution_by_definition is capped at n <= {cap}, got n={n}")
    cat = [catalan(i) for i in range(n)]
    total = 0
    for bars in itertools.combinations(range(1, n), k - 1):
        cuts = (0,) + bars + (n,)
        prod = 1
        for a, b in zip(cuts, cuts[1:]):
            prod *= cat[b - a - 1]
        total += prod
    return total


@dataclass(frozen=True)
class CountTable:
    """Triangle of counts, ``rows[n-1][k-1]`` = A(n, k) for 1 <= k <= n <= n_max."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def n_max(self) -> int:
        return len(self.rows)

    def __call__(self, n: int, k: int) -> int:
        if k <= 0 or k > n:
            return 0
        return self.rows[n - 1][k - 1]

    def row(self, n: int) -> tuple[int, ...]:
        return self.rows[n - 1]

    def cells(self):
        for n, row in enumerate(self.rows, start=1):
            for k, value in enumerate(row, start=1):
                yield n, k, value

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "count"])
        for n, k, v in self.cells():
            w.writerow([n, k, v])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> CountTable:
        reader = csv.DictReader(io.StringIO(text))
        rows: dict[int, dict[int, int]] = {}
        for rec in reader:
            rows.setdefault(int(rec["n"]), {})[int(rec["k"])] = int(rec["count"])
        return cls(tuple(
            tuple(rows[n][k] for k in range(1, n + 1)) for n in range(1, len(rows) + 1)
        ))

    def to_json(self) -> str:
        return json.dumps([[str(v) for v in row] for row in self.rows])

    @classmethod
    def from_json(cls, text: str) -> CountTable:
        return cls(tuple(tuple(int(v) for v in row) for row in json.loads(text)))


def convolution_table_recursive(n_max: int) -> CountTable:
    """Fill A(n, k) row by row, k descending from n, from A(n,n) = 1 and
    A(n,k) = A(n-1,k-1) + A(n,k+1)."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    rows: list[tuple[int, ...]] = [(1,)]
    for n in range(2, n_max + 1):
        prev = rows[-1]
        row = [0] * (n + 2)  # row[k] for k in 0..n+1
        row[n] = 1
        for k in range(n - 1, 0, -1):
            up_left = prev[k - 2] if k >= 2 else 0
            row[k] = up_left + row[k + 1]
        rows.append(tuple(row[1:n + 1]))
    return CountTable(tuple(rows))


def count_good_paths(start: tuple[int, int], end: tuple[int, int]) -> int:
    """Number of E/N paths from ``start`` to ``end`` = (n, n) staying in y <= x.

    Sweeps columns x = a..n keeping one vector over y, so memory is O(n).
    """
    a, b = start
    n, n2 = end
    if n != n2:
        raise ValueError(f"end point must lie on the diagonal, got {end}")
    if b < 0:
        raise ValueError(f"start {start} has negative height")
    if b > a:
        raise ValueError(f"start {start} lies above the diagonal y = x")
    if a > n or b > n:
        return 0
    ways = [0] * (n + 1)
    ways[b] = 1
    for x in range(a, n + 1):
        # North moves inside column x, capped at y <= x.
        for y in range(b + 1, min(x, n) + 1):
            ways[y] += ways[y - 1]
    return ways[n]

