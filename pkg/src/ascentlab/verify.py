"""The full property battery behind ``ascentlab verify-all``.

Each check returns a :class:`CheckResult`; failures carry the parameters
needed to reproduce them. ``Sizes.quick()`` shrinks every sweep.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable

import mpmath
from scipy.stats import chi2

from .catalan import (
    catalan,
    catalan_convolution,
    convolution_by_definition,
    convolution_table_recursive,
    count_good_paths,
)
from . import distributions as dist
from .bijections import (
    check_mu_structure,
    krattenthaler_from_path,
    krattenthaler_to_path,
    path_prefix_signature,
    path_shift,
    perm_prefix_signature,
    phi_inverse,
    phi_max_position,
)
from .core import (
    LatticePath,
    Permutation,
    first_ascent_position,
    is_123_avoiding,
    is_123_avoiding_reference,
    parse_permutation,
    position_of_max,
    right_to_left_maxima,
)
from .oracle import (
    census,
    check_growth_rule_soundness,
    enumerate_avoiders_bruteforce,
    enumerate_dyck_paths,
    enumerate_good_paths,
    grow_avoiders,
)
from .sampling import monte_carlo_first_ascent, sample_uniform_avoiders


@dataclass
class Sizes:
    avoid_ref: int = 7
    oracle: int = 8
    growth_negative: int = 7
    table: int = 50
    definition: int = 12
    paths: int = 20
    pmf: int = 50
    pmf_routes: int = 30
    chi_n: int = 6
    chi_draws: int = 264_000
    mc_perm: tuple[int, int] = (100, 1_000_000)
    mc_avoid: tuple[int, int] = (200, 100_000)
    seed: int = 2024

    @classmethod
    def quick(cls) -> Sizes:
        return cls(
            avoid_ref=6, oracle=6, growth_negative=5, table=30, definition=9,
            paths=12, pmf=30, pmf_routes=20, chi_n=4, chi_draws=14_000,
            mc_perm=(100, 100_000), mc_avoid=(200, 10_000),
        )


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0


class _Collector:
    def __init__(self):
        self.failures: list[str] = []
        self.count = 0

    def expect(self, cond: bool, what: str) -> None:
        self.count += 1
        if not cond and len(self.failures) < 20:
            self.failures.append(what)
        elif not cond:
            self.failures.append("...")


def _avoiders(n: int) -> list[Permutation]:
    return list(enumerate_avoiders_bruteforce(n))


def check_avoidance_scan(s: Sizes, c: _Collector) -> str:
    for n in range(1, s.avoid_ref + 1):
        for p in itertools.permutations(range(1, n + 1)):
            c.expect(is_123_avoiding(p) == is_123_avoiding_reference(p), f"avoidance scan p={p}")
    return f"all permutations n <= {s.avoid_ref}"


def check_oracle_vs_formula(s: Sizes, c: _Collector) -> str:
    for n in range(1, s.oracle + 1):
        cen = census(n, "bruteforce")
        c.expect(cen.total == catalan(n), f"census total n={n}")
        for k in range(1, n + 1):
            want = catalan_convolution(n, k)
            c.expect(cen.by_first_ascent.get(k, 0) == want, f"first ascent n={n} k={k}")
            c.expect(cen.by_max_position.get(k, 0) == want, f"max position n={n} k={k}")
    return f"1 <= k <= n <= {s.oracle}, first ascent and position of n"


def check_growth(s: Sizes, c: _Collector) -> str:
    for n in range(1, s.oracle + 1):
        grown = [p.entries for p in grow_avoiders(n)]
        brute = [p.entries for p in enumerate_avoiders_bruteforce(n)]
        c.expect(len(grown) == len(set(grown)), f"grow duplicates n={n}")
        c.expect(set(grown) == set(brute), f"grow vs brute force n={n}")
    for n in range(1, s.growth_negative + 1):
        bad = check_growth_rule_soundness(n)
        c.expect(not bad, f"insertion rule n={n}: {bad[:3]}")
    return f"sets equal n <= {s.oracle}; insertion slots n <= {s.growth_negative}"


def check_three_routes(s: Sizes, c: _Collector) -> str:
    table = convolution_table_recursive(s.table)
    for n, k, v in table.cells():
        c.expect(v == catalan_convolution(n, k), f"table vs closed form n={n} k={k}")
        if n <= s.definition:
            c.expect(convolution_by_definition(n, k) == v, f"definition n={n} k={k}")
    for n in range(1, s.table + 1):
        c.expect(sum(table.row(n)) == catalan(n), f"row sum n={n}")
        if n >= 2:
            c.expect(table(n, 1) == table(n, 2), f"A(n,1) = A(n,2) n={n}")
    return f"table n <= {s.table}, definition n <= {s.definition}"


def check_recurrence_identity(s: Sizes, c: _Collector) -> str:
    conv = catalan_convolution
    for n in range(2, s.table + 1):
        for k in range(1, n):
            c.expect(conv(n - 1, k - 1) + conv(n, k + 1) == conv(n, k), f"recurrence n={n} k={k}")
    return f"2 <= k+1 <= n <= {s.table}"


def check_good_paths(s: Sizes, c: _Collector) -> str:
    for n in range(1, s.paths + 1):
        for k in range(1, n + 1):
            want = catalan_convolution(n, k)
            c.expect(count_good_paths((k, 1), (n, n)) == want, f"paths from (k,1) n={n} k={k}")
            shifted = sum(count_good_paths((k + 1, i), (n, n)) for i in range(1, k + 1))
            if k < n:
                c.expect(shifted == want, f"shifted sum n={n} k={k}")
            else:
                # No ascent at k = n: the sum is empty while C(n, n) = 1.
                c.expect(shifted == 0, f"shifted sum at k = n should be empty, n={n}")
    return f"(k,1) counts 1 <= k <= n <= {s.paths}; shifted sums k < n"


def check_path_shift_bijection(s: Sizes, c: _Collector) -> str:
    cases = [(n, k) for n in range(2, 8) for k in range(1, n)]
    for n, k in cases:
        images = []
        for steps in enumerate_good_paths((k, 1), n):
            out = path_shift(LatticePath((k, 1), steps))
            c.expect(1 <= out.start[1] <= k and out.is_good() and out.end == (n, n),
                     f"shift image n={n} k={k} path={steps}")
            images.append((out.start, out.steps))
        target = {((k + 1, i), t) for i in range(1, k + 1) for t in enumerate_good_paths((k + 1, i), n)}
        c.expect(len(images) == len(set(images)) and set(images) == target, f"shift bijection n={n} k={k}")
    return "exhaustive for 1 <= k < n <= 7"


def check_worked_example(s: Sizes, c: _Collector) -> str:
    p = parse_permutation("76584213")
    c.expect(krattenthaler_to_path(p).to_xy() == "XXXXYYYYXYXXXYYY", "76584213 -> path")
    c.expect(krattenthaler_from_path(LatticePath.from_xy("XXXXYYYYXYXXXYYY")) == p, "path -> 76584213")
    return "76584213 <-> XXXXYYYYXYXXXYYY"


def check_krattenthaler(s: Sizes, c: _Collector) -> str:
    for n in range(1, s.oracle + 1):
        seen = set()
        for p in _avoiders(n):
            path = krattenthaler_to_path(p)
            c.expect(path.is_dyck(n), f"not a Dyck path p={p}")
            c.expect(krattenthaler_from_path(path) == p, f"roundtrip p={p}")
            seen.add(path.steps)
            dec = right_to_left_maxima(p.entries)
            c.expect(dec.reassemble() == p.entries, f"RLM reassembly p={p}")
            rest = [x for w in dec.words for x in w]
            c.expect(all(a > b for a, b in zip(rest, rest[1:])), f"non-RLM letters not decreasing p={p}")
            j, k = perm_prefix_signature(p)
            if k < n:
                c.expect(path_prefix_signature(path) == (j, k), f"path prefix p={p}")
        dyck = list(enumerate_dyck_paths(n))
        c.expect(len(seen) == len(dyck) == catalan(n), f"image size n={n}")
        for steps in dyck:
            path = LatticePath((0, 0), steps)
            c.expect(krattenthaler_to_path(krattenthaler_from_path(path)) == path, f"dual roundtrip {steps}")
    return f"avoiders and Dyck paths of order <= {s.oracle}"


def check_mu_lemma(s: Sizes, c: _Collector) -> str:
    for n in range(2, s.oracle + 1):
        for p in _avoiders(n):
            if first_ascent_position(p.entries) < n:
                c.expect(check_mu_structure(p).holds, f"mu structure p={p}")
    return f"every avoider with an ascent, n <= {s.oracle}"


def check_phi(s: Sizes, c: _Collector) -> str:
    for n in range(2, s.oracle + 1):
        avs = _avoiders(n)
        for k in range(2, n + 1):
            dom = [p for p in avs if first_ascent_position(p.entries) == k]
            cod = {p for p in avs if position_of_max(p.entries) == k}
            images = [phi_max_position(p) for p in dom]
            c.expect(len(set(images)) == len(dom) and set(images) == cod, f"phi bijection n={n} k={k}")
            for p, q in zip(dom, images):
                c.expect(phi_inverse(q) == p, f"phi_inverse(phi(p)) p={p}")
                c.expect(first_ascent_position(q.entries) == k - 1, f"phi first ascent p={p}")
            for q in cod:
                c.expect(phi_max_position(phi_inverse(q)) == q, f"phi(phi_inverse(q)) q={q}")
    return f"2 <= k <= n <= {s.oracle}"


def check_pmfs(s: Sizes, c: _Collector) -> str:
    for n in range(1, s.pmf + 1):
        c.expect(sum(dist.uniform_perm_first_ascent_pmf(n, k) for k in range(1, n + 1)) == 1,
                 f"uniform-perm normalization n={n}")
        c.expect(sum(dist.avoider_first_ascent_pmf(n, k) for k in range(1, n + 1)) == 1,
                 f"avoider normalization n={n}")
    for n in range(1, s.pmf_routes + 1):
        for k in range(1, n + 1):
            c.expect(dist.avoider_first_ascent_pmf(n, k) == dist.avoider_first_ascent_pmf_factorial(n, k),
                     f"avoider two routes n={n} k={k}")
    return f"normalization n <= {s.pmf}, routes n <= {s.pmf_routes}"


def check_limits(s: Sizes, c: _Collector) -> str:
    with mpmath.workdps(dist.PRECISION):
        e = mpmath.e
        tx = dist.X_TRUNCATION
        total_x = mpmath.fsum(dist.limit_first_ascent_pmf(x) for x in range(1, tx + 1))
        mean_x = mpmath.fsum(x * dist.limit_first_ascent_pmf(x) for x in range(1, tx + 1))
        c.expect(abs(total_x - 1) < 1e-15, "sum f(x) = 1")
        c.expect(abs(mean_x - (e - 1)) < 1e-12, "E(X) series = e - 1")
        tw = dist.W_TRUNCATION
        total_w = mpmath.fsum(mpmath.mpf(w) / 2 ** (w + 1) for w in range(1, tw + 1))
        c.expect(abs(total_w - 1) < 1e-15, "sum f(w) = 1")
        for pt in (-0.5, 0.25, 0.5, 0.9):
            c.expect(abs(dist.limit_first_ascent_pgf(pt) - dist.limit_first_ascent_pgf(pt, tx)) < 1e-10,
                     f"pgf X series s={pt}")
            c.expect(abs(dist.geomlike_pgf(pt) - dist.geomlike_pgf(pt, tw)) < 1e-10, f"pgf W series s={pt}")
        c.expect(abs(dist.pgf_derivative(dist.limit_first_ascent_pgf) - (e - 1)) < 1e-6, "G_X'(1) = e - 1")
        c.expect(abs(dist.pgf_derivative(dist.geomlike_pgf) - 3) < 1e-6, "G_W'(1) = 3")
        mean, var = dist.limit_first_ascent_moments()
        var_series = mpmath.fsum(x * x * dist.limit_first_ascent_pmf(x) for x in range(1, tx + 1)) - mean_x**2
        c.expect(abs(var - var_series) < 1e-12, "V(X) = e(3 - e)")
    gaps = [3 - dist.exact_mean(dist.avoider_first_ascent_pmf, n) for n in (10, 20, 50, 100, 200)]
    c.expect(all(g > 0 for g in gaps) and all(a > b for a, b in zip(gaps, gaps[1:])),
             "avoider mean increases to 3 from below")
    grid = (10, 20, 50, 100, 200)
    for k in range(1, 6):
        errs = [dist.small_k_approximation_error(n, 5)[k - 1][3] for n in grid]
        c.expect(all(a >= b for a, b in zip(errs, errs[1:])), f"k/2^(k+1) error shrinks k={k}")
    return "moments, pgfs, avoider mean, small-k approximation"


def check_sampler_uniformity(s: Sizes, c: _Collector) -> str:
    n = s.chi_n
    index = {p.entries: i for i, p in enumerate(enumerate_avoiders_bruteforce(n))}
    counts = [0] * len(index)
    for p in sample_uniform_avoiders(n, s.chi_draws, s.seed):
        counts[index[p.entries]] += 1
    expected = s.chi_draws / len(index)
    stat = sum((o - expected) ** 2 / expected for o in counts)
    pval = chi2.sf(stat, len(index) - 1)
    c.expect(pval > 0.001, f"chi-square n={n} draws={s.chi_draws} seed={s.seed}: p={pval:.3g}")
    return f"n={n}, {s.chi_draws} draws, chi2={stat:.1f}, p={pval:.3f}"


def check_monte_carlo(s: Sizes, c: _Collector) -> str:
    notes = []
    for population, (n, trials), pmf in (
        ("all_perms", s.mc_perm, dist.uniform_perm_first_ascent_pmf),
        ("avoiders", s.mc_avoid, dist.avoider_first_ascent_pmf),
    ):
        stats = monte_carlo_first_ascent(n, trials, population, s.seed)
        mean = dist.exact_mean(pmf, n)
        se = math.sqrt(dist.exact_variance(pmf, n) / trials)
        z = (stats.mean - float(mean)) / se
        c.expect(abs(z) < 4, f"{population} n={n} trials={trials} seed={s.seed}: z={z:.2f}")
        c.expect(sum(stats.histogram.values()) == trials, f"{population} histogram total")
        notes.append(f"{population} z={z:+.2f}")
    return ", ".join(notes)


CHECKS: list[tuple[str, Callable[[Sizes, _Collector], str]]] = [
    ("avoidance-scan", check_avoidance_scan),
    ("oracle-vs-formula", check_oracle_vs_formula),
    ("growth-rule", check_growth),
    ("three-route-convolution", check_three_routes),
    ("recurrence-identity", check_recurrence_identity),
    ("good-path-counts", check_good_paths),
    ("path-shift-bijection", check_path_shift_bijection),
    ("worked-example", check_worked_example),
    ("krattenthaler-roundtrips", check_krattenthaler),
    ("mu-structure", check_mu_lemma),
    ("phi-bijection", check_phi),
    ("pmf-exactness", check_pmfs),
    ("limit-laws", check_limits),
    ("sampler-uniformity", check_sampler_uniformity),
    ("monte-carlo-means", check_monte_carlo),
]


def run_all(sizes: Sizes | None = None, on_result: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    sizes = sizes or Sizes()
    results = []
    for name, fn in CHECKS:
        c = _Collector()
        t0 = time.perf_counter()
        try:
            detail = fn(sizes, c)
        except Exception as exc:  # report, keep going
            detail = ""
            c.failures.append(f"raised {type(exc).__name__}: {exc}")
        res = CheckResult(name, not c.failures, detail, c.failures, time.perf_counter() - t0)
        results.append(res)
        if on_result:
            on_result(res)
    return results


__all__ = ["CHECKS", "CheckResult", "Sizes", "run_all"]
