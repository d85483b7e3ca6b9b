"""Acceptance criteria, one test each. Every test records a PASS/FAIL line
which conftest prints in the terminal summary."""
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from scipy.stats import chi2

from ascentlab.bijections import (
    check_mu_structure,
    krattenthaler_from_path,
    krattenthaler_to_path,
    phi_inverse,
    phi_max_position,
)
from ascentlab.catalan import (
    catalan,
    catalan_convolution,
    convolution_by_definition,
    convolution_table_recursive,
    count_good_paths,
)
from ascentlab.core import LatticePath, Permutation, first_ascent_position, position_of_max
from ascentlab.distributions import (
    avoider_first_ascent_pmf,
    avoider_first_ascent_pmf_factorial,
    exact_mean,
    geomlike_pgf,
    limit_first_ascent_pgf,
    limit_first_ascent_pmf,
    pgf_derivative,
    uniform_perm_first_ascent_pmf,
)
from ascentlab.oracle import census, enumerate_avoiders_bruteforce, enumerate_dyck_paths
from ascentlab.sampling import _dyck_words, decode_dyck_batch, monte_carlo_first_ascent

RESULTS: list[str] = []


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
    if detail:
        line += f" ({detail})"
    RESULTS.append(line)
    print(line)
    return ok


def test_c01_first_ascent_census_matches_convolution():
    t0 = time.perf_counter()
    tallies = {n: census(n, "bruteforce") for n in range(1, 9)}
    bad = [(n, k) for n in range(1, 9) for k in range(1, n + 1)
           if tallies[n].by_first_ascent.get(k, 0) != catalan_convolution(n, k)]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 10
    record(1, "brute-force first-ascent census = C(n,k), n <= 8, < 10 s", ok,
           f"{elapsed:.2f}s, mismatches {bad}")
    assert ok


def test_c02_max_position_census_matches_convolution():
    bad = [(n, k) for n in range(1, 9) for k in range(1, n + 1)
           if census(n, "bruteforce").by_max_position.get(k, 0) != catalan_convolution(n, k)]
    record(2, "max-position census = C(n,k), n <= 8", not bad, f"mismatches {bad}")
    assert not bad


def test_c03_three_route_agreement():
    t0 = time.perf_counter()
    table = convolution_table_recursive(50)
    bad_table = [(n, k) for n in range(1, 51) for k in range(1, n + 1)
                 if table(n, k) != catalan_convolution(n, k)]
    bad_def = [(n, k) for n in range(1, 13) for k in range(1, n + 1)
               if convolution_by_definition(n, k) != catalan_convolution(n, k)]
    elapsed = time.perf_counter() - t0
    ok = not bad_table and not bad_def and elapsed < 30
    record(3, "closed form = table (n <= 50) = definition (n <= 12), < 30 s", ok,
           f"{elapsed:.2f}s, table {bad_table}, definition {bad_def}")
    assert ok


def test_c04_recurrence_identity():
    bad = [(n, k) for n in range(2, 51) for k in range(1, n)
           if catalan_convolution(n - 1, k - 1) + catalan_convolution(n, k + 1) != catalan_convolution(n, k)]
    record(4, "C(n-1,k-1) + C(n,k+1) = C(n,k), 2 <= k+1 <= n <= 50", not bad, f"mismatches {bad}")
    assert not bad


def test_c05_worked_example_byte_exact():
    perm, xy = "76584213", "XXXXYYYYXYXXXYYY"
    forward = krattenthaler_to_path(Permutation(int(c) for c in perm)).to_xy()
    backward = str(krattenthaler_from_path(LatticePath.from_xy(xy)))
    ok = forward == xy and backward == perm
    record(5, "76584213 <-> XXXXYYYYXYXXXYYY both directions", ok, f"got {forward}, {backward}")
    assert ok


def test_c06_bijection_roundtrips():
    failures = []
    for n in range(1, 9):
        avoiders = list(enumerate_avoiders_bruteforce(n))
        for p in avoiders:
            if krattenthaler_from_path(krattenthaler_to_path(p)) != p:
                failures.append(("perm->path->perm", str(p)))
        for steps in enumerate_dyck_paths(n):
            path = LatticePath((0, 0), steps)
            if krattenthaler_to_path(krattenthaler_from_path(path)) != path:
                failures.append(("path->perm->path", steps))
        domain = [p for p in avoiders if first_ascent_position(p.entries) >= 2
                  and position_of_max(p.entries) in (1, first_ascent_position(p.entries) + 1)]
        codomain = [q for q in avoiders if position_of_max(q.entries) >= 2]
        for p in domain:
            if phi_inverse(phi_max_position(p)) != p:
                failures.append(("phi_inverse . phi", str(p)))
        for q in codomain:
            if phi_max_position(phi_inverse(q)) != q:
                failures.append(("phi . phi_inverse", str(q)))
        if len(domain) != len(codomain):
            failures.append(("domain sizes", n))
    record(6, "Krattenthaler and phi roundtrips, n <= 8", not failures, f"{len(failures)} failures")
    assert not failures


def test_c07_mu_structure():
    bad = [str(p) for n in range(2, 9) for p in enumerate_avoiders_bruteforce(n)
           if first_ascent_position(p.entries) < n and not check_mu_structure(p).holds]
    record(7, "mu at k+1 and mu = n or predecessor - 1, n <= 8", not bad, f"violations {bad[:5]}")
    assert not bad


def test_c08_good_path_counting_identity():
    # Stated over the full range 1 <= k <= n <= 20. At k = n there are no
    # paths from column n+1 back to (n, n), so the first sum is 0 while
    # C(n, n) = 1. Kept at full range on purpose.
    shifted_bad = [(n, k) for n in range(1, 21) for k in range(1, n + 1)
                   if sum(count_good_paths((k + 1, i), (n, n)) for i in range(1, k + 1))
                   != catalan_convolution(n, k)]
    direct_bad = [(n, k) for n in range(1, 21) for k in range(1, n + 1)
                  if count_good_paths((k, 1), (n, n)) != catalan_convolution(n, k)]
    ok = not shifted_bad and not direct_bad
    off_diagonal = [c for c in shifted_bad if c[0] != c[1]]
    record(8, "sum_i paths((k+1,i)->(n,n)) = paths((k,1)->(n,n)) = C(n,k), 1 <= k <= n <= 20", ok,
           f"shifted-sum mismatches {len(shifted_bad)} (off-diagonal {len(off_diagonal)}), "
           f"direct mismatches {len(direct_bad)}")
    assert ok, f"shifted-sum mismatches at {shifted_bad}"


def test_c09_pmf_exactness():
    bad_norm = [n for n in range(1, 51)
                if sum(uniform_perm_first_ascent_pmf(n, k) for k in range(1, n + 1)) != 1
                or sum(avoider_first_ascent_pmf(n, k) for k in range(1, n + 1)) != 1]
    bad_route = [(n, k) for n in range(1, 31) for k in range(1, n + 1)
                 if avoider_first_ascent_pmf(n, k) != avoider_first_ascent_pmf_factorial(n, k)]
    ok = not bad_norm and not bad_route
    record(9, "finite PMFs sum to 1 (n <= 50); two avoider routes agree (n <= 30)", ok,
           f"normalization {bad_norm}, routes {bad_route}")
    assert ok


def test_c10_limit_moments():
    details, ok = [], True
    with mpmath.workdps(40):
        e = mpmath.e
        mean_x = mpmath.fsum(x * limit_first_ascent_pmf(x) for x in range(1, 61))
        err = abs(mean_x - (e - 1))
        ok &= err < 1e-12
        details.append(f"E(X) err {float(err):.1e}")
        worst = 0.0
        for s in (-0.5, 0.25, 0.5, 0.9):
            worst = max(worst,
                        float(abs(limit_first_ascent_pgf(s) - limit_first_ascent_pgf(s, terms=60))),
                        float(abs(geomlike_pgf(s) - geomlike_pgf(s, terms=200))))
        ok &= worst < 1e-10
        details.append(f"pgf err {worst:.1e}")
        dx = abs(pgf_derivative(limit_first_ascent_pgf) - (e - 1))
        dw = abs(pgf_derivative(geomlike_pgf) - 3)
        ok &= dx < 1e-6 and dw < 1e-6
        details.append(f"G' errs {float(dx):.1e}, {float(dw):.1e}")
    means = [exact_mean(avoider_first_ascent_pmf, n) for n in (10, 20, 50, 100, 200)]
    gaps = [abs(m - 3) for m in means]
    mono = all(a < b for a, b in zip(means, means[1:])) and all(m < 3 for m in means) \
        and all(a > b for a, b in zip(gaps, gaps[1:]))
    ok &= mono
    details.append("means " + ", ".join(f"{float(m):.4f}" for m in means))
    record(10, "limit moments, pgf closed forms, derivatives, avoider mean -> 3", bool(ok), "; ".join(details))
    assert ok


def test_c11_sampler_uniformity():
    rng = np.random.default_rng(2024)
    perms = decode_dyck_batch(_dyck_words(6, 264_000, rng))
    cells, counts = np.unique(perms, axis=0, return_counts=True)
    valid = {p.entries for p in enumerate_avoiders_bruteforce(6)}
    seen = {tuple(int(v) for v in row) for row in cells}
    expected = 264_000 / catalan(6)
    full = np.zeros(catalan(6))
    full[:len(counts)] = counts
    stat = float(((full - expected) ** 2 / expected).sum())
    p_value = float(chi2.sf(stat, catalan(6) - 1))
    chi_ok = seen <= valid and p_value > 0.001

    mc = []
    for n, trials, population, pmf in ((100, 1_000_000, "all_perms", uniform_perm_first_ascent_pmf),
                                       (200, 100_000, "avoiders", avoider_first_ascent_pmf)):
        stats = monte_carlo_first_ascent(n, trials, population, seed=2024)
        exact = float(exact_mean(pmf, n))
        z = abs(stats.mean - exact) / stats.standard_error
        mc.append((n, z, sum(stats.histogram.values()) == trials))
    mc_ok = all(z < 4 and total for _, z, total in mc)
    ok = chi_ok and mc_ok
    record(11, "chi-square over 132 avoiders of [6] (p > 0.001); MC means within 4 SE", ok,
           f"chi2 {stat:.1f}, p {p_value:.3f}; " + ", ".join(f"n={n} z={z:.2f}" for n, z, _ in mc))
    assert ok


@pytest.mark.parametrize("quick, limit", [(False, 120.0), (True, 10.0)])
def test_c12_verify_all_runtime(quick, limit):
    argv = [sys.executable, "-m", "ascentlab", "verify-all"] + (["--quick"] if quick else [])
    t0 = time.perf_counter()
    proc = subprocess.run(argv, capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    ok = proc.returncode == 0 and elapsed < limit
    label = "--quick" if quick else "default"
    record(12, f"verify-all {label} passes in under {limit:.0f} s", ok,
           f"{elapsed:.1f}s, exit {proc.returncode}")
    assert ok, proc.stdout[-2000:]
