"""First-ascent laws: two exact finite PMFs and their two limits.

Finite laws return :class:`fractions.Fraction` values throughout. The limit
laws are evaluated with mpmath at ``PRECISION`` decimal digits; truncated
series for them carry explicit tail bounds.

    X: first ascent of a uniform permutation, P(X = x) = x/(x+1)!
    W: geometric-like limit of the avoider law, P(W = w) = w/2^(w+1)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .catalan import catalan, catalan_convolution

PRECISION = 40
X_TRUNCATION = 60
W_TRUNCATION = 200


def _check_k(n: int, k: int) -> None:
    if n < 1 or not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")


# -- finite laws -------------------------------------------------------------

def uniform_perm_first_ascent_pmf(n: int, k: int) -> Fraction:
    """P(first ascent = k) for a uniform permutation of [n].

    >>> uniform_perm_first_ascent_pmf(4, 2)
    Fraction(1, 3)
    """
    _check_k(n, k)
    if k == n:
        return Fraction(1, math.factorial(n))
    return Fraction(k, math.factorial(k + 1))


def avoider_first_ascent_pmf(n: int, k: int) -> Fraction:
    """C(n, k) / C_n: first-ascent law of a uniform 123-avoider of [n]."""
    _check_k(n, k)
    return Fraction(catalan_convolution(n, k), catalan(n))


def avoider_first_ascent_pmf_factorial(n: int, k: int) -> Fraction:
    """Same law through k (2n-k-1)! (n+1)! / ((2n)! (n-k)!)."""
    _check_k(n, k)
    f = math.factorial
    return Fraction(k * f(2 * n - k - 1) * f(n + 1), f(2 * n) * f(n - k))


def exact_mean(pmf: Callable[[int, int], Fraction], n: int) -> Fraction:
    return sum((k * pmf(n, k) for k in range(1, n + 1)), Fraction(0))


def exact_variance(pmf: Callable[[int, int], Fraction], n: int) -> Fraction:
    m = exact_mean(pmf, n)
    second = sum((k * k * pmf(n, k) for k in range(1, n + 1)), Fraction(0))
    return second - m * m


def small_k_approximation_error(n: int, k_max: int) -> list[tuple[int, Fraction, Fraction, Fraction]]:
    """Rows ``(k, exact, k/2^(k+1), |exact - approx|)`` for k = 1..k_max."""
    if not 1 <= k_max <= n:
        raise ValueError(f"need 1 <= k_max <= n, got n={n}, k_max={k_max}")
    rows = []
    for k in range(1, k_max + 1):
        exact = avoider_first_ascent_pmf(n, k)
        approx = geomlike_pmf(k)
        rows.append((k, exact, approx, abs(exact - approx)))
    return rows


# -- limit of the uniform-permutation law (X) --------------------------------

def limit_first_ascent_pmf_exact(x: int) -> Fraction:
    if x < 1:
        raise ValueError(f"support starts at 1, got {x}")
    return Fraction(x, math.factorial(x + 1))


def limit_first_ascent_pmf(x: int) -> mpmath.mpf:
    f = limit_first_ascent_pmf_exact(x)
    with mpmath.workdps(PRECISION):
        return mpmath.mpf(f.numerator) / f.denominator


def limit_first_ascent_moments() -> tuple[mpmath.mpf, mpmath.mpf]:
    """Closed-form (mean, variance) = (e - 1, e(3 - e))."""
    with mpmath.workdps(PRECISION):
        e = mpmath.e
        return +(e - 1), +(e * (3 - e))


def limit_first_ascent_pgf(s, terms: int | None = None) -> mpmath.mpf:
    """E(s^X) = (1 - e^s + s e^s)/s, or the first ``terms`` series terms.

    s = 0 is a removable singularity; the series value there is 0.
    """
    with mpmath.workdps(PRECISION):
        s = mpmath.mpf(s)
        if terms is not None:
            return mpmath.fsum(limit_first_ascent_pmf(x) * s**x for x in range(1, terms + 1))
        if s == 0:
            return mpmath.mpf(0)
        return (1 - mpmath.exp(s) + s * mpmath.exp(s)) / s


def limit_x_tail_bound(terms: int) -> mpmath.mpf:
    """Upper bound on sum_{x > terms} x/(x+1)! (telescopes to 1/(terms+1)!)."""
    with mpmath.workdps(PRECISION):
        return 1 / mpmath.factorial(terms + 1)


# -- geometric-like limit of the avoider law (W) -----------------------------

def geomlike_pmf(w: int) -> Fraction:
    """w / 2^(w+1).

    >>> [geomlike_pmf(w) for w in (1, 2, 3)]
    [Fraction(1, 4), Fraction(1, 4), Fraction(3, 16)]
    """
    if w < 1:
        raise ValueError(f"support starts at 1, got {w}")
    return Fraction(w, 2 ** (w + 1))


def geomlike_mean() -> Fraction:
    return Fraction(3)


def geomlike_pgf(s, terms: int | None = None) -> mpmath.mpf:
    """E(s^W) = s / (s^2 - 4s + 4) on |s| < 2, or a truncated series."""
    with mpmath.workdps(PRECISION):
        s = mpmath.mpf(s)
        if abs(s) >= 2:
            raise ValueError(f"pgf of W diverges for |s| >= 2, got s={s}")
        if terms is not None:
            return mpmath.fsum(mpmath.mpf(w) / 2 ** (w + 1) * s**w for w in range(1, terms + 1))
        return s / (s * s - 4 * s + 4)


def geomlike_tail_bound(terms: int) -> mpmath.mpf:
    """sum_{w > terms} w/2^(w+1) = (terms + 2)/2^(terms+1)."""
    with mpmath.workdps(PRECISION):
        return mpmath.mpf(terms + 2) / 2 ** (terms + 1)


def pgf_derivative(pgf: Callable, s=1, h=1e-5) -> mpmath.mpf:
    with mpmath.workdps(PRECISION):
        s, h = mpmath.mpf(s), mpmath.mpf(h)
        return (pgf(s + h) - pgf(s - h)) / (2 * h)


def pgf_second_derivative(pgf: Callable, s=1, h=1e-4) -> mpmath.mpf:
    with mpmath.workdps(PRECISION):
        s, h = mpmath.mpf(s), mpmath.mpf(h)
        return (pgf(s + h) - 2 * pgf(s) + pgf(s - h)) / (h * h)


def geomlike_variance() -> mpmath.mpf:
    """Variance of W from the pgf: G''(1) + G'(1) - G'(1)^2 (numerical)."""
    with mpmath.workdps(PRECISION):
        d1 = pgf_derivative(geomlike_pgf)
        d2 = pgf_second_derivative(geomlike_pgf)
        return d2 + d1 - d1 * d1


# -- named laws --------------------------------------------------------------

@dataclass(frozen=True)
class PmfSpec:
    name: str
    support: str
    pmf: Callable[[int], Fraction]
    finite_n: int | None = None
    mean: object = None
    variance: object = None
    pgf: Callable | None = None

    def table(self, k_max: int | None = None) -> list[tuple[int, Fraction]]:
        hi = self.finite_n if k_max is None else k_max
        if hi is None:
            raise ValueError(f"law {self.name!r} has infinite support; give k_max")
        if self.finite_n is not None:
            hi = min(hi, self.finite_n)
        return [(k, self.pmf(k)) for k in range(1, hi + 1)]


LAWS = ("uniform-perm", "avoider", "limit-x", "limit-w")


def law(name: str, n: int | None = None) -> PmfSpec:
    if name in ("uniform-perm", "avoider"):
        if n is None or n < 1:
            raise ValueError(f"law {name!r} needs n >= 1")
        fn = uniform_perm_first_ascent_pmf if name == "uniform-perm" else avoider_first_ascent_pmf
        return PmfSpec(
            name, f"1..{n}", lambda k: fn(n, k), finite_n=n,
            mean=exact_mean(fn, n), variance=exact_variance(fn, n),
        )
    if name == "limit-x":
        mean, var = limit_first_ascent_moments()
        return PmfSpec(name, "1, 2, ...", limit_first_ascent_pmf_exact,
                       mean=mean, variance=var, pgf=limit_first_ascent_pgf)
    if name == "limit-w":
        return PmfSpec(name, "1, 2, ...", geomlike_pmf,
                       mean=geomlike_mean(), variance=geomlike_variance(), pgf=geomlike_pgf)
    raise ValueError(f"unknown law {name!r}; choose from {', '.join(LAWS)}")
