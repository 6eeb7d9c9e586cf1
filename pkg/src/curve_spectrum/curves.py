"""Weierstrass curves over Q and F_p.

Point counts use the quadratic-character scan: for y^2 = x^3 + sx + t over
F_p the affine solution count at x is 1 + chi(x^3 + sx + t), so

    #E(F_p) = p + 1 + sum_x chi(x^3 + sx + t),

with chi the Legendre symbol mod p (chi(0) = 0).  A per-prime
quadratic-residue table is shared across curves, and for family scans the
full trace grid over all residue pairs (s, t) is built once per prime with
an exact integer circular correlation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import arith
from .errors import BadReductionError, SingularCurveError, SmallPrimeError

# trace_table(p) materializes a p x p grid; beyond this it is the wrong tool
_TRACE_TABLE_MAX_P = 1500


def discriminant(a: int, b: int) -> int:
    """Discriminant -16(4a^3 + 27b^2) of the candidate pair (a, b).

    Zero means the cubic has a repeated root and (a, b) is not a curve.
    Python integers are unbounded, so no overflow guard is needed.
    """
    return -16 * (4 * a**3 + 27 * b**2)


@dataclass(frozen=True)
class Curve:
    """y^2 = x^3 + ax + b with nonzero discriminant."""

    a: int
    b: int

    def __post_init__(self):
        if discriminant(self.a, self.b) == 0:
            raise SingularCurveError(f"(a, b) = ({self.a}, {self.b}) has zero discriminant")

    @property
    def disc(self) -> int:
        return discriminant(self.a, self.b)


@dataclass(frozen=True)
class FamilyBox:
    """The boxed family: |a| <= A, |b| <= B, discriminant nonzero."""

    A: int
    B: int

    def __post_init__(self):
        if self.A < 1 or self.B < 1:
            raise ValueError("box bounds must be positive")


@dataclass(frozen=True)
class HasseWindow:
    """The open interval ((sqrt N - 1)^2, (sqrt N + 1)^2) and its primes.

    Membership is the exact integer test (p - N - 1)^2 < 4N, which is
    equivalent to the trace condition (p + 1 - N)^2 < 4p.
    """

    n: int
    primes: arith.PrimeTable

    def contains(self, p: int) -> bool:
        return (p - self.n - 1) ** 2 < 4 * self.n


def hasse_window(N: int) -> HasseWindow:
    """Window of N with its sieved primes."""
    if N < 1:
        raise ValueError("N must be positive")
    w = math.isqrt(4 * N)
    lo = max(N + 1 - w, 0)
    hi = N + 1 + w
    table = arith.primes_in(lo, hi)
    kept = tuple(p for p in table if (p - N - 1) ** 2 < 4 * N)
    return HasseWindow(N, arith.PrimeTable(lo, hi, kept))


@lru_cache(maxsize=None)
def _chi_table(p: int) -> np.ndarray:
    """Legendre character mod p as an int8 array (chi[0] = 0)."""
    chi = np.full(p, -1, dtype=np.int8)
    xs = np.arange(p, dtype=np.int64)
    chi[(xs * xs) % p] = 1
    chi[0] = 0
    return chi


def count_points(curve: Curve, p: int, *, allow_p3: bool = False) -> int:
    """#E(F_p) for a prime p of good reduction.

    Raises BadReductionError when p | disc and SmallPrimeError for p <= 3
    unless allow_p3 is set (p = 3 is then counted by direct enumeration;
    p = 2 is never good for these models since 16 | disc).
    """
    if curve.disc % p == 0:
        raise BadReductionError(f"p = {p} divides the discriminant")
    if p <= 3:
        if p == 3 and allow_p3:
            return _count_points_p3(curve.a, curve.b)
        raise SmallPrimeError(f"p = {p} <= 3 (pass allow_p3=True to count at 3)")
    chi = _chi_table(p)
    xs = np.arange(p, dtype=np.int64)
    vals = (xs * xs % p * xs + curve.a % p * xs + curve.b) % p
    return p + 1 + int(chi[vals].sum())


def _count_points_p3(a: int, b: int) -> int:
    total = 1
    for x in range(3):
        v = (x**3 + a * x + b) % 3
        total += sum(1 for y in range(3) if (y * y - v) % 3 == 0)
    return total


def trace(curve: Curve, p: int, *, allow_p3: bool = False) -> int:
    """Frobenius trace p + 1 - #E(F_p); Hasse gives |trace| < 2 sqrt(p)."""
    return p + 1 - count_points(curve, p, allow_p3=allow_p3)


def aut_size(s: int, t: int, p: int) -> int:
    """#{u in F_p^*: u^4 s = s and u^6 t = t}, the model-fixing scalars.

    2 generically; 4 only possible when t = 0; 6 only possible when s = 0.
    """
    if p <= 3:
        raise SmallPrimeError("aut_size requires p > 3")
    if (4 * s**3 + 27 * t**2) % p == 0:
        raise SingularCurveError(f"({s}, {t}) is singular mod {p}")
    s %= p
    t %= p
    return sum(1 for u in range(1, p) if pow(u, 4, p) * s % p == s and pow(u, 6, p) * t % p == t)


@lru_cache(maxsize=None)
def trace_table(p: int) -> tuple[np.ndarray, np.ndarray]:
    """(traces, nonsingular) grids over all residue pairs (s, t) mod p.

    traces[s, t] is the Frobenius trace of y^2 = x^3 + sx + t (valid only
    where nonsingular[s, t]); nonsingular marks 4s^3 + 27t^2 != 0 mod p.
    Exact integer arithmetic throughout; rows are computed by circularly
    correlating the value histogram of x^3 + sx against the character
    table, which costs O(p^2) per s instead of O(p^2) per (s, t).
    """
    if p > _TRACE_TABLE_MAX_P:
        raise ValueError(f"trace_table is quadratic in memory; p = {p} is too large")
    chi = _chi_table(p).astype(np.int64)
    chi2 = np.concatenate([chi, chi])
    xs = np.arange(p, dtype=np.int64)
    traces = np.empty((p, p), dtype=np.int64)
    for s in range(p):
        g = (xs * xs % p * xs + s * xs) % p
        counts = np.bincount(g, minlength=p)
        # corr[t] = sum_v counts[v] * chi[(v + t) mod p] = sum_x chi(g(x) + t)
        corr = np.correlate(chi2, counts, "valid")[:p]
        traces[s] = -corr
    ss = np.arange(p, dtype=np.int64)
    disc_grid = (4 * (ss**3 % p)[:, None] + 27 * (ss**2 % p)[None, :]) % p
    nonsingular = disc_grid != 0
    return traces, nonsingular


def count_residue_pairs_with_trace(p: int, t: int) -> int:
    """#{(s, t') mod p nonsingular with Frobenius trace t}."""
    traces, nonsingular = trace_table(p)
    return int(((traces == t) & nonsingular).sum())


def good_window_primes(curve: Curve, N: int) -> list[int]:
    """Window primes of good reduction for this curve (p = 2 never appears)."""
    window = hasse_window(N)
    return [p for p in window.primes if p >= 3 and curve.disc % p != 0]


def m_e(curve: Curve, N: int) -> int:
    """M_E(N) = #{p of good reduction : #E(F_p) = N}.

    p = 3 participates whenever 3 does not divide the discriminant; p = 2
    never does because every short Weierstrass model has 16 | disc.
    """
    if N < 1:
        raise ValueError("N must be positive")
    hits = 0
    for p in good_window_primes(curve, N):
        if count_points(curve, p, allow_p3=True) == N:
            hits += 1
    return hits


def cumulative_m_e(curve: Curve, X: int) -> int:
    """sum_{N <= X} M_E(N), enumerated as #{good p : #E(F_p) <= X}.

    A prime p can only achieve #E <= X when (sqrt p - 1)^2 <= X, so the
    enumeration stops at p <= (sqrt X + 1)^2.
    """
    if X < 0:
        raise ValueError("X must be >= 0")
    if X == 0:
        return 0
    hi = X + 2 * (math.isqrt(X) + 1) + 1  # >= (sqrt X + 1)^2
    total = 0
    for p in arith.primes_in(3, hi):
        if curve.disc % p == 0:
            continue
        if (math.isqrt(p) - 1) ** 2 > X:
            continue
        if count_points(curve, p, allow_p3=True) <= X:
            total += 1
    return total


def family_size(box: FamilyBox) -> int:
    """#C(A, B): integer pairs in the box with nonzero discriminant.

    Singular pairs 4a^3 = -27b^2 are exactly (a, b) = (-3k^2, +-2k^3), so
    they are counted in closed form rather than by scanning the box.
    """
    singular = 1  # (0, 0)
    k = 1
    while 3 * k * k <= box.A and 2 * k**3 <= box.B:
        singular += 2
        k += 1
    return (2 * box.A + 1) * (2 * box.B + 1) - singular


def _residue_weights(bound: int, p: int) -> np.ndarray:
    """w[s] = #{x in [-bound, bound] : x = s mod p}, computed without iteration."""
    s = np.arange(p, dtype=np.int64)
    return (bound - s) // p + (bound + s) // p + 1


def family_average(N: int, box: FamilyBox) -> Fraction:
    """Average of M_E(N) over the boxed family, as an exact rational.

    Works prime by prime over the Hasse window: residue pairs (s, t) mod p
    whose curve has N points are weighted by the exact number of integer
    pairs in the box reducing to them.  Integer pairs with zero
    discriminant never land on a nonsingular residue pair, so no
    correction term is needed in the numerator.
    """
    if N < 3:
        raise ValueError("family_average requires N >= 3")
    numerator = 0
    for p in hasse_window(N).primes:
        if p < 3:
            continue
        target = p + 1 - N
        traces, nonsingular = trace_table(p)
        mask = ((traces == target) & nonsingular).astype(np.int64)
        wa = _residue_weights(box.A, p)
        wb = _residue_weights(box.B, p)
        numerator += int(wa @ mask @ wb)
    return Fraction(numerator, family_size(box))
