"""Imaginary quadratic class numbers and the weighted-isogeny mass.

h(d) counts primitive reduced binary quadratic forms (A, B, C) of
discriminant d < 0: B^2 - 4AC = d, gcd(A, B, C) = 1, |B| <= A <= C, and
B >= 0 whenever |B| = A or A = C.  w(d) is 6 at d = -3, 4 at d = -4,
otherwise 2.  The aggregate

    H(D) = sum over f with f^2 | D, D/f^2 = 0 or 1 mod 4 of h(D/f^2) / w(D/f^2)

is an exact rational with denominator dividing 12, and equals the
1/#Aut-weighted number of F_p-isomorphism classes of curves with a given
Frobenius trace t (D = t^2 - 4p), which this module also computes by an
exhaustive residue-pair scan so the two can be compared exactly.
"""

from __future__ import annotations

import atexit
import csv
import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import arith, curves
from .errors import InvalidDiscriminantError

CACHE_ENV_VAR = "CURVE_SPECTRUM_CACHE"

# d -> (h, w); survives across calls, optionally persisted as CSV
_class_cache: dict[int, tuple[int, int]] = {}
_cache_path: str | None = None


@dataclass(frozen=True)
class ClassData:
    d: int
    h: int
    w: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.h, self.w)


@dataclass(frozen=True)
class KroneckerClassNumber:
    D: int
    value: Fraction


def _check_discriminant(d: int) -> None:
    if d >= 0 or d % 4 not in (0, 1):
        raise InvalidDiscriminantError(f"{d} is not a negative discriminant (need d = 0, 1 mod 4)")


def class_number(d: int) -> ClassData:
    """h(d) and w(d) for the imaginary quadratic order of discriminant d.

    Enumerates reduced primitive forms: for each B >= 0 with B = d mod 2
    and 3B^2 <= |d|, split (B^2 - d)/4 into A * C with B <= A <= C; the
    form counts twice when -B is also reduced (B > 0, B < A, A < C).
    """
    _check_discriminant(d)
    if d in _class_cache:
        h, w = _class_cache[d]
        return ClassData(d, h, w)
    h = 0
    b = d % 2
    while 3 * b * b <= -d:
        m = (b * b - d) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                if math.gcd(math.gcd(a, b), c) == 1:
                    h += 1 if (b == 0 or b == a or a == c) else 2
            a += 1
        b += 2
    w = 6 if d == -3 else 4 if d == -4 else 2
    _class_cache[d] = (h, w)
    return ClassData(d, h, w)


def kronecker_class_number(D: int) -> KroneckerClassNumber:
    """H(D) as an exact rational (denominator divides 12)."""
    _check_discriminant(D)
    total = Fraction(0)
    f = 1
    while f * f <= -D:
        if D % (f * f) == 0:
            d = D // (f * f)
            if d % 4 in (0, 1):
                cd = class_number(d)
                total += cd.ratio
        f += 1
    return KroneckerClassNumber(D, total)


@lru_cache(maxsize=None)
def _character_table(d: int) -> tuple[np.ndarray, int]:
    """(chi_d values on 0..|d|-1, max |partial sum| over one period).

    chi_d is periodic mod |d| for d = 0, 1 mod 4, and sums to zero over a
    full period since d < 0 is never a square.
    """
    q = abs(d)
    vals = np.array([arith.kronecker(d, r) for r in range(q)], dtype=np.int64)
    partial = np.cumsum(vals)
    bound = int(np.abs(partial).max()) if q > 0 else 0
    return vals, bound


def l_one_truncated(d: int, U: int) -> tuple[float, float]:
    """(sum_{n <= U} chi_d(n)/n, tail bound).

    The tail bound is by partial summation: with B the maximum absolute
    partial sum of chi_d over one period, |sum_{n > U} chi_d(n)/n| <=
    2B/(U+1).
    """
    _check_discriminant(d)
    if U < 1:
        raise ValueError("U must be >= 1")
    q = abs(d)
    vals, bound = _character_table(d)
    n = np.arange(1, U + 1, dtype=np.int64)
    terms = vals[n % q] / n
    return float(terms.sum()), 2.0 * bound / (U + 1)


def class_number_formula_check(d: int, U: int) -> tuple[float, float]:
    """(|h/w - (sqrt|d|/2pi) L_U(1, chi_d)|, allowed residual).

    The allowed residual is the L-series tail bound scaled by the same
    sqrt(|d|)/2pi prefactor.
    """
    cd = class_number(d)
    l_value, l_tail = l_one_truncated(d, U)
    scale = math.sqrt(-d) / (2 * math.pi)
    residual = abs(cd.h / cd.w - scale * l_value)
    return residual, scale * l_tail


@lru_cache(maxsize=None)
def _trace_histogram(p: int) -> dict[int, int]:
    """trace -> #{nonsingular (s, t) mod p with that Frobenius trace}."""
    traces, nonsingular = curves.trace_table(p)
    hist: dict[int, int] = {}
    values, counts = np.unique(traces[nonsingular], return_counts=True)
    for t, c in zip(values.tolist(), counts.tolist()):
        hist[int(t)] = int(c)
    return hist


def deuring_mass(p: int, t: int) -> Fraction:
    """sum of 1/#Aut over F_p-isomorphism classes with trace t.

    Each class of curves over F_p contains exactly (p-1)/#Aut residue
    pairs (s, t'), so the mass equals the nonsingular-pair count divided
    by p - 1.  Exact rational.
    """
    if p <= 3 or not arith.is_prime(p):
        raise ValueError("deuring_mass requires a prime p > 3")
    if t * t >= 4 * p:
        raise ValueError(f"t = {t} violates t^2 < 4p")
    return Fraction(_trace_histogram(p).get(t, 0), p - 1)


def deuring_sweep(p: int) -> list[dict]:
    """Mass vs H(t^2 - 4p) for every trace |t| < 2 sqrt(p), as table rows.

    The t = 0 (supersingular) row is included and compared against
    H(-4p); the comparison is reported, not asserted anywhere.
    """
    rows = []
    tmax = math.isqrt(4 * p - 1)
    for t in range(-tmax, tmax + 1):
        mass = deuring_mass(p, t)
        H = kronecker_class_number(t * t - 4 * p).value
        rows.append({"t": t, "mass": mass, "class_number": H, "match": mass == H})
    return rows


def d_of_window_prime(N: int, p: int) -> int:
    """(p - N - 1)^2 - 4N, the discriminant attached to p in the window."""
    return (p - N - 1) ** 2 - 4 * N


def class_number_side_sum(N: int) -> float:
    """sum over window primes of H(D_N(p)) / p.

    Inner terms are exact rationals; only the final value is rounded.
    Requires N >= 8 so that every window prime exceeds 3.
    """
    if N < 8:
        raise ValueError("class_number_side_sum requires N >= 8")
    total = Fraction(0)
    for p in curves.hasse_window(N).primes:
        D = d_of_window_prime(N, p)
        total += Fraction(kronecker_class_number(D).value, p)
    return float(total)


# ---------------------------------------------------------------------------
# optional CSV persistence for the d -> (h, w) cache


def load_cache(path: str) -> int:
    """Load `d,h,w` rows into the in-memory cache; returns rows loaded."""
    count = 0
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            _class_cache[int(row["d"])] = (int(row["h"]), int(row["w"]))
            count += 1
    return count


def save_cache(path: str) -> None:
    """Atomically rewrite the cache CSV, d strictly decreasing."""
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(os.path.abspath(path)) or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["d", "h", "w"])
            for d in sorted(_class_cache, reverse=True):
                h, w = _class_cache[d]
                writer.writerow([d, h, w])
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def configure_cache(path: str | None = None) -> str | None:
    """Wire up persistence: load `path` (or $CURVE_SPECTRUM_CACHE) if it
    exists and register an atexit rewrite.  No-op when neither is set."""
    global _cache_path
    path = path or os.environ.get(CACHE_ENV_VAR)
    if not path:
        return None
    if _cache_path is None:
        atexit.register(_save_on_exit)
    _cache_path = path
    if os.path.exists(path):
        load_cache(path)
    return path


def _save_on_exit() -> None:
    if _cache_path:
        save_cache(_cache_path)
