"""Exact integer, modular, and multiplicative-function primitives.

Everything in this module is pure and deterministic: segmented prime
sieving, the Kronecker symbol via reciprocity (no factoring), 64-bit-safe
factorization (trial division + Pollard rho with deterministic
Miller-Rabin witnesses), Euler phi, and the multiplicative weight

    kappa_m(l^a) = l  if a is odd and l does not divide m,
                   1  otherwise.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import RangeTooLargeError

# Largest unsegmented sieve span (integers) before primes_in refuses.
DEFAULT_SEGMENT_SIZE = 1 << 20


@dataclass(frozen=True)
class PrimeTable:
    """Ascending primes in the closed range [lo, hi]."""

    lo: int
    hi: int
    primes: tuple[int, ...]

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __contains__(self, p):
        i = bisect.bisect_left(self.primes, p)
        return i < len(self.primes) and self.primes[i] == p


def _small_sieve(limit: int) -> list[int]:
    """Primes <= limit by plain Eratosthenes (bytearray)."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def primes_in(lo: int, hi: int, *, segment_size: int | None = DEFAULT_SEGMENT_SIZE) -> PrimeTable:
    """All primes p with lo <= p <= hi, ascending.

    Uses a base sieve up to sqrt(hi) plus segmented marking, so ranges far
    from 0 cost O(span + sqrt(hi)) rather than O(hi).  Pass
    ``segment_size=None`` to disable segmentation; the whole span is then
    sieved in one allocation and spans above DEFAULT_SEGMENT_SIZE raise
    RangeTooLargeError.
    """
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    if lo < 0:
        raise ValueError("lo must be >= 0")
    start_at = max(lo, 2)
    if start_at > hi:
        return PrimeTable(lo, hi, ())
    span = hi - start_at + 1
    if segment_size is None:
        if span > DEFAULT_SEGMENT_SIZE:
            raise RangeTooLargeError(
                f"span {span} exceeds {DEFAULT_SEGMENT_SIZE} and segmentation is disabled"
            )
        segment_size = span
    base = _small_sieve(math.isqrt(hi))
    out: list[int] = []
    seg_lo = start_at
    while seg_lo <= hi:
        seg_hi = min(seg_lo + segment_size - 1, hi)
        flags = bytearray([1]) * (seg_hi - seg_lo + 1)
        for p in base:
            if p * p > seg_hi:
                break
            # marking from max(p*p, ...) keeps base primes inside the range alive
            first = max(p * p, ((seg_lo + p - 1) // p) * p)
            flags[first - seg_lo :: p] = bytearray(len(range(first, seg_hi + 1, p)))
        out.extend(seg_lo + i for i, f in enumerate(flags) if f)
        seg_lo = seg_hi + 1
    return PrimeTable(lo, hi, tuple(out))


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d|n), completely multiplicative in n.

    Computed by the reciprocity reduction only (no factoring of n), so n
    may be large.  Agrees with the Legendre symbol when n is an odd prime
    not dividing d.
    """
    if d == 0 and n == 0:
        raise ValueError("kronecker(0, 0) is undefined")
    a, b = d, n
    if b == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and b % 2 == 0:
        return 0
    sign = 1
    # strip twos from b; (a|2) = 0, 1, -1 for a even, a = +-1 (8), a = +-3 (8)
    v = 0
    while b % 2 == 0:
        v += 1
        b //= 2
    if v % 2 == 1 and a % 8 in (3, 5):
        sign = -sign
    if b < 0:
        b = -b
        if a < 0:
            sign = -sign
    a %= b
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                sign = -sign
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            sign = -sign
        a %= b
    return sign if b == 1 else 0


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (witness set valid below 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    x0, c = 2, 1
    while True:
        x = y = x0
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        x0 += 1
        c += 2


_TRIAL_LIMIT = 10**6


def factorize(n: int) -> list[tuple[int, int]]:
    """Canonical factorization of n >= 1 as [(prime, exponent), ...].

    Trial division up to 10^6 (early exit at sqrt of the cofactor), then
    Pollard rho on anything left.  factorize(1) == [].
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    # 2,3,5-wheel
    d = 7
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d <= _TRIAL_LIMIT and d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += increments[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_rho(m)
        stack.append(f)
        stack.append(m // f)
    return sorted(out.items())


def euler_phi(n: int) -> int:
    """Euler's totient via the factorization product formula."""
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def kappa(m: int, n: int) -> int:
    """kappa_m(n) = product over l^a || n of (l if a odd and l∤m else 1)."""
    if m < 1 or n < 1:
        raise ValueError("kappa requires m, n >= 1")
    result = 1
    for ell, alpha in factorize(n):
        if alpha % 2 == 1 and m % ell != 0:
            result *= ell
    return result


def nu(ell: int, n: int) -> int:
    """l-adic valuation of n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def ell_free_part(ell: int, n: int) -> int:
    """n with every factor of l removed."""
    while n % ell == 0:
        n //= ell
    return n


def odd_part(n: int) -> int:
    return ell_free_part(2, n)


@lru_cache(maxsize=None)
def spf_table(limit: int) -> list[int]:
    """Smallest-prime-factor table for 0..limit (spf[p] = p at primes)."""
    spf = list(range(limit + 1))
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def factorize_with_spf(n: int, spf: list[int]) -> list[tuple[int, int]]:
    """Factor n <= len(spf)-1 using a precomputed spf table (hot loops)."""
    out = []
    while n > 1:
        p = spf[n]
        a = 0
        while n % p == 0:
            n //= p
            a += 1
        out.append((p, a))
    return out
