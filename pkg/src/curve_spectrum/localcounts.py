"""Local solution counts for the window polynomial congruences.

The objects here all hang off the quadratic

    D_N(z) = z^2 - 2(N+1)z + (N-1)^2 = (z - N - 1)^2 - 4N,

whose values at window primes control which quadratic order shows up.
For odd N and odd f this module counts invertible residues z mod 4nf^2
with D_N(z) = a f^2 (mod 4nf^2) three ways: an exhaustive scan
(c_set_brute), a per-prime closed form (c_local_closed / c_total), and
the character-weighted aggregate c_{N,f}(n) both by brute sum and by its
multiplicative prime-power values (c_nf_brute / c_nf_closed).  The closed
forms must agree with the scans exactly; the test suite enforces this on
a full grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import arith
from .errors import NonDivisibleError, ParityError, PrimeNotDividingError


def d_eval(N: int, z: int) -> int:
    """D_N(z) = z^2 - 2(N+1)z + (N-1)^2."""
    return z * z - 2 * (N + 1) * z + (N - 1) ** 2


def d_reduced(N: int, f: int, p: int) -> int:
    """D_N(p) / f^2; raises unless f^2 divides exactly."""
    value = d_eval(N, p)
    if value % (f * f) != 0:
        raise NonDivisibleError(f"f^2 = {f * f} does not divide D_{N}({p}) = {value}")
    return value // (f * f)


def _legendre(c: int, ell: int) -> int:
    return arith.kronecker(c, ell)


@lru_cache(maxsize=None)
def _sqrt_count_prime_power(c: int, ell: int, e: int) -> int:
    """#{Z mod ell^e : Z^2 = c}, c already reduced mod ell^e.

    When ell does not divide c the count follows from Hensel lifting of
    the mod-ell (or mod-8) solutions.  The degenerate branch (ell | c,
    where the square root collides with the derivative's root) is settled
    by an explicit scan of the modulus, cached per (c, ell, e).
    """
    if e == 0:
        return 1
    q = ell**e
    if c == 0:
        return ell ** (e // 2)
    if c % ell:
        if ell == 2:
            if e == 1:
                return 1
            if e == 2:
                return 2 if c % 4 == 1 else 0
            return 4 if c % 8 == 1 else 0
        return 2 if _legendre(c, ell) == 1 else 0
    return sum(1 for z in range(q) if (z * z - c) % q == 0)


def count_roots_mod(N: int, f: int) -> int:
    """#{a mod f : D_N(a) = 0 mod f}.

    The substitution z = a - N - 1 is a bijection mod every prime power,
    so per prime power the count is that of Z^2 = 4N, combined by CRT.
    Always at most 8 sqrt(f).
    """
    if f < 1:
        raise ValueError("f must be >= 1")
    total = 1
    for ell, e in arith.factorize(f):
        total *= _sqrt_count_prime_power((4 * N) % ell**e, ell, e)
    return total


@lru_cache(maxsize=None)
def _c_brute_table(N: int, n: int, f: int) -> dict[int, int]:
    """a -> #C_N(a, n, f) for all a mod 4n, by one scan of z mod 4nf^2.

    For invertible z, D_N(z) mod 4nf^2 is f^2 times a unique residue a
    mod 4n, so one pass over z buckets every a at once.
    """
    M = 4 * n * f * f
    f2 = f * f
    counts: dict[int, int] = {}
    for z in range(M):
        if math.gcd(z, M) != 1:
            continue
        r = d_eval(N, z) % M
        if r % f2 == 0:
            a = (r // f2) % (4 * n)
            counts[a] = counts.get(a, 0) + 1
    return counts


def c_set_brute(N: int, a: int, n: int, f: int) -> int:
    """#{z in (Z/4nf^2 Z)^* : D_N(z) = a f^2 mod 4nf^2}, by scan."""
    _require_odd(N, f)
    if a % 4 != 1:
        raise ValueError("a must be = 1 mod 4")
    return _c_brute_table(N, n, f).get(a % (4 * n), 0)


def _require_odd(N: int, f: int) -> None:
    if N % 2 == 0 or f % 2 == 0:
        raise ParityError(f"closed forms require odd N and odd f (got N={N}, f={f})")


@dataclass(frozen=True)
class LocalCount:
    """One prime's factor of #C_N(a, n, f), with the branch that fired."""

    ell: int
    e: int
    count: int
    case: str


def c_local_closed(N: int, ell: int, a: int, n: int, f: int) -> LocalCount:
    """#C_N^(ell)(a, n, f) by the closed case analysis (odd N, odd f).

    For odd ell | nf, with e = nu_ell(n f^2) and g = 4N + a f^2 (a taken
    as its least positive residue mod 4n, so g > 0):

      ell ∤ g:  1 + (g|ell), or 1 when ell | (N-1)^2 - a f^2
      ell | g:  with s = nu_ell(g), zero unless ell ∤ N+1 and either
                s >= e (count ell^floor(e/2)) or s even with
                (g/ell^s | ell) = 1 (count 2 ell^(s/2))

    For ell = 2 the count is 2 when n is odd, 4 when n is even and
    a = 5 mod 8, and 0 otherwise.
    """
    _require_odd(N, f)
    if a % 4 != 1:
        raise ValueError("a must be = 1 mod 4")
    if (4 * n * f * f) % ell != 0:
        raise PrimeNotDividingError(f"{ell} does not divide 4nf^2 = {4 * n * f * f}")
    a %= 4 * n
    if ell == 2:
        e = 2 + arith.nu(2, n)
        if e == 2:
            return LocalCount(2, e, 2, "two:n-odd")
        if a % 8 == 5:
            return LocalCount(2, e, 4, "two:a=5(8)")
        return LocalCount(2, e, 0, "two:zero")
    e = arith.nu(ell, n) + 2 * arith.nu(ell, f)
    g = 4 * N + a * f * f
    if g % ell:
        if ((N - 1) ** 2 - a * f * f) % ell:
            return LocalCount(ell, e, 1 + _legendre(g % ell, ell), "odd:nondegenerate")
        return LocalCount(ell, e, 1, "odd:root-at-zero")
    if (N + 1) % ell == 0:
        return LocalCount(ell, e, 0, "odd:n-plus-one")
    s = arith.nu(ell, g)
    if s >= e:
        return LocalCount(ell, e, ell ** (e // 2), "odd:deep")
    if s % 2 == 0 and _legendre((g // ell**s) % ell, ell) == 1:
        return LocalCount(ell, e, 2 * ell ** (s // 2), "odd:even-split")
    return LocalCount(ell, e, 0, "odd:zero")


def c_total(N: int, a: int, n: int, f: int) -> int:
    """#C_N(a, n, f) as the CRT product of per-prime closed counts."""
    _require_odd(N, f)
    total = c_local_closed(N, 2, a, n, f).count
    odd_primes = {ell for ell, _ in arith.factorize(arith.odd_part(n))}
    odd_primes.update(ell for ell, _ in arith.factorize(f) if ell != 2)
    for ell in sorted(odd_primes):
        total *= c_local_closed(N, ell, a, n, f).count
        if total == 0:
            break
    return total


def s2(n: int, a: int) -> int:
    """1 if n odd; 2 if n even and a = 5 mod 8; else 0."""
    if a % 2 == 0:
        raise ValueError("a must be odd")
    if n % 2:
        return 1
    return 2 if a % 8 == 5 else 0


def c_nf_brute(N: int, f: int, n: int) -> int:
    """c_{N,f}(n) summed literally over admissible a."""
    _require_odd(N, f)
    odd_primes = [ell for ell, _ in arith.factorize(arith.odd_part(n))]
    total = 0
    for a in range(1, 4 * n + 1, 4):
        if math.gcd(a, 4 * n) != 1:
            continue
        term = arith.kronecker(a, n) * s2(n, a)
        for ell in odd_primes:
            if term == 0:
                break
            term *= c_local_closed(N, ell, a, n, f).count
        total += term
    return total


def c_one_f(N: int, ell: int, f: int) -> int:
    """#C_N^(ell)(1, 1, f) for an odd prime ell | f (the a-independent case).

      ell ∤ N:  1 + (N (N-1)^2 | ell)
      ell | N:  2 ell^(nu_N/2) when nu_N is even, below 2 nu_f, and the
                ell-free part of N is a residue; ell^(nu_f) when
                2 nu_f <= nu_N; 0 otherwise.
    """
    _require_odd(N, f)
    if ell == 2 or f % ell != 0:
        raise PrimeNotDividingError(f"need an odd prime dividing f, got {ell} | {f}")
    if N % ell:
        return 1 + _legendre(N % ell, ell) * _legendre((N - 1) % ell, ell) ** 2
    nu_n = arith.nu(ell, N)
    nu_f = arith.nu(ell, f)
    if 2 * nu_f <= nu_n:
        return ell**nu_f
    if nu_n % 2 == 0 and _legendre(arith.ell_free_part(ell, N) % ell, ell) == 1:
        return 2 * ell ** (nu_n // 2)
    return 0


def _c_prime_power_closed(N: int, f: int, ell: int, alpha: int) -> int:
    """c_{N,f}(ell^alpha) from the multiplicative table."""
    if ell == 2:
        return (-1) ** alpha * 2**alpha
    lead = ell ** (alpha - 1)
    even = alpha % 2 == 0
    if f % ell == 0:
        C = c_one_f(N, ell, f)
        if N % ell:
            return lead * C * (ell - 1) if even else 0
        nu_n, nu_f = arith.nu(ell, N), arith.nu(ell, f)
        if 2 * nu_f < nu_n:
            return lead * C * (ell - 1)
        if nu_n < 2 * nu_f:
            return lead * C * (ell - 1) if even else 0
        chi_plus = _legendre(arith.ell_free_part(ell, N) % ell, ell)
        chi_minus = _legendre(-arith.ell_free_part(ell, N) % ell, ell)
        if even:
            return lead * C * (ell - 1 - chi_plus + chi_minus)
        return lead * C * (chi_minus - 1)
    if N % ell == 0:
        return lead * (ell - 2)
    chi_n = _legendre(N % ell, ell)
    chi_nm1_sq = _legendre((N - 1) % ell, ell) ** 2
    if even:
        return lead * (ell - 1 - chi_n - chi_nm1_sq)
    return lead * (-1 - chi_nm1_sq)


def c_nf_closed(N: int, f: int, n: int) -> int:
    """c_{N,f}(n) as the product of its prime-power values."""
    _require_odd(N, f)
    total = 1
    for ell, alpha in arith.factorize(n):
        total *= _c_prime_power_closed(N, f, ell, alpha)
        if total == 0:
            break
    return total
