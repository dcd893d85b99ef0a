"""Prime generation, quadratic residue symbols and prime sums."""

from __future__ import annotations

import math

import numpy as np
from sympy import isprime as _isprime, nextprime as _nextprime

from .errors import DomainError

PRIME_LIMIT = 10**9
_SEGMENT = 1 << 22

_cache: dict[int, np.ndarray] = {}


def _simple_sieve(x: int) -> np.ndarray:
    flags = np.ones(x + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(x) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    return np.flatnonzero(flags).astype(np.int64)


def _segmented_sieve(x: int) -> np.ndarray:
    base = _simple_sieve(math.isqrt(x) + 1)
    chunks = [base[base <= x]]
    lo = int(base[-1]) + 1 if len(base) else 2
    while lo <= x:
        hi = min(lo + _SEGMENT, x + 1)
        flags = np.ones(hi - lo, dtype=bool)
        for q in base:
            q = int(q)
            if q * q >= hi:
                break
            start = max(q * q, ((lo + q - 1) // q) * q)
            flags[start - lo :: q] = False
        chunks.append(np.flatnonzero(flags).astype(np.int64) + lo)
        lo = hi
    return np.concatenate(chunks)


def primes_up_to(x: int) -> np.ndarray:
    """All primes ``<= x`` in ascending order, as an int64 array.

    Raises DomainError unless ``2 <= x <= 10**9``.
    """
    x = int(x)
    if x < 2 or x > PRIME_LIMIT:
        raise DomainError(f"primes_up_to needs 2 <= x <= {PRIME_LIMIT}, got {x}")
    for cached_x, arr in _cache.items():
        if cached_x >= x:
            return arr[: np.searchsorted(arr, x, side="right")]
    arr = _simple_sieve(x) if x <= 10**7 else _segmented_sieve(x)
    if x <= 10**7:
        _cache.clear()
        _cache[x] = arr
    return arr


def primes_between(lo: int, hi: int) -> np.ndarray:
    if hi < 2 or hi < lo:
        return np.zeros(0, dtype=np.int64)
    ps = primes_up_to(hi)
    return ps[np.searchsorted(ps, lo) :]


def is_prime(n: int) -> bool:
    return bool(_isprime(int(n)))


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    return int(_nextprime(int(n)))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"legendre needs an odd prime modulus, got {p}")
    return _legendre(a, p)


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def square_table(p: int) -> np.ndarray:
    """chi[r] = (r/p) for r in [0, p), as an int8 array."""
    chi = -np.ones(p, dtype=np.int8)
    chi[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    chi[0] = 0
    return chi


def is_perfect_square(n: int) -> bool:
    n = int(n)
    return n >= 0 and math.isqrt(n) ** 2 == n


def mertens_sum(x: float) -> float:
    """Sum of log(p)/p over primes p <= x, for 2 <= x <= 10**8."""
    if not 2 <= x <= 10**8:
        raise DomainError(f"mertens_sum needs 2 <= x <= 1e8, got {x}")
    ps = primes_up_to(int(math.floor(x))).astype(np.float64)
    return float(np.sum(np.log(ps) / ps))


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of |n| (n != 0), ascending."""
    from sympy import primefactors

    if n == 0:
        raise DomainError("prime_factors(0) is undefined")
    return [int(q) for q in primefactors(abs(int(n)))]
