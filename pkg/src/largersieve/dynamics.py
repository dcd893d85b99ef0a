"""Orbits of integer polynomial maps modulo primes, and height growth.

Values are exact Python integers throughout: orbits over Z grow doubly
exponentially, and the height inequality is meaningless with rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ResourceError
from .polys import IntPoly
from .primes import primes_up_to

MAX_ORBIT_PRIME = 10**9
MAX_DENSITY_X = 10**7
MAX_HEIGHT_ITERS = 20
MAX_HEIGHT_BITS = 1 << 26


@dataclass(frozen=True)
class PolyMap:
    phi: IntPoly

    def __post_init__(self):
        if self.phi.degree < 2:
            raise DomainError("the map must have degree >= 2")

    @property
    def degree(self) -> int:
        return self.phi.degree

    def __call__(self, x: int) -> int:
        return self.phi(x)

    def step_mod(self, x: int, p: int) -> int:
        acc = 0
        for c in reversed(self.phi.coeffs):
            acc = (acc * x + c) % p
        return acc


@dataclass(frozen=True)
class OrbitRecord:
    p: int
    tail: int
    cycle: int

    def __post_init__(self):
        if self.tail < 0 or self.cycle < 1 or self.m_p > self.p:
            raise AssertionError(f"impossible orbit shape {self}")

    @property
    def m_p(self) -> int:
        return self.tail + self.cycle


def orbit_mod_p(phi: PolyMap, P: int, p: int) -> OrbitRecord:
    """Tail and cycle length of the orbit of P mod p (Brent's algorithm)."""
    if not 2 <= p <= MAX_ORBIT_PRIME:
        raise DomainError(f"p must lie in [2, {MAX_ORBIT_PRIME}]")
    x0 = P % p
    power = lam = 1
    tortoise, hare = x0, phi.step_mod(x0, p)
    while tortoise != hare:
        if power == lam:
            tortoise, power, lam = hare, power * 2, 0
        hare = phi.step_mod(hare, p)
        lam += 1
    tortoise = hare = x0
    for _ in range(lam):
        hare = phi.step_mod(hare, p)
    mu = 0
    while tortoise != hare:
        tortoise, hare = phi.step_mod(tortoise, p), phi.step_mod(hare, p)
        mu += 1
    return OrbitRecord(p, mu, lam)


def orbit_mod_p_naive(phi: PolyMap, P: int, p: int) -> OrbitRecord:
    """Same record by remembering the index of every visited residue."""
    seen: dict = {}
    x = P % p
    while x not in seen:
        seen[x] = len(seen)
        x = phi.step_mod(x, p)
    return OrbitRecord(p, seen[x], len(seen) - seen[x])


@dataclass(frozen=True)
class DensityProfile:
    """Finite-x share of primes p <= x whose orbit size reaches eps*log p."""

    x: int
    eps: float
    fraction: float
    checkpoints: dict
    table: list

    def rows(self) -> list:
        return [
            {"p": r.p, "tail": r.tail, "cycle": r.cycle, "m_p": r.m_p, "threshold": self.eps * math.log(r.p), "pass": r.m_p >= self.eps * math.log(r.p)}
            for r in self.table
        ]


def density_profile(phi: PolyMap, P: int, x: int, eps: float) -> DensityProfile:
    if not eps < 1 / math.log(phi.degree):
        raise DomainError("eps must be below 1/log(deg phi)")
    if eps <= 0:
        raise DomainError("eps must be positive")
    if not 2 <= x <= MAX_DENSITY_X:
        raise DomainError(f"x must lie in [2, {MAX_DENSITY_X}]")
    primes = [int(p) for p in primes_up_to(x)]
    table = [orbit_mod_p(phi, P, p) for p in primes]
    ok = [r.m_p >= eps * math.log(r.p) for r in table]
    checkpoints = {}
    for cut in (x // 100, x // 10, x):
        sel = [h for r, h in zip(table, ok) if r.p <= cut]
        checkpoints[cut] = sum(sel) / len(sel) if sel else float("nan")
    return DensityProfile(x, eps, sum(ok) / len(ok), checkpoints, table)


def _height(v: int) -> float:
    return math.log(max(abs(v), 1))


def height_growth_check(phi: PolyMap, P: int, iters: int):
    """Smallest c >= 0 with h(phi^i(P)) <= d^i (h(P) + c) for 0 <= i <= iters.

    Returns the integer 0 when the inequality holds with c = 0, which is
    decided exactly by comparing |phi^i(P)| with H(P)^(d^i).  Otherwise
    returns the float max_i (h_i / d^i - h_0).
    """
    if not 0 <= iters <= MAX_HEIGHT_ITERS:
        raise DomainError(f"iters must lie in [0, {MAX_HEIGHT_ITERS}]")
    d = phi.degree
    H0 = max(abs(P), 1)
    orbit = [P]
    for _ in range(iters):
        nxt = phi(orbit[-1])
        if nxt.bit_length() > MAX_HEIGHT_BITS:
            raise ResourceError("orbit values exceed the big-integer budget")
        orbit.append(nxt)
    if all(abs(v) <= H0 ** (d**i) for i, v in enumerate(orbit)):
        return 0
    h0 = _height(P)
    return max(0.0, max(_height(v) / d**i - h0 for i, v in enumerate(orbit)))
