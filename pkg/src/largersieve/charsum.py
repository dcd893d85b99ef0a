"""Equidistribution of quadratic residues along y^2 = f(x) over F_p.

For squarefree f of degree n and an odd prime p not dividing disc(f), the
values u with f(u) != 0 split into residues and non-residues.  Each half
deviates from |U(F_p)|/2 by at most (M - 2) sqrt(p) / sqrt(2), where M
counts the geometric branch points of the double cover: the n roots of f,
plus the point at infinity when n is odd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DomainError
from .polys import IntPoly, int_poly_disc, resultant
from .primes import is_prime, primes_up_to, square_table


@dataclass(frozen=True)
class QuadCoverInstance:
    f: IntPoly
    p: int

    def __post_init__(self):
        if self.f.degree < 1:
            raise DomainError("f must be non-constant")
        if self.p < 3 or not is_prime(self.p):
            raise DomainError("p must be an odd prime")
        if self.f.lead % self.p == 0:
            raise DomainError("leading coefficient vanishes mod p")
        if self.f.degree >= 2:
            disc = int_poly_disc(self.f) if self.f.is_monic() else _general_disc(self.f)
            if disc == 0:
                raise DomainError("f is not squarefree")
            if disc % self.p == 0:
                raise DomainError(f"f is not squarefree mod {self.p}")

    @property
    def M(self) -> int:
        n = self.f.degree
        return n + (n % 2)

    def chi_values(self) -> np.ndarray:
        p = self.p
        u = np.arange(p, dtype=np.int64)
        acc = np.zeros(p, dtype=np.int64)
        for c in reversed(self.f.coeffs):
            acc = (acc * u + c) % p
        return square_table(p)[acc]


def _general_disc(f: IntPoly) -> int:
    n = f.degree
    r = resultant(f, f.derivative())
    return (-1) ** (n * (n - 1) // 2) * r // f.lead


def class_count(inst: QuadCoverInstance, c: int) -> int:
    """#{u in F_p : f(u) != 0 and legendre(f(u), p) = c}."""
    if c not in (1, -1):
        raise DomainError("c must be +1 or -1")
    return int(np.count_nonzero(inst.chi_values() == c))


def deviation_check(inst: QuadCoverInstance) -> tuple:
    """(deviation, bound, passed) for the two classes of the double cover."""
    chi = inst.chi_values()
    units = int(np.count_nonzero(chi))
    half = units / 2
    dev = max(abs(int(np.count_nonzero(chi == c)) - half) for c in (1, -1))
    bound = (inst.M - 2) * math.sqrt(inst.p) / math.sqrt(2)
    return dev, bound, dev <= bound


def character_sum(inst: QuadCoverInstance) -> int:
    """sum_u legendre(f(u), p), accumulated one value at a time."""
    p = inst.p
    total = 0
    for u in range(p):
        v = inst.f(u) % p
        if v:
            total += 1 if pow(v, (p - 1) // 2, p) == 1 else -1
    return total


@dataclass
class ScanSummary:
    degree: int
    coeff_bound: int
    pmax: int
    instances: int
    failures: list
    worst_ratio: float
    skipped_nonsquarefree: int

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "coeff_bound": self.coeff_bound,
            "pmax": self.pmax,
            "instances": self.instances,
            "failures": self.failures,
            "worst_ratio": self.worst_ratio,
            "skipped_nonsquarefree": self.skipped_nonsquarefree,
            "boundary_convention": "roots of f plus infinity for odd degree",
        }


def monic_family(degree: int, coeff_bound: int) -> np.ndarray:
    """All monic tails (t1..tn) with |ti| <= coeff_bound, one row each."""
    r = range(-coeff_bound, coeff_bound + 1)
    return np.array(list(product(r, repeat=degree)), dtype=np.int64)


def scan_family(degree: int, coeff_bound: int, pmax: int) -> ScanSummary:
    """Check the deviation bound for every squarefree monic f and valid p <= pmax.

    Rows are tails in descending-power order: f = x^n + t1 x^(n-1) + ... + tn.
    """
    tails = monic_family(degree, coeff_bound)
    discs = np.array([int_poly_disc(IntPoly.monic(list(t))) for t in tails], dtype=object)
    keep = np.array([d != 0 for d in discs])
    tails, discs = tails[keep], discs[keep]
    skipped = int(np.count_nonzero(~keep))
    M = degree + degree % 2
    instances, failures, worst = 0, [], 0.0
    for p in primes_up_to(pmax):
        p = int(p)
        if p == 2:
            continue
        valid = np.array([d % p != 0 for d in discs])
        T = tails[valid]
        if len(T) == 0:
            continue
        u = np.arange(p, dtype=np.int64)
        acc = np.ones((len(T), p), dtype=np.int64)
        for j in range(degree):
            acc = (acc * u + T[:, j : j + 1]) % p
        S = square_table(p)[acc].sum(axis=1, dtype=np.int64)
        dev = np.abs(S) / 2
        bound = (M - 2) * math.sqrt(p) / math.sqrt(2)
        bad = np.flatnonzero(dev > bound)
        failures.extend((tuple(int(v) for v in T[i]), p) for i in bad)
        worst = max(worst, float(dev.max() / bound))
        instances += len(T)
    return ScanSummary(degree, coeff_bound, pmax, instances, failures, worst, skipped)
