"""Elliptic curves y^2 = x^3 + a x + b: Frobenius traces and mod-l surjectivity.

A curve is certified surjective mod l when the Frobenius pairs
(a_p mod l, p mod l) for good primes p reach all three Serre classes; by the
classification of subgroups of GL_2(F_l) the image then contains SL_2(F_l),
and with surjective determinant it is all of GL_2(F_l).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .galois import CensusReport
from .polys import IntPoly
from .primes import is_prime, primes_up_to, square_table
from .serre import SerreClass, classify_trace_det

POINT_COUNT_LIMIT = 10**6
MAX_FAMILY_B = 10**4
FAMILY_ELLS = tuple(p for p in range(5, 38) if is_prime(p))


@dataclass(frozen=True)
class CurveQ:
    a: int
    b: int

    def __post_init__(self):
        if self.disc == 0:
            raise DomainError(f"y^2 = x^3 + {self.a}x + {self.b} is singular")

    @property
    def disc(self) -> int:
        """4a^3 + 27b^2, the discriminant up to the factor -16."""
        return 4 * self.a**3 + 27 * self.b**2

    def is_good(self, p: int) -> bool:
        return p > 3 and self.disc % p != 0


@dataclass(frozen=True)
class FrobData:
    p: int
    a_p: int

    def __post_init__(self):
        if self.a_p * self.a_p > 4 * self.p:
            raise AssertionError(f"|a_{self.p}| = {abs(self.a_p)} violates the Hasse bound")


def _check_good(E: CurveQ, p: int):
    if p > POINT_COUNT_LIMIT:
        raise DomainError(f"p = {p} exceeds the point-count limit {POINT_COUNT_LIMIT}")
    if p < 5 or not is_prime(p) or not E.is_good(p):
        raise DomainError(f"p = {p} is not a good prime >= 5 for {E}")


def _cubic_values(E: CurveQ, p: int) -> np.ndarray:
    u = np.arange(p, dtype=np.int64)
    return ((u * u % p) * u + (E.a % p) * u + E.b % p) % p


def point_count_mod_p(E: CurveQ, p: int) -> FrobData:
    """a_p = -sum_u legendre(u^3 + a u + b, p)."""
    _check_good(E, p)
    chi = square_table(p)
    return FrobData(p, -int(chi[_cubic_values(E, p)].sum()))


def point_count_naive(E: CurveQ, p: int) -> int:
    """#E(F_p) by enumerating all (x, y), plus the point at infinity."""
    _check_good(E, p)
    squares = np.bincount(np.arange(p, dtype=np.int64) ** 2 % p, minlength=p)
    return 1 + int(squares[_cubic_values(E, p)].sum())


def frobenius_serre_class(E: CurveQ, p: int, ell: int) -> SerreClass:
    if p == ell:
        raise DomainError("p must differ from l")
    return classify_trace_det(point_count_mod_p(E, p).a_p, p, ell)


@dataclass(frozen=True)
class Certification:
    certified: bool
    gaps: tuple
    witnesses: dict = field(default_factory=dict, compare=False)


_CLASS_NAMES = ("C1", "C2", "C3")


def _scan(E: CurveQ, ells, prime_budget: int) -> dict:
    """Witness primes per l and class, stopping once every l is certified."""
    found = {ell: {} for ell in ells}
    if prime_budget < 5:
        return found
    for p in primes_up_to(prime_budget):
        p = int(p)
        if not E.is_good(p):
            continue
        a_p = None
        for ell in ells:
            if p == ell or len(found[ell]) == 3:
                continue
            if a_p is None:
                a_p = point_count_mod_p(E, p).a_p
            cls = classify_trace_det(a_p, p, ell).as_tuple()
            for name, hit in zip(_CLASS_NAMES, cls):
                if hit and name not in found[ell]:
                    found[ell][name] = p
        if all(len(w) == 3 for w in found.values()):
            break
    return found


def _certification(witnesses: dict) -> Certification:
    gaps = tuple(n for n in _CLASS_NAMES if n not in witnesses)
    return Certification(not gaps, gaps, dict(witnesses))


def certify_surjective(E: CurveQ, ell: int, prime_budget: int) -> Certification:
    """Scan good primes p <= prime_budget, p != l, for witnesses of C1, C2, C3."""
    if ell < 5 or not is_prime(ell):
        raise DomainError("l must be a prime >= 5")
    return _certification(_scan(E, [ell], prime_budget)[ell])


# ---------------------------------------------------------------------------
# One-parameter families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """y^2 = x^3 + a(t) x + b(t) for integer t; singular fibres are excluded and tallied."""

    name: str
    a: IntPoly
    b: IntPoly

    def __post_init__(self):
        if (IntPoly((4,)) * self.a * self.a * self.a + IntPoly((27,)) * self.b * self.b).is_zero():
            raise DomainError("the discriminant vanishes identically")

    def curve(self, t: int) -> CurveQ | None:
        a, b = self.a(t), self.b(t)
        if 4 * a**3 + 27 * b**2 == 0:
            return None
        return CurveQ(a, b)


def legendre_family() -> FamilySpec:
    """Short form of y^2 = x(x-1)(x-t), via c4 = 16(t^2 - t + 1), c6 = 32(t+1)(2t-1)(t-2).

    The model y^2 = x^3 - 27 c4 x - 54 c6 is isomorphic to the Legendre
    curve over Q; the change of variables only involves 2 and 3, which are
    never used as sieving primes.  Singular fibres are t = 0 and t = 1.
    """
    a = IntPoly((-432, 432, -432))
    b = IntPoly((-1728,)) * IntPoly((1, 1)) * IntPoly((-1, 2)) * IntPoly((-2, 1))
    return FamilySpec("legendre", a, b)


def _family_shard(fam: FamilySpec, B: int, ells: tuple, prime_budget: int, lo: int, hi: int) -> dict:
    out: dict = {}
    for k in range(lo, hi):
        t = k - B
        E = fam.curve(t)
        if E is None:
            for ell in ells:
                out[f"{ell}:excluded"] = out.get(f"{ell}:excluded", 0) + 1
            continue
        found = _scan(E, ells, prime_budget)
        for ell in ells:
            ok = len(found[ell]) == 3
            key = f"{ell}:certified" if ok else f"{ell}:uncertified"
            out[key] = out.get(key, 0) + 1
            if not ok:
                out.setdefault(f"{ell}:uncertified_t", []).append(t)
    return out


def family_census(fam: FamilySpec, B: int, ells, prime_budget: int, shards: int = 1, threads: int = 1, seed: int = 0) -> CensusReport:
    """Certification counts for t in [-B, B], per l."""
    from .runner import shard_and_merge

    if not 1 <= B <= MAX_FAMILY_B:
        raise DomainError(f"B must lie in [1, {MAX_FAMILY_B}]")
    ells = tuple(sorted(set(int(l) for l in ells)))
    if not ells or any(l not in FAMILY_ELLS for l in ells):
        raise DomainError(f"l must be drawn from {FAMILY_ELLS}")
    t0 = time.perf_counter()
    raw = shard_and_merge(_family_shard, 2 * B + 1, shards=shards, threads=threads, args=(fam, B, ells, prime_budget))
    elapsed = time.perf_counter() - t0
    counts, bounds, ratios, extra = {}, {}, {}, {}
    for ell in ells:
        c = {k: raw.get(f"{ell}:{k}", 0) for k in ("certified", "uncertified", "excluded")}
        if sum(c.values()) != 2 * B + 1:
            raise AssertionError("family census does not partition the parameter range")
        for k, v in c.items():
            counts[f"l={ell}:{k}"] = v
        shape = ell**6 * math.sqrt(B) * math.log(B) if B > 1 else float("nan")
        bounds[f"l={ell}"] = shape
        ratios[f"l={ell}"] = c["uncertified"] / shape
        extra[f"l={ell}:uncertified_t"] = sorted(raw.get(f"{ell}:uncertified_t", []))
    params = {"family": fam.name, "B": B, "ells": list(ells), "prime_budget": prime_budget}
    return CensusReport("ec-census", params, counts, bounds, ratios, extra, elapsed, seed)
