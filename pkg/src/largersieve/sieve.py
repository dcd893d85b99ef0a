"""Heights, congruence lemmas, the larger sieve and explicit HIT bound formulas.

Everything here works over Q, but the degree ``d = [k:Q]`` is kept as a
parameter so the formulas read the same as for a general number field.
Bounds carrying an implicit ``<<`` constant are evaluated with that constant
set to 1 and tagged ``shape_only``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import DomainError, ResourceError
from .primes import is_prime, prime_factors, primes_between

CUTOFF_CEILING = 10**9


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^n(Q) with coprime integer coordinates, first nonzero positive."""

    coords: tuple

    def __post_init__(self):
        c = tuple(int(v) for v in self.coords)
        if not any(c):
            raise DomainError("projective point needs a nonzero coordinate")
        g = reduce(math.gcd, c)
        c = tuple(v // g for v in c)
        if next(v for v in c if v) < 0:
            c = tuple(-v for v in c)
        object.__setattr__(self, "coords", c)

    def reduce_mod(self, p: int) -> tuple:
        """Canonical representative of the reduction in P^n(F_p)."""
        r = [v % p for v in self.coords]
        lead = next(v for v in r if v)
        inv = pow(lead, -1, p)
        return tuple(v * inv % p for v in r)


@dataclass(frozen=True)
class IntPoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(v) for v in self.coords))

    def norm(self) -> int:
        return max((abs(v) for v in self.coords), default=0)

    def __sub__(self, other):
        return IntPoint(tuple(a - b for a, b in zip(self.coords, other.coords)))


def proj_height(P: ProjPoint) -> int:
    return max(abs(v) for v in P.coords)


def _log_sum(primes) -> float:
    return math.fsum(math.log(q) for q in primes)


def congruent_prime_sum_proj(P: ProjPoint, Q: ProjPoint):
    """Sum of log p over primes where P and Q reduce to the same point.

    Two reduced points agree mod p exactly when p divides every 2x2 minor
    x_i y_j - x_j y_i, so the witnesses are the primes dividing the gcd of
    the minors.  Returns ``(sum, primes)``.
    """
    if len(P.coords) != len(Q.coords):
        raise DomainError("points live in different projective spaces")
    if P == Q:
        raise DomainError("P and Q coincide; the sum diverges")
    x, y = P.coords, Q.coords
    g = 0
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            g = math.gcd(g, x[i] * y[j] - x[j] * y[i])
    witnesses = prime_factors(g)
    return _log_sum(witnesses), witnesses


def congruent_prime_sum_int(P: IntPoint, Q: IntPoint):
    """Sum of log p over primes dividing every coordinate of P - Q."""
    if P == Q:
        raise DomainError("P and Q coincide; the sum diverges")
    g = reduce(math.gcd, (P - Q).coords, 0)
    witnesses = prime_factors(g)
    return _log_sum(witnesses), witnesses


# ---------------------------------------------------------------------------
# Occupancy and sieve instances
# ---------------------------------------------------------------------------


def _as_int_array(points) -> np.ndarray:
    if isinstance(points, np.ndarray):
        arr = points
    else:
        pts = list(points)
        if pts and isinstance(pts[0], IntPoint):
            pts = [q.coords for q in pts]
        arr = np.asarray(pts, dtype=object)
        if arr.size and max(abs(int(v)) for v in arr.ravel()) < 2**62:
            arr = arr.astype(np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return arr


def measure_occupancy(points, p: int) -> int:
    """Exact number of residues hit by the point set modulo p.

    ``points`` is a sequence of ProjPoints (reduced in P^n(F_p)), IntPoints,
    plain integers, or an integer array with one row per point.
    """
    pts = list(points) if not isinstance(points, np.ndarray) else points
    if len(pts) == 0:
        return 0
    if not isinstance(pts, np.ndarray) and isinstance(pts[0], ProjPoint):
        return len({P.reduce_mod(p) for P in pts})
    arr = _as_int_array(pts)
    if arr.dtype == object:
        return len({tuple(int(v) % p for v in row) for row in arr})
    return int(len(np.unique(np.mod(arr, p), axis=0)))


def _occupancy_1d(values: np.ndarray, primes) -> list:
    """Residue counts of one integer set for many primes at once."""
    if len(values) == 0:
        return [0] * len(primes)
    r = np.sort(np.mod(values[:, None], np.asarray(primes, dtype=np.int64)[None, :]), axis=0)
    return (1 + np.count_nonzero(np.diff(r, axis=0), axis=0)).tolist()


@dataclass(frozen=True)
class SieveInstance:
    """A finite point set with a height budget and per-prime occupancy bounds.

    ``kind`` is ``"proj"`` (H(P) <= B for all points) or ``"int"``
    (||P - Q|| <= B for all pairs).  ``occupancy`` maps each sieving prime to
    g_p >= 1; the sieving set J is its key set.
    """

    points: tuple
    height_budget: float
    occupancy: dict
    kind: str = "int"
    degree: int = 1
    excluded_primes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in ("proj", "int"):
            raise DomainError(f"unknown sieve kind {self.kind!r}")
        if self.height_budget < 1:
            raise DomainError("height budget must be >= 1")
        for p, g in self.occupancy.items():
            if p in self.excluded_primes:
                raise DomainError(f"prime {p} is excluded but carries an occupancy")
            if g < 1:
                raise DomainError(f"occupancy g_{p} = {g} is below 1")
        if self.points:
            if self.kind == "proj":
                worst = max(proj_height(P) for P in self.points)
            else:
                arr = _as_int_array(self.points)
                worst = int(np.max(arr.max(axis=0) - arr.min(axis=0)))
            if worst > self.height_budget:
                raise DomainError(f"points exceed the height budget ({worst} > {self.height_budget})")

    @classmethod
    def measured(cls, points, primes, height_budget=None, kind="int", degree=1):
        """Instance whose occupancy is the exact reduction size at each prime."""
        points = tuple(points)
        if height_budget is None:
            if kind == "proj":
                height_budget = max(proj_height(P) for P in points)
            else:
                arr = _as_int_array(points)
                height_budget = max(1, int(np.max(arr.max(axis=0) - arr.min(axis=0))))
        primes = [int(p) for p in primes]
        arr = None if (points and isinstance(points[0], ProjPoint)) else _as_int_array(points)
        if arr is not None and arr.dtype == np.int64 and arr.shape[1] == 1 and primes:
            occ = dict(zip(primes, _occupancy_1d(arr[:, 0], primes)))
        else:
            occ = {p: measure_occupancy(points, p) for p in primes}
        return cls(points, height_budget, occ, kind=kind, degree=degree)


@dataclass(frozen=True)
class SieveBound:
    """Outcome of a larger-sieve evaluation; ``value`` is None when inconclusive."""

    formula: str
    inputs: dict
    numerator: float
    denominator: float
    value: float | None

    @property
    def inconclusive(self) -> bool:
        return self.value is None

    def to_json(self) -> str:
        return json.dumps(
            {"formula": self.formula, "inputs": self.inputs, "value": self.value, "inconclusive": self.inconclusive}
        )


def _larger_sieve(inst: SieveInstance, penalty: float, formula: str) -> SieveBound:
    if not inst.occupancy:
        raise DomainError("the sieve needs at least one prime")
    log_total = math.fsum(math.log(p) for p in inst.occupancy)
    log_weighted = math.fsum(math.log(p) / g for p, g in inst.occupancy.items())
    num = log_total - penalty
    den = log_weighted - penalty
    inputs = {
        "primes": len(inst.occupancy),
        "max_prime": max(inst.occupancy),
        "B": inst.height_budget,
        "d": inst.degree,
        "points": len(inst.points),
    }
    return SieveBound(formula, inputs, num, den, num / den if den > 0 else None)


def sieve_bound_proj(inst: SieveInstance) -> SieveBound:
    """Larger sieve for rational points with H(P) <= B."""
    penalty = inst.degree * math.log(2 * inst.height_budget**2)
    return _larger_sieve(inst, penalty, "(sum log p - d log(2B^2)) / (sum log p/g_p - d log(2B^2))")


def sieve_bound_int(inst: SieveInstance) -> SieveBound:
    """Larger sieve for integral points with ||P - Q|| <= B."""
    penalty = inst.degree * math.log(inst.height_budget)
    return _larger_sieve(inst, penalty, "(sum log p - d log B) / (sum log p/g_p - d log B)")


# ---------------------------------------------------------------------------
# Analytic cutoff and bound formulas
# ---------------------------------------------------------------------------


def _cutoff_primes(D: float, S, x: float) -> np.ndarray:
    ps = primes_between(int(math.ceil(D * D)), int(x))
    if S:
        ps = ps[~np.isin(ps, np.fromiter(S, dtype=np.int64))]
    return ps


def cutoff_occupancy(delta: float, D: float, p):
    """Largest occupancy allowed by g_p <= delta (p + D sqrt p), floored at 1."""
    return np.maximum(1.0, delta * (p + D * np.sqrt(p)))


def cutoff_denominator(delta, D, S, B, d, x) -> float:
    """Sieve denominator at the extreme occupancy allowed at cutoff x."""
    ps = _cutoff_primes(D, S, x).astype(np.float64)
    return float(np.sum(np.log(ps) / cutoff_occupancy(delta, D, ps))) - d * math.log(B)


def auto_cutoff(delta: float, D: float, S, B: float, d: int = 1) -> int:
    """Smallest x on a doubling ladder making the sieve denominator >= 1.

    Stands in for the unspecified constant in the analytic cutoff: any set
    whose occupancy obeys g_p <= delta (p + D sqrt p) for p outside S then
    has a sieve bound with denominator at least 1 when sieved over primes in
    [D^2, x].
    """
    if not 0 < delta <= 1:
        raise DomainError("delta must lie in (0, 1]")
    if D < 1 or B < 1:
        raise DomainError("need D >= 1 and B >= 1")
    x = max(2, int(math.ceil(D * D)))
    while cutoff_denominator(delta, D, S, B, d, x) < 1:
        x *= 2
        if x > CUTOFF_CEILING:
            raise ResourceError("cutoff search passed 1e9")
    return x


def _tail_sum(S, floor_value: float) -> float:
    return math.fsum(math.log(p) / p for p in S if p >= floor_value)


def specialized_bound(delta: float, D: float, S, B: float, d: int = 1) -> float:
    """D^2 exp(sum_{p in S, p >= D^2} log p / p) B^(d delta), shape only."""
    if not 0 < delta <= 1 or D < 1:
        raise DomainError("need 0 < delta <= 1 and D >= 1")
    return D * D * math.exp(_tail_sum(S, D * D)) * B ** (d * delta)


@dataclass(frozen=True)
class CoverBoundInput:
    """Group data for the uniform HIT bound.

    ``kappa_data`` lists (|kappa|, |C_kappa|) for the conjugacy classes kappa
    of Gal(K/k); ``gg_order`` is the order of the geometric monodromy group.
    """

    gg_order: int
    kappa_data: tuple
    S: frozenset
    n: int
    d: int
    B: float

    def __post_init__(self):
        if self.gg_order < 1:
            raise DomainError("gg_order must be >= 1")
        if not self.kappa_data:
            raise DomainError("kappa_data is empty")
        for k, c in self.kappa_data:
            if k < 1 or c < 0 or c > k * self.gg_order:
                raise DomainError(f"inconsistent class data (|kappa|={k}, |C_kappa|={c})")
        if not any(c for _, c in self.kappa_data):
            raise DomainError("C must be nonempty")
        for p in self.S:
            if not is_prime(p):
                raise DomainError(f"{p} in S is not prime")


@dataclass(frozen=True)
class HitBound:
    delta: Fraction
    c: float
    bound: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "formula": "c * B^(d(n-1+delta)) * log B",
                "value": self.bound,
                "delta": str(self.delta),
                "c": self.c,
                "inconclusive": False,
                "shape_only": True,
            }
        )


def hit_bound(inp: CoverBoundInput) -> HitBound:
    """delta, c and c B^(d(n-1+delta)) log B for the given cover data."""
    if inp.B < 2:
        raise DomainError("B must be >= 2")
    delta = max(Fraction(c, k * inp.gg_order) for k, c in inp.kappa_data)
    g2 = inp.gg_order**2
    c = g2 * math.exp(_tail_sum(inp.S, g2))
    bound = c * inp.B ** (inp.d * (inp.n - 1 + float(delta))) * math.log(inp.B)
    return HitBound(delta, c, bound)


def sieve_primes(lo: int, hi: int) -> list[int]:
    return [int(p) for p in primes_between(lo, hi)]

