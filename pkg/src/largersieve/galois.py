"""Galois groups of monic integer polynomials x^n + t1 x^(n-1) + ... + tn.

Degrees 2 to 4 are classified exactly (factorisation, discriminant and the
resolvent cubic).  Higher degrees use factor shapes modulo primes, which can
prove the group is S_n but never that it is smaller; everything else is
reported honestly as undetermined.

``classify_box`` is a vectorised classifier for n <= 4 used by the box
censuses; it is cross-checked against the scalar functions in the tests.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResourceError
from .polys import FpPoly, IntPoly, factor_degrees, fp_factor_shape, int_poly_disc, int_poly_factor
from .primes import is_perfect_square, is_prime, primes_up_to

BOX_LIMIT = 10**9
_CHUNK = 1 << 17
# keeps discriminants and Horner steps on candidate roots inside int64
_VECTOR_COEFF_LIMIT = {2: 10**6, 3: 10**4, 4: 50}

FULL = "FullSymmetric"
ALT = "Alternating"
OTHER = "OtherTransitive"
REDUCIBLE = "Reducible"
NONSEP = "NotSeparable"
UNDET = "Undetermined"
IN_AN = "ContainedInAn"


@dataclass(frozen=True)
class GaloisLabel:
    """Classification outcome; ``partition`` is set for Reducible, ``subtype`` names small groups."""

    tag: str
    partition: tuple | None = None
    subtype: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.tag not in (FULL, ALT, OTHER, REDUCIBLE, NONSEP, UNDET, IN_AN):
            raise DomainError(f"unknown label {self.tag!r}")
        if (self.tag == REDUCIBLE) != (self.partition is not None):
            raise DomainError("a partition goes with Reducible and only with it")

    @property
    def key(self) -> str:
        if self.tag == REDUCIBLE:
            return REDUCIBLE + "{" + ",".join(map(str, self.partition)) + "}"
        return self.tag

    def __str__(self):
        return self.key


def _poly(t) -> IntPoly:
    return IntPoly.monic(list(t))


def _reducible_or_none(f: IntPoly, seed=0):
    degs = factor_degrees(f, seed)
    if len(degs) > 1:
        return GaloisLabel(REDUCIBLE, tuple(sorted(degs)))
    return None


def galois_quadratic(t) -> GaloisLabel:
    a, b = t
    disc = a * a - 4 * b
    if disc == 0:
        return GaloisLabel(NONSEP)
    if is_perfect_square(disc):
        return GaloisLabel(REDUCIBLE, (1, 1))
    return GaloisLabel(FULL, subtype="S2")


def galois_cubic(t) -> GaloisLabel:
    f = _poly(t)
    if len(t) != 3:
        raise DomainError("a cubic needs three coefficients")
    disc = int_poly_disc(f)
    if disc == 0:
        return GaloisLabel(NONSEP)
    red = _reducible_or_none(f)
    if red:
        return red
    if is_perfect_square(disc):
        return GaloisLabel(ALT, subtype="C3")
    return GaloisLabel(FULL, subtype="S3")


def resolvent_cubic(t) -> tuple:
    """Coefficients (t1, t2, t3) of y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2)."""
    a, b, c, d = t
    return (-b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c))


def _splits_over(q: int, disc: int) -> bool:
    """Does a quadratic with discriminant q split over Q(sqrt(disc))?"""
    return is_perfect_square(q) or is_perfect_square(q * disc)


def galois_quartic(t) -> GaloisLabel:
    if len(t) != 4:
        raise DomainError("a quartic needs four coefficients")
    a, b, c, d = t
    f = _poly(t)
    disc = int_poly_disc(f)
    if disc == 0:
        return GaloisLabel(NONSEP)
    red = _reducible_or_none(f)
    if red:
        return red
    R = _poly(resolvent_cubic(t))
    roots = [-g.coeffs[0] for g in int_poly_factor(R) if g.degree == 1]
    square = is_perfect_square(disc)
    if not roots:
        return GaloisLabel(ALT, subtype="A4") if square else GaloisLabel(FULL, subtype="S4")
    if len(roots) == 3:
        return GaloisLabel(OTHER, subtype="V4")
    theta = roots[0]
    if _splits_over(theta * theta - 4 * d, disc) and _splits_over(a * a - 4 * (b - theta), disc):
        return GaloisLabel(OTHER, subtype="C4")
    return GaloisLabel(OTHER, subtype="D4")


def _has_prime_part_above_half(shape: tuple, n: int) -> bool:
    return any(2 * q > n and is_prime(q) for q in shape)


def _powers_to_transposition(shape: tuple, n: int) -> bool:
    """One 2-cycle and otherwise odd cycles: an odd power is a transposition."""
    return shape.count(2) == 1 and all(q % 2 for q in shape if q != 2)


def sn_certificate(f: IntPoly, prime_budget: int, seed: int = 0, shapes_out: list | None = None) -> GaloisLabel:
    """Try to prove Gal(f) = S_n from factor shapes modulo primes.

    Irreducibility and a non-square discriminant are decided exactly.  Then
    primes p not dividing the discriminant are scanned in increasing order up
    to ``prime_budget``.  A shape with one 2-cycle and odd cycles otherwise
    (an odd power of it is a transposition) together with a shape
    containing a prime cycle length q > n/2 proves S_n: the power of the latter
    that isolates the q-cycle makes the transitive group primitive, and a
    primitive group with a transposition is symmetric.
    """
    if not f.is_monic() or f.degree < 2:
        raise DomainError("expected a monic polynomial of degree >= 2")
    n = f.degree
    disc = int_poly_disc(f)
    if disc == 0:
        return GaloisLabel(NONSEP)
    red = _reducible_or_none(f, seed)
    if red:
        return red
    if is_perfect_square(disc):
        return GaloisLabel(IN_AN)
    have_transposition = have_large_prime = False
    if prime_budget >= 3:
        for p in primes_up_to(prime_budget):
            p = int(p)
            if p == 2 or disc % p == 0:
                continue
            shape = fp_factor_shape(FpPoly(p, f.coeffs)).degrees
            if shapes_out is not None:
                shapes_out.append((p, shape))
            have_transposition |= _powers_to_transposition(shape, n)
            have_large_prime |= _has_prime_part_above_half(shape, n)
            if have_transposition and have_large_prime:
                return GaloisLabel(FULL)
    return GaloisLabel(UNDET)


def classify(t, mode: str = "auto", prime_budget: int = 200, seed: int = 0) -> GaloisLabel:
    n = len(t)
    if mode == "auto":
        mode = "exact" if n <= 4 else "certificate"
    if mode == "exact":
        if n == 2:
            return galois_quadratic(t)
        if n == 3:
            return galois_cubic(t)
        if n == 4:
            return galois_quartic(t)
        raise DomainError("exact mode covers degrees 2 to 4")
    if mode == "certificate":
        return sn_certificate(_poly(t), prime_budget, seed)
    raise DomainError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Boxes of coefficient vectors
# ---------------------------------------------------------------------------


def box_size(n: int, B: int) -> int:
    return (2 * B + 1) ** n


def box_chunk(n: int, B: int, lo: int, hi: int) -> np.ndarray:
    """Rows lo..hi-1 of [-B, B]^n in lexicographic order, as int64 (N, n)."""
    idx = np.arange(lo, hi, dtype=np.int64)
    w = 2 * B + 1
    out = np.empty((len(idx), n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        out[:, j] = idx % w - B
        idx //= w
    return out


def _check_box(n, B):
    if n < 2 or B < 0:
        raise DomainError("need n >= 2 and B >= 0")
    if box_size(n, B) > BOX_LIMIT:
        raise ResourceError(f"box of size {box_size(n, B)} exceeds {BOX_LIMIT}")


def _isqrt_exact(v: np.ndarray) -> np.ndarray:
    """Boolean mask of perfect squares (v >= 0, |v| < 2^62)."""
    ok = v >= 0
    r = np.sqrt(np.where(ok, v, 0).astype(np.float64)).astype(np.int64)
    hit = np.zeros(len(v), dtype=bool)
    for k in (-1, 0, 1):
        s = r + k
        hit |= (s >= 0) & (s * s == v)
    return ok & hit


def _disc_rows(T: np.ndarray) -> np.ndarray:
    n = T.shape[1]
    if n == 2:
        a, b = T.T
        return a * a - 4 * b
    if n == 3:
        a, b, c = T.T
        return a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c
    if n == 4:
        a, b, c, d = T.T
        return (
            256 * d**3
            - 192 * a * c * d * d
            - 128 * b * b * d * d
            + 144 * b * c * c * d
            - 27 * c**4
            + 144 * a * a * b * d * d
            - 6 * a * a * c * c * d
            - 80 * a * b * b * c * d
            + 18 * a * b * c**3
            + 16 * b**4 * d
            - 4 * b**3 * c * c
            - 27 * a**4 * d * d
            + 18 * a**3 * b * c * d
            - 4 * a**3 * c**3
            - 4 * a * a * b**3 * d
            + a * a * b * b * c * c
        )
    raise DomainError("closed-form discriminants cover degrees 2 to 4")


def _horner(T: np.ndarray, r: np.ndarray) -> np.ndarray:
    acc = np.ones(len(T), dtype=np.int64)
    for j in range(T.shape[1]):
        acc = acc * r + T[:, j]
    return acc


def _integer_root_count(T: np.ndarray) -> np.ndarray:
    """Number of distinct integer roots of separable monic rows.

    Candidates come from companion-matrix eigenvalues, rounded and then
    confirmed exactly.  An integer root r of a separable integer polynomial
    has |f'(r)| >= 1, so its eigenvalue is well conditioned.
    """
    N, n = T.shape
    if N == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    comp = np.zeros((N, n, n))
    comp[:, 0, :] = -T
    comp[:, np.arange(1, n), np.arange(n - 1)] = 1.0
    eig = np.linalg.eigvals(comp)
    cand = np.rint(eig.real).astype(np.int64)
    near = np.abs(eig.imag) < 0.5
    hits = np.zeros((N, n), dtype=bool)
    for j in range(n):
        hits[:, j] = near[:, j] & (_horner(T, cand[:, j]) == 0)
    # distinct confirmed candidates
    count = np.zeros(N, dtype=np.int64)
    for j in range(n):
        dup = np.zeros(N, dtype=bool)
        for k in range(j):
            dup |= hits[:, k] & (cand[:, k] == cand[:, j])
        count += hits[:, j] & ~dup
    # one confirmed root per row (0 where there is none)
    first = np.where(hits.any(axis=1), cand[np.arange(N), hits.argmax(axis=1)], 0)
    return count, first


def _quadratic_pair(T: np.ndarray) -> np.ndarray:
    """Which rows (a, b, c, d), d != 0, factor as two integer monic quadratics."""
    a, b, c, d = T.T
    out = np.zeros(len(T), dtype=bool)
    for dv in np.unique(d):
        dv = int(dv)
        sel = np.flatnonzero(d == dv)
        aa, bb, cc = a[sel], b[sel], c[sel]
        found = np.zeros(len(sel), dtype=bool)
        for q in _signed_divisors(dv):
            s = dv // q
            if s == q:
                disc = aa * aa - 4 * (bb - 2 * q)
                found |= (cc == q * aa) & _isqrt_exact(disc)
            else:
                num = cc - q * aa
                ok = num % (s - q) == 0
                p = num // (s - q)
                r = aa - p
                found |= ok & (bb == q + s + p * r)
        out[sel] = found
    return out


def _signed_divisors(m: int) -> list:
    m = abs(m)
    small = [k for k in range(1, math.isqrt(m) + 1) if m % k == 0]
    pos = sorted(set(small + [m // k for k in small]))
    return pos + [-k for k in pos]


def classify_box(T: np.ndarray, seed: int = 0, subtypes: bool = False):
    """Label keys for each row of T (n = 2, 3, 4), vectorised.

    Non-separable rows are labelled NotSeparable; their factor partition is
    available from ``partition_box``.  With ``subtypes=True`` a second list
    names the group of each irreducible quartic (S4, A4, V4, C4, D4).
    """
    T = np.asarray(T, dtype=np.int64)
    N, n = T.shape
    if n not in (2, 3, 4):
        raise DomainError("the vectorised classifier covers degrees 2 to 4")
    if N and np.abs(T).max() > _VECTOR_COEFF_LIMIT[n]:
        raise DomainError(f"coefficients beyond {_VECTOR_COEFF_LIMIT[n]} overflow the vectorised degree-{n} classifier")
    disc = _disc_rows(T)
    square = _isqrt_exact(disc)
    labels = np.empty(N, dtype=object)
    groups = np.full(N, None, dtype=object)
    labels[disc == 0] = NONSEP
    sep = np.flatnonzero(disc != 0)
    if n == 2:
        labels[sep] = np.where(square[sep], "Reducible{1,1}", FULL)
    elif n == 3:
        k, _ = _integer_root_count(T[sep])
        irr = k == 0
        labels[sep] = np.where(irr, np.where(square[sep], ALT, FULL), np.where(k == 3, "Reducible{1,1,1}", "Reducible{1,2}"))
    else:
        _classify_quartics(T, disc, square, sep, labels, groups)
    if subtypes:
        return list(labels), list(groups)
    return list(labels)


def _classify_quartics(T, disc, square, sep, labels, groups):
    k, _ = _integer_root_count(T[sep])
    part = np.where(k == 4, "Reducible{1,1,1,1}", np.where(k == 2, "Reducible{1,1,2}", "Reducible{1,3}")).astype(object)
    no_root = np.flatnonzero(k == 0)
    pairs = _quadratic_pair(T[sep][no_root])
    part[no_root[pairs]] = "Reducible{2,2}"
    irr = no_root[~pairs]
    a, b, c, d = T[sep][irr].T
    R = np.stack([-b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c)], axis=1)
    rk, theta = _integer_root_count(R)
    sq = square[sep][irr]
    D = disc[sep][irr]
    cyclic = np.zeros(len(irr), dtype=bool)
    for j in np.flatnonzero(rk == 1):
        th, dj = int(theta[j]), int(D[j])
        cyclic[j] = _splits_over(th * th - 4 * int(d[j]), dj) and _splits_over(int(a[j]) ** 2 - 4 * (int(b[j]) - th), dj)
    group = np.where(rk == 0, np.where(sq, "A4", "S4"), np.where(rk == 3, "V4", np.where(cyclic, "C4", "D4"))).astype(object)
    part[irr] = np.where(rk == 0, np.where(sq, ALT, FULL), OTHER)
    labels[sep] = part
    groups[sep[irr]] = group


def partition_box(T: np.ndarray, labels, seed: int = 0) -> list:
    """Factor-degree multiset per row: from the label, or by factoring when needed."""
    out = []
    for row, lab in zip(T, labels):
        if lab.startswith(REDUCIBLE):
            out.append(tuple(int(v) for v in lab[len(REDUCIBLE) + 1 : -1].split(",")))
        elif lab == NONSEP:
            out.append(tuple(sorted(factor_degrees(_poly([int(v) for v in row]), seed))))
        else:
            out.append((T.shape[1],))
    return out


# ---------------------------------------------------------------------------
# Census reports
# ---------------------------------------------------------------------------


@dataclass
class CensusReport:
    """Per-label counts over a box, with bound shapes and ratios."""

    experiment: str
    params: dict
    counts: dict
    bounds: dict = field(default_factory=dict)
    ratios: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    runtime_s: float = 0.0
    seed: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "CensusReport") -> "CensusReport":
        counts = dict(self.counts)
        for k, v in other.counts.items():
            counts[k] = counts.get(k, 0) + v
        return CensusReport(self.experiment, self.params, counts, self.bounds, self.ratios, self.extra, self.runtime_s + other.runtime_s, self.seed)

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "params": self.params,
            "counts": dict(sorted(self.counts.items())),
            "bounds": self.bounds,
            "ratios": self.ratios,
            "extra": self.extra,
            "runtime_s": self.runtime_s,
            "seed": self.seed,
        }


def _label_counts(labels) -> dict:
    keys, counts = np.unique(np.asarray(labels, dtype=str), return_counts=True)
    return {str(k): int(v) for k, v in zip(keys, counts)}


def census_counts(n: int, B: int, lo: int, hi: int, mode: str, prime_budget: int, seed: int) -> dict:
    """Label counts over rows lo..hi-1 of the box (one shard), plus quartic group tallies."""
    counts: dict = {}
    groups: dict = {}
    for start in range(lo, hi, _CHUNK):
        T = box_chunk(n, B, start, min(hi, start + _CHUNK))
        if mode == "exact":
            labels, names = classify_box(T, seed, subtypes=True)
            for g in names:
                if g is not None:
                    groups[g] = groups.get(g, 0) + 1
        else:
            labels = [sn_certificate(_poly([int(v) for v in row]), prime_budget, seed).key for row in T]
        for k, v in _label_counts(labels).items():
            counts[k] = counts.get(k, 0) + v
    return {"labels": counts, "groups": groups}


def exceptional_count(counts: dict) -> tuple:
    """(lower, upper) bracket for E_n: rows whose group is not S_n."""
    total = sum(counts.values())
    lower = total - counts.get(FULL, 0) - counts.get(UNDET, 0)
    return lower, lower + counts.get(UNDET, 0)


def count_census(n: int, B: int, mode: str = "auto", prime_budget: int = 200, seed: int = 0, shards: int = 1, threads: int = 1) -> CensusReport:
    """Classify every t in [-B, B]^n and tally labels."""
    from .runner import shard_and_merge

    _check_box(n, B)
    if mode == "auto":
        mode = "exact" if n <= 4 else "certificate"
    if mode == "exact" and n > 4:
        raise DomainError("exact mode covers degrees 2 to 4")
    t0 = time.perf_counter()
    merged = shard_and_merge(
        census_counts, box_size(n, B), shards=shards, threads=threads, args=(n, B), kwargs={"mode": mode, "prime_budget": prime_budget, "seed": seed}
    )
    counts = merged["labels"]
    elapsed = time.perf_counter() - t0
    total = box_size(n, B)
    if sum(counts.values()) != total:
        raise AssertionError("label counts do not partition the box")
    lo, hi = exceptional_count(counts)
    logB = math.log(B) if B > 1 else float("nan")
    bounds = {"E_n_lower": lo, "E_n_upper": hi, "B^(n-1/2)": B ** (n - 0.5)}
    ratios = {"E_n/B^(n-1/2)": hi / B ** (n - 0.5) if B else float("nan")}
    if n == 2 and B > 1:
        bounds["2B log B"] = 2 * B * logB
        ratios["E_2/(2B log B)"] = hi / (2 * B * logB)
    params = {"n": n, "B": B, "mode": mode, "prime_budget": prime_budget}
    return CensusReport("vdw-census", params, counts, bounds, ratios, {"not_separable": counts.get(NONSEP, 0), "quartic_groups": dict(sorted(merged["groups"].items()))}, elapsed, seed)


def _scan_rows(n, B, lo, hi, fn):
    total = 0
    for start in range(lo, hi, _CHUNK):
        total += fn(box_chunk(n, B, start, min(hi, start + _CHUNK)))
    return total


def _reducible_shard(n, B, lo, hi, i, seed):
    def fn(T):
        if n <= 4:
            labels = classify_box(T, seed)
            parts = partition_box(T, labels, seed)
        else:
            parts = [factor_degrees(_poly([int(v) for v in row]), seed) for row in T]
        return sum(1 for p in parts if i in p)

    return _scan_rows(n, B, lo, hi, fn)


def count_reducible_by_degree(n: int, B: int, i: int, seed: int = 0, shards: int = 1, threads: int = 1) -> int:
    """#{t in [-B, B]^n : f(x, t) has an irreducible factor of degree i}."""
    from .runner import shard_and_merge

    if not 1 <= i <= n / 2:
        raise DomainError("need 1 <= i <= n/2")
    _check_box(n, B)
    return shard_and_merge(_reducible_shard, box_size(n, B), shards=shards, threads=threads, args=(n, B), kwargs={"i": i, "seed": seed})


def _disc_square_shard(n, B, lo, hi):
    def fn(T):
        if n <= 4:
            return int(np.count_nonzero(_isqrt_exact(_disc_rows(T))))
        return sum(1 for row in T if is_perfect_square(int_poly_disc(_poly([int(v) for v in row]))))

    return _scan_rows(n, B, lo, hi, fn)


def count_disc_square(n: int, B: int, shards: int = 1, threads: int = 1) -> int:
    """#{t : disc f(x, t) is a perfect square}, zero included."""
    from .runner import shard_and_merge

    _check_box(n, B)
    return shard_and_merge(_disc_square_shard, box_size(n, B), shards=shards, threads=threads, args=(n, B))

