"""Serre's three conjugation-stable subsets of GL_2(F_l) and related counts.

A subgroup of GL_2(F_l), l >= 5, that meets all three sets C1, C2, C3
contains SL_2(F_l).  Membership depends only on trace and determinant:

* C1: tr != 0 and tr^2 - 4 det is a non-zero square;
* C2: tr != 0 and tr^2 - 4 det is not a square;
* C3: u = tr^2 / det is not 0, 1, 2, 4 and u^2 - 3u + 1 != 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .groups import GL2, ExplicitGroup, Mat2, closure, sl2_group
from .primes import is_prime, legendre, square_table

MAX_ENUM_ELL = 31


@dataclass(frozen=True)
class SerreClass:
    in_C1: bool
    in_C2: bool
    in_C3: bool

    def __post_init__(self):
        if self.in_C1 and self.in_C2:
            raise AssertionError("C1 and C2 are disjoint")

    def as_tuple(self):
        return (self.in_C1, self.in_C2, self.in_C3)


def _check_ell(ell):
    if ell < 5 or not is_prime(ell):
        raise DomainError(f"l must be a prime >= 5, got {ell}")


def classify_trace_det(t: int, d: int, ell: int) -> SerreClass:
    _check_ell(ell)
    t, d = t % ell, d % ell
    if d == 0:
        raise DomainError("determinant is zero")
    disc = legendre(t * t - 4 * d, ell)
    u = t * t * pow(d, -1, ell) % ell
    c3 = u not in (0, 1, 2, 4) and (u * u - 3 * u + 1) % ell != 0
    return SerreClass(t != 0 and disc == 1, t != 0 and disc == -1, c3)


def classify(A: Mat2, ell: int | None = None) -> SerreClass:
    """Membership of A in C1, C2, C3 (exact, via Legendre symbols)."""
    ell = A.m if ell is None else ell
    if A.m != ell:
        raise DomainError("matrix modulus differs from l")
    return classify_trace_det(A.trace, A.det, ell)


def classify_rows(rows: np.ndarray, ell: int) -> np.ndarray:
    """Vectorised classify: boolean array of shape (N, 3) for rows (a, b, c, d)."""
    _check_ell(ell)
    rows = np.atleast_2d(rows) % ell
    t = (rows[:, 0] + rows[:, 3]) % ell
    d = (rows[:, 0] * rows[:, 3] - rows[:, 1] * rows[:, 2]) % ell
    if np.any(d == 0):
        raise DomainError("singular matrix")
    chi = square_table(ell)
    disc = chi[(t * t - 4 * d) % ell]
    inv = np.array([0] + [pow(v, -1, ell) for v in range(1, ell)], dtype=np.int64)
    u = t * t % ell * inv[d] % ell
    c3 = ~np.isin(u, [0, 1, 2, 4 % ell]) & ((u * u - 3 * u + 1) % ell != 0)
    return np.stack([(t != 0) & (disc == 1), (t != 0) & (disc == -1), c3], axis=1)


def count_fixed_trace_det(ell: int, d: int, t: int, method: str = "brute") -> int:
    """#{A in GL_2(F_l) : det A = d, tr A = t}.

    ``method="brute"`` enumerates (l <= 31); ``"formula"`` returns
    l^2 + eps*l with eps the Legendre symbol of t^2 - 4d.
    """
    _check_ell(ell)
    if d % ell == 0:
        raise DomainError("d must be non-zero mod l")
    if method == "formula":
        return ell * ell + legendre(t * t - 4 * d, ell) * ell
    if method != "brute":
        raise DomainError(f"unknown method {method!r}")
    if ell > MAX_ENUM_ELL:
        raise DomainError(f"brute force is limited to l <= {MAX_ENUM_ELL}")
    return int(trace_count_table(ell, d)[t % ell])


def trace_count_table(ell, d) -> np.ndarray:
    """Counts of det = d matrices by trace, by running over (a, b, c) with d fixed.

    For fixed a, b, c the entry d' solves a*d' - b*c = d, so a != 0 gives one
    matrix and a = 0 needs b*c = -d with d' free.
    """
    a, b, c = np.indices((ell, ell, ell)).reshape(3, -1)
    out = np.zeros(ell, dtype=np.int64)
    nz = a != 0
    inv = np.array([0] + [pow(v, -1, ell) for v in range(1, ell)], dtype=np.int64)
    dd = (d + b[nz] * c[nz]) % ell * inv[a[nz]] % ell
    np.add.at(out, (a[nz] + dd) % ell, 1)
    z = (~nz) & ((b * c + d) % ell == 0)
    # a = 0: trace equals the free entry, each value once
    out += int(np.count_nonzero(z))
    return out


def class_proportion(ell: int, d: int, i: int, method: str = "auto") -> Fraction:
    """|{A in C_i : det A = d}| / |SL_2(F_l)|.

    Trace counts come from enumeration (``"brute"``, l <= 31) or from the
    closed form l^2 + eps*l (``"formula"``); ``"auto"`` enumerates when it can.
    """
    _check_ell(ell)
    if i not in (1, 2, 3):
        raise DomainError("i must be 1, 2 or 3")
    if d % ell == 0:
        raise DomainError("d must be non-zero mod l")
    if method == "auto":
        method = "brute" if ell <= MAX_ENUM_ELL else "formula"
    if method == "brute":
        if ell > MAX_ENUM_ELL:
            raise DomainError(f"enumeration is limited to l <= {MAX_ENUM_ELL}")
        counts = [int(v) for v in trace_count_table(ell, d)]
    elif method == "formula":
        counts = [count_fixed_trace_det(ell, d, t, "formula") for t in range(ell)]
    else:
        raise DomainError(f"unknown method {method!r}")
    hit = sum(counts[t] for t in range(ell) if classify_trace_det(t, d, ell).as_tuple()[i - 1])
    return Fraction(hit, ell * (ell * ell - 1))


def classes_met(G: ExplicitGroup) -> tuple:
    """Which of C1, C2, C3 the group meets."""
    flags = classify_rows(G.rows, G.ambient.m)
    return tuple(bool(v) for v in flags.any(axis=0))


def contains_sl2(generators, ell: int) -> bool:
    """True iff the group generated by ``generators`` contains SL_2(F_l)."""
    _check_ell(ell)
    if ell > MAX_ENUM_ELL:
        raise DomainError(f"closure is limited to l <= {MAX_ENUM_ELL}")
    G = closure(list(generators), GL2(ell))
    if G.order % (ell * (ell * ell - 1)):
        return False
    return sl2_group(ell).issubset(G)


SAMPLE_KINDS = ("random", "borel", "split_normalizer", "nonsplit_normalizer", "cyclic")


def _nonresidue(ell):
    return next(r for r in range(2, ell) if legendre(r, ell) == -1)


def random_generator_set(ell: int, rng: np.random.Generator, kind: str | None = None) -> list:
    """A few random matrices, optionally confined to a named proper subgroup."""
    _check_ell(ell)
    kind = kind or SAMPLE_KINDS[int(rng.integers(len(SAMPLE_KINDS)))]
    k = int(rng.integers(1, 4))
    out = []
    while len(out) < k:
        if kind in ("random", "cyclic"):
            a, b, c, d = (int(v) for v in rng.integers(0, ell, size=4))
        elif kind == "borel":
            a, b, d = (int(v) for v in rng.integers(0, ell, size=3))
            c = 0
        elif kind == "split_normalizer":
            x, y = (int(v) for v in rng.integers(1, ell, size=2))
            a, b, c, d = (x, 0, 0, y) if rng.integers(2) else (0, x, y, 0)
        elif kind == "nonsplit_normalizer":
            r = _nonresidue(ell)
            x, y = (int(v) for v in rng.integers(0, ell, size=2))
            a, b, c, d = (x, r * y, y, x) if rng.integers(2) else (x, r * y, -y, -x)
        else:
            raise DomainError(f"unknown kind {kind!r}")
        M = Mat2(a, b, c, d, ell)
        if M.det:
            out.append(M)
        if kind == "cyclic" and out:
            break
    return out
