"""Dense univariate polynomials over Z and over F_p.

Coefficient sequences are stored constant term first.  Integer coefficients
are bounded by a signed 128-bit guard; anything larger raises OverflowError
rather than silently carrying on.

Factorisation over Z follows the big-prime recipe: bound the coefficients of
any monic factor (Mignotte), reduce modulo one prime above twice that bound,
factor there, then recombine modular factors by subset products.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DomainError, ResourceError
from .primes import is_prime, next_prime

INT128_MAX = (1 << 127) - 1
MAX_CENSUS_DEGREE = 16


def _check128(values):
    for v in values:
        if v > INT128_MAX or v < -INT128_MAX - 1:
            raise OverflowError("coefficient exceeds the signed 128-bit range")


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(v) for v in _trim(self.coeffs))
        _check128(c)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monic(cls, tail) -> "IntPoly":
        """x^n + t_1 x^(n-1) + ... + t_n for tail = (t_1, ..., t_n)."""
        return cls(tuple(reversed(tuple(tail))) + (1,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPoly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def divmod_monic(self, g: "IntPoly"):
        """Quotient and remainder on division by a monic g (exact over Z)."""
        if not g.is_monic():
            raise DomainError("divisor must be monic")
        r = list(self.coeffs)
        dg = g.degree
        q = [0] * max(len(r) - dg, 0)
        for k in range(len(r) - 1 - dg, -1, -1):
            c = r[k + dg]
            q[k] = c
            if c:
                for j, gc in enumerate(g.coeffs):
                    r[k + j] -= c * gc
        return IntPoly(tuple(q)), IntPoly(tuple(r[:dg]))

    def reduce(self, p: int) -> "FpPoly":
        return FpPoly(p, tuple(c % p for c in self.coeffs))

    def norm2(self) -> float:
        return math.sqrt(sum(c * c for c in self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return _format(self.coeffs)


def _format(coeffs) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' if mono else ''}{mono}"
        terms.append(("-" if c < 0 else "+") + body)
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s


def poly_product(polys) -> IntPoly:
    out = IntPoly((1,))
    for f in polys:
        out = out * f
    return out


# ---------------------------------------------------------------------------
# F_p polynomials (list helpers; the FpPoly class wraps them)
# ---------------------------------------------------------------------------


def _deg(a):
    return len(a) - 1


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = _deg(b)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(r) - db, 0)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        q[k] = c
        if c:
            for j, bc in enumerate(b):
                r[k + j] = (r[k + j] - c * bc) % p
    return _trim(q), _trim(r[:db])


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pmonic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _pgcd(a, b, p):
    while b:
        a, b = b, _pmod(a, b, p)
    return _pmonic(a, p)


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), m, p)
    return result


def _pderiv(a, p):
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def _pth_root(a, p):
    # coefficients of a polynomial in x^p; Frobenius is the identity on F_p
    return _trim(a[::p])


def _squarefree_parts(f, p):
    """Pairs (g, i) of monic squarefree coprime g with f = lc * prod g^i."""
    f = _pmonic(f, p)
    if _deg(f) < 1:
        return []
    fprime = _pderiv(f, p)
    if not fprime:
        return [(g, m * p) for g, m in _squarefree_parts(_pth_root(f, p), p)]
    out = []
    c = _pgcd(f, fprime, p)
    w = _pdivmod(f, c, p)[0]
    i = 1
    while _deg(w) > 0:
        y = _pgcd(w, c, p)
        z = _pdivmod(w, y, p)[0]
        if _deg(z) > 0:
            out.append((_pmonic(z, p), i))
        i += 1
        w = y
        c = _pdivmod(c, y, p)[0]
    if _deg(c) > 0:
        out.extend((g, m * p) for g, m in _squarefree_parts(_pth_root(c, p), p))
    return out


def _distinct_degree(f, p):
    """Distinct-degree split of a monic squarefree f: list of (d, product of degree-d factors)."""
    out = []
    g = list(f)
    h = [0, 1]
    d = 0
    while _deg(g) >= 2 * (d + 1):
        d += 1
        h = _ppowmod(h, p, g, p)
        c = _pgcd(g, _psub(h, [0, 1], p), p)
        if _deg(c) > 0:
            out.append((d, c))
            g = _pdivmod(g, c, p)[0]
            h = _pmod(h, g, p)
    if _deg(g) > 0:
        out.append((_deg(g), g))
    return out


def _equal_degree(f, d, p, rng):
    """Split a monic f whose irreducible factors all have degree d (p odd)."""
    n = _deg(f)
    if n == d:
        return [f]
    e = (p**d - 1) // 2
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if _deg(a) < 1:
            continue
        g = _pgcd(a, f, p)
        if 0 < _deg(g) < n:
            break
        b = _psub(_ppowmod(a, e, f, p), [1], p)
        g = _pgcd(b, f, p)
        if 0 < _deg(g) < n:
            break
    rest = _pdivmod(f, g, p)[0]
    return _equal_degree(g, d, p, rng) + _equal_degree(_pmonic(rest, p), d, p, rng)


@dataclass(frozen=True)
class FpPoly:
    modulus: int
    coeffs: tuple

    def __post_init__(self):
        p = int(self.modulus)
        object.__setattr__(self, "modulus", p)
        object.__setattr__(self, "coeffs", tuple(_trim([int(c) % p for c in self.coeffs])))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "FpPoly":
        return FpPoly(self.modulus, tuple(_pmonic(list(self.coeffs), self.modulus)))

    def __mul__(self, other):
        return FpPoly(self.modulus, tuple(_pmul(list(self.coeffs), list(other.coeffs), self.modulus)))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.modulus
        return acc

    def is_squarefree(self) -> bool:
        f = list(self.coeffs)
        return _deg(_pgcd(f, _pderiv(f, self.modulus), self.modulus)) == 0

    def __repr__(self):
        return f"FpPoly({self.modulus}, {list(self.coeffs)})"


@dataclass(frozen=True)
class FactorShape:
    """Multiset of (degree, multiplicity) pairs, one pair per irreducible factor."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted((int(d), int(m)) for d, m in self.parts)))

    @property
    def total_degree(self) -> int:
        return sum(d * m for d, m in self.parts)

    @property
    def degrees(self) -> tuple:
        """Irreducible factor degrees, one entry per distinct factor."""
        return tuple(d for d, _ in self.parts)

    def is_squarefree(self) -> bool:
        return all(m == 1 for _, m in self.parts)


def _check_odd(f: FpPoly):
    p = f.modulus
    if p < 3 or p % 2 == 0:
        raise DomainError("only odd prime moduli are supported")
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")


def fp_factor_shape(f: FpPoly) -> FactorShape:
    """Degrees and multiplicities of the irreducible factors of f over F_p."""
    _check_odd(f)
    p = f.modulus
    parts = []
    for g, mult in _squarefree_parts(list(f.coeffs), p):
        for d, block in _distinct_degree(g, p):
            parts.extend([(d, mult)] * (_deg(block) // d))
    return FactorShape(tuple(parts))


def fp_factor_full(f: FpPoly, seed: int):
    """Monic irreducible factors of f with multiplicities, as (FpPoly, int) pairs.

    Equal-degree splitting draws from ``random.Random(seed)``, so the output
    (including its order) is fixed by the seed.
    """
    _check_odd(f)
    p = f.modulus
    rng = random.Random(seed)
    out = []
    for g, mult in _squarefree_parts(list(f.coeffs), p):
        for d, block in _distinct_degree(g, p):
            for h in _equal_degree(block, d, p, rng):
                out.append((FpPoly(p, tuple(h)), mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    return out


# ---------------------------------------------------------------------------
# Discriminant and factorisation over Z
# ---------------------------------------------------------------------------


def _bareiss_det(m):
    m = [list(row) for row in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) as the determinant of the Sylvester matrix."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return 0
    if m + n == 0:
        return 1
    size = m + n
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def int_poly_disc(f: IntPoly) -> int:
    """Discriminant of a monic f, (-1)^(n(n-1)/2) Res(f, f')."""
    n = f.degree
    if n < 2:
        raise DomainError("discriminant needs degree >= 2")
    if not f.is_monic():
        raise DomainError("discriminant is only implemented for monic polynomials")
    r = resultant(f, f.derivative())
    value = -r if (n * (n - 1) // 2) % 2 else r
    _check128((value,))
    return value


def _qtrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a, b):
    r = [Fraction(c) for c in a]
    db = len(b) - 1
    q = [Fraction(0)] * max(len(r) - db, 0)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / b[-1]
        q[k] = c
        if c:
            for j, bc in enumerate(b):
                r[k + j] -= c * bc
    return _qtrim(q), _qtrim(r[:db])


def _qgcd(a, b):
    a, b = _qtrim(a), _qtrim(b)
    while b:
        a, b = b, _qdivmod(a, b)[1]
    return [c / a[-1] for c in a]


def _to_int_poly(a) -> IntPoly:
    if any(Fraction(c).denominator != 1 for c in a):
        raise ArithmeticError("expected an integral polynomial")
    return IntPoly(tuple(int(c) for c in a))


def _qsub(a, b):
    n = max(len(a), len(b))
    return _qtrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _qderiv(a):
    return _qtrim([k * a[k] for k in range(1, len(a))])


def squarefree_decomposition(f: IntPoly):
    """Yun's algorithm over Q for monic f: pairs (g, i) with f = prod g^i."""
    a = [Fraction(c) for c in f.coeffs]
    da = _qderiv(a)
    g = _qgcd(a, da)
    b = _qdivmod(a, g)[0]
    c = _qdivmod(da, g)[0]
    d = _qsub(c, _qderiv(b))
    out = []
    i = 1
    while len(b) > 1:
        g = _qgcd(b, d) if d else [c_ / b[-1] for c_ in b]
        if len(g) > 1:
            out.append((_to_int_poly(g), i))
        b = _qdivmod(b, g)[0]
        c = _qdivmod(d, g)[0] if d else []
        d = _qsub(c, _qderiv(b))
        i += 1
    return out


def mignotte_bound(f: IntPoly) -> int:
    """Every monic factor of monic f has coefficients bounded by 2^deg * ||f||_2."""
    return (1 << f.degree) * (math.isqrt(sum(c * c for c in f.coeffs)) + 1)


MAX_FACTOR_DEGREE = 8
MAX_FACTOR_COEFF = 1 << 40
_PRIME_ATTEMPTS = 1000


def _symmetric_lift(coeffs, p):
    half = p // 2
    return IntPoly(tuple(c - p if c > half else c for c in coeffs))


def _exact_quotient(f: IntPoly, h: IntPoly, bound: int):
    """f / h for monic h when h divides f, else None.

    Any quotient coefficient above ``bound`` proves h is not a factor, so the
    division stops early instead of letting coefficients grow.
    """
    h0, f0 = h.coeffs[0], f.coeffs[0]
    if (f0 % h0 if h0 else f0):
        return None
    r = list(f.coeffs)
    dh = h.degree
    q = [0] * (len(r) - dh)
    for k in range(len(r) - 1 - dh, -1, -1):
        c = r[k + dh]
        if abs(c) > bound:
            return None
        q[k] = c
        if c:
            for j, hc in enumerate(h.coeffs):
                r[k + j] -= c * hc
    if any(r[:dh]):
        return None
    return IntPoly(tuple(q))


def _factor_squarefree(g: IntPoly, seed: int):
    if g.degree <= 1:
        return [g]
    bound = mignotte_bound(g)
    p = next_prime(2 * bound)
    disc = int_poly_disc(g)
    for _ in range(_PRIME_ATTEMPTS):
        if disc % p:
            break
        p = next_prime(p)
    else:
        raise ResourceError(f"no prime making {g} squarefree found above {2 * bound}")
    modular = [list(h.coeffs) for h, _ in fp_factor_full(g.reduce(p), seed)]
    found = []
    rest = g
    s = 1
    while 2 * s <= len(modular):
        for subset in combinations(range(len(modular)), s):
            prod = [1]
            for i in subset:
                prod = _pmul(prod, modular[i], p)
            h = _symmetric_lift(prod, p)
            q = _exact_quotient(rest, h, bound)
            if q is not None:
                found.append(h)
                rest = q
                modular = [m for i, m in enumerate(modular) if i not in subset]
                break
        else:
            s += 1
    found.append(rest)
    return found


def int_poly_factor(f: IntPoly, seed: int = 0):
    """Irreducible monic factors of a monic f over Z, repeated by multiplicity.

    Sorted by (degree, coefficients) so the output is canonical.
    """
    if not f.is_monic():
        raise DomainError("int_poly_factor needs a monic polynomial")
    if f.degree > MAX_FACTOR_DEGREE:
        raise DomainError(f"degree {f.degree} exceeds {MAX_FACTOR_DEGREE}")
    if any(abs(c) > MAX_FACTOR_COEFF for c in f.coeffs):
        raise DomainError("coefficients exceed 2^40")
    if f.degree <= 1:
        return [f] if f.degree == 1 else []
    out = []
    for g, mult in squarefree_decomposition(f):
        for h in _factor_squarefree(g, seed):
            out.extend([h] * mult)
    out.sort(key=lambda h: (h.degree, h.coeffs))
    return out


def factor_degrees(f: IntPoly, seed: int = 0) -> tuple:
    return tuple(sorted(h.degree for h in int_poly_factor(f, seed)))


def is_irreducible(f: IntPoly, seed: int = 0) -> bool:
    return len(int_poly_factor(f, seed)) == 1


def check_prime(p: int):
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
