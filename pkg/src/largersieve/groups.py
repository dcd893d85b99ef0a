"""Explicit finite groups: permutations of {0..n-1} and GL_2(Z/m).

Elements are handled in bulk as integer codes (numpy int64) so that closures
and conjugation sweeps are vectorised.  A group is stored as the sorted array
of its codes, which makes group equality plain array equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .errors import DomainError, ResourceError

CLOSURE_LIMIT = 10**7
_DENSE_LIMIT = 1 << 26


# ---------------------------------------------------------------------------
# Ambient groups
# ---------------------------------------------------------------------------


class SymmetricGroup:
    """S_n acting on {0, ..., n-1}; (a*b)(i) = a(b(i))."""

    def __init__(self, n: int):
        if n < 1:
            raise DomainError("n must be positive")
        self.n = n
        self.width = n
        self._pow = n ** np.arange(n, dtype=np.int64)

    @property
    def order(self) -> int:
        return math.factorial(self.n)

    @property
    def code_space(self) -> int:
        return self.n**self.n

    def encode(self, arr) -> np.ndarray:
        return np.asarray(arr, dtype=np.int64).reshape(-1, self.n) @ self._pow

    def decode(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64).reshape(-1, 1)
        return (codes // self._pow) % self.n

    def mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.atleast_2d(a), np.atleast_2d(b))
        return np.take_along_axis(a, b, axis=1)

    def inv(self, a) -> np.ndarray:
        a = np.atleast_2d(a)
        out = np.empty_like(a)
        rows = np.arange(a.shape[0])[:, None]
        out[rows, a] = np.arange(self.n)
        return out

    def identity(self) -> np.ndarray:
        return np.arange(self.n, dtype=np.int64).reshape(1, -1)

    def all_elements(self) -> np.ndarray:
        return np.array(list(permutations(range(self.n))), dtype=np.int64).reshape(-1, self.n)

    def wrap(self, row):
        return Perm(tuple(int(v) for v in row))

    def unwrap(self, element) -> np.ndarray:
        return np.asarray(element.images, dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, SymmetricGroup) and other.n == self.n

    def __hash__(self):
        return hash(("S", self.n))

    def __repr__(self):
        return f"S_{self.n}"


class GL2:
    """GL_2(Z/m); a row (a, b, c, d) is the matrix [[a, b], [c, d]]."""

    width = 4

    def __init__(self, m: int):
        if m < 2:
            raise DomainError("modulus must be >= 2")
        self.m = m
        self._pow = np.array([m**3, m**2, m, 1], dtype=np.int64)

    @property
    def order(self) -> int:
        m = self.m
        out = m**4
        for p in _prime_divisors(m):
            out = out * (p - 1) * (p * p - 1) // (p**3)
        return out

    @property
    def code_space(self) -> int:
        return self.m**4

    def encode(self, arr) -> np.ndarray:
        return (np.asarray(arr, dtype=np.int64).reshape(-1, 4) % self.m) @ self._pow

    def decode(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64).reshape(-1, 1)
        return (codes // self._pow) % self.m

    def mul(self, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(np.atleast_2d(x), np.atleast_2d(y))
        a, b, c, d = x.T
        e, f, g, h = y.T
        return np.stack([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], axis=1) % self.m

    def det(self, x) -> np.ndarray:
        x = np.atleast_2d(x)
        return (x[:, 0] * x[:, 3] - x[:, 1] * x[:, 2]) % self.m

    def inv(self, x) -> np.ndarray:
        x = np.atleast_2d(x)
        dinv = np.array([pow(int(v), -1, self.m) for v in self.det(x)], dtype=np.int64)
        a, b, c, d = x.T
        return (np.stack([d, -b, -c, a], axis=1) * dinv[:, None]) % self.m

    def identity(self) -> np.ndarray:
        return np.array([[1, 0, 0, 1]], dtype=np.int64)

    def all_elements(self) -> np.ndarray:
        m = self.m
        grid = np.indices((m, m, m, m)).reshape(4, -1).T.astype(np.int64)
        det = (grid[:, 0] * grid[:, 3] - grid[:, 1] * grid[:, 2]) % m
        units = np.array([math.gcd(v, m) == 1 for v in range(m)])
        return grid[units[det]]

    def wrap(self, row):
        return Mat2(*(int(v) for v in row), self.m)

    def unwrap(self, element) -> np.ndarray:
        return np.array([element.a, element.b, element.c, element.d], dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, GL2) and other.m == self.m

    def __hash__(self):
        return hash(("GL2", self.m))

    def __repr__(self):
        return f"GL_2(Z/{self.m})"


def _prime_divisors(m):
    out, q = [], 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


@dataclass(frozen=True)
class Perm:
    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise DomainError(f"{self.images} is not a permutation")

    @classmethod
    def cycle(cls, n, *cycle):
        img = list(range(n))
        for i, v in enumerate(cycle):
            img[v] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(img))

    def __mul__(self, other):
        return Perm(tuple(self.images[i] for i in other.images))

    def inverse(self):
        out = [0] * len(self.images)
        for i, v in enumerate(self.images):
            out[v] = i
        return Perm(tuple(out))


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int
    m: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.m)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.m

    @property
    def trace(self) -> int:
        return (self.a + self.d) % self.m

    def __mul__(self, o):
        m = self.m
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d, self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d, m)

    def inverse(self):
        di = pow(self.det, -1, self.m)
        return Mat2(self.d * di, -self.b * di, -self.c * di, self.a * di, self.m)


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------


class _Visited:
    """Membership set over codes: a dense bitmap when the code space is small."""

    def __init__(self, space):
        self.dense = space <= _DENSE_LIMIT
        if self.dense:
            self.flags = np.zeros(space, dtype=bool)
        else:
            self.known = np.zeros(0, dtype=np.int64)

    def fresh(self, codes):
        codes = np.unique(codes)
        if self.dense:
            new = codes[~self.flags[codes]]
            self.flags[new] = True
        else:
            new = codes[~np.isin(codes, self.known, assume_unique=True)]
            self.known = np.union1d(self.known, new)
        return new


class ExplicitGroup:
    """A subgroup of an ambient SymmetricGroup or GL2, stored by its element codes."""

    def __init__(self, ambient, codes, generators=None):
        self.ambient = ambient
        self.codes = np.unique(np.asarray(codes, dtype=np.int64))
        self._gens = None if generators is None else np.atleast_2d(np.asarray(generators, dtype=np.int64))
        if ambient.order % len(self.codes):
            raise DomainError(f"order {len(self.codes)} does not divide {ambient.order}")

    @classmethod
    def from_elements(cls, ambient, rows, validate=True):
        """Wrap an explicit element list, checking that it is a subgroup."""
        codes = ambient.encode(rows)
        if validate:
            gens = greedy_generators(ambient, codes)
            if not np.array_equal(closure_codes(ambient, gens), np.unique(codes)):
                raise DomainError("element set is not closed under multiplication")
            return cls(ambient, codes, gens)
        return cls(ambient, codes)

    @property
    def order(self) -> int:
        return len(self.codes)

    def __len__(self):
        return len(self.codes)

    @property
    def rows(self) -> np.ndarray:
        return self.ambient.decode(self.codes)

    @property
    def elements(self) -> list:
        return [self.ambient.wrap(r) for r in self.rows]

    @property
    def generators(self) -> np.ndarray:
        if self._gens is None:
            self._gens = greedy_generators(self.ambient, self.codes)
        return self._gens

    def contains_codes(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        idx = np.clip(np.searchsorted(self.codes, codes), 0, len(self.codes) - 1)
        return self.codes[idx] == codes

    def __contains__(self, element) -> bool:
        return bool(self.contains_codes(self.ambient.encode(self.ambient.unwrap(element)))[0])

    def issubset(self, other: "ExplicitGroup") -> bool:
        return self.ambient == other.ambient and bool(np.all(other.contains_codes(self.codes)))

    def __eq__(self, other):
        return isinstance(other, ExplicitGroup) and self.ambient == other.ambient and np.array_equal(self.codes, other.codes)

    def __hash__(self):
        return hash((self.ambient, self.codes.tobytes()))

    def __repr__(self):
        return f"ExplicitGroup({self.ambient!r}, order={self.order})"


def closure_codes(ambient, generators, limit: int = CLOSURE_LIMIT) -> np.ndarray:
    """Sorted codes of the subgroup generated by ``generators`` (rows)."""
    gens = np.atleast_2d(np.asarray(generators, dtype=np.int64))
    ident = ambient.identity()
    if gens.size == 0:
        return ambient.encode(ident)
    seen = _Visited(ambient.code_space)
    frontier = ident
    seen.fresh(ambient.encode(ident))
    total = 1
    while len(frontier):
        prods = ambient.mul(np.repeat(frontier, len(gens), axis=0), np.tile(gens, (len(frontier), 1)))
        new_codes = seen.fresh(ambient.encode(prods))
        total += len(new_codes)
        if total > limit:
            raise ResourceError(f"closure exceeds {limit} elements")
        frontier = ambient.decode(new_codes)
    if seen.dense:
        return np.flatnonzero(seen.flags).astype(np.int64)
    return seen.known


def closure(generators, ambient, limit: int = CLOSURE_LIMIT) -> ExplicitGroup:
    """Subgroup generated by Perm/Mat2 values (or raw rows) inside ``ambient``."""
    rows = [ambient.unwrap(g) if isinstance(g, (Perm, Mat2)) else np.asarray(g) for g in generators]
    gens = np.array(rows, dtype=np.int64).reshape(-1, ambient.width) if rows else np.zeros((0, ambient.width), dtype=np.int64)
    return ExplicitGroup(ambient, closure_codes(ambient, gens, limit), gens if len(gens) else None)


def greedy_generators(ambient, codes) -> np.ndarray:
    """A small generating set for the group with the given codes."""
    codes = np.unique(np.asarray(codes, dtype=np.int64))
    order = np.random.default_rng(0).permutation(len(codes))
    gens = []
    current = ambient.encode(ambient.identity())
    for i in order:
        if len(current) == len(codes):
            break
        c = codes[i]
        idx = np.searchsorted(current, c)
        if idx < len(current) and current[idx] == c:
            continue
        gens.append(ambient.decode(c)[0])
        current = closure_codes(ambient, np.array(gens))
    if not gens:
        return np.zeros((0, ambient.width), dtype=np.int64)
    return np.array(gens, dtype=np.int64)


def _conj(ambient, g, x):
    """g x g^-1 for row arrays (broadcast)."""
    return ambient.mul(ambient.mul(g, x), ambient.inv(g))


def _commutator(ambient, g, h):
    return ambient.mul(ambient.mul(g, h), ambient.mul(ambient.inv(g), ambient.inv(h)))


def is_normal(N: ExplicitGroup, G: ExplicitGroup) -> bool:
    gens_g = G.generators
    gens_n = N.generators
    if len(gens_g) == 0 or len(gens_n) == 0:
        return True
    amb = G.ambient
    gi = np.repeat(gens_g, len(gens_n), axis=0)
    ni = np.tile(gens_n, (len(gens_g), 1))
    return bool(np.all(N.contains_codes(amb.encode(_conj(amb, gi, ni)))))


def normal_closure(G: ExplicitGroup, seeds) -> ExplicitGroup:
    amb = G.ambient
    gens = np.atleast_2d(np.asarray(seeds, dtype=np.int64))
    N = ExplicitGroup(amb, closure_codes(amb, gens), gens)
    while True:
        gg = G.generators
        if len(gg) == 0 or len(N.generators) == 0:
            return N
        conj = _conj(amb, np.repeat(gg, len(N.generators), axis=0), np.tile(N.generators, (len(gg), 1)))
        outside = ~N.contains_codes(amb.encode(conj))
        if not outside.any():
            return N
        gens = np.vstack([N.generators, np.unique(conj[outside], axis=0)])
        N = ExplicitGroup(amb, closure_codes(amb, gens), gens)


def commutator_subgroup(G: ExplicitGroup, limit: int = 10**6) -> ExplicitGroup:
    """[G, G] as the normal closure of commutators of generators.

    The result is checked: it is normal in G and contains every commutator of
    generators, so G/[G,G] is abelian.
    """
    if G.order > limit:
        raise ResourceError(f"|G| = {G.order} exceeds {limit}")
    amb = G.ambient
    gens = G.generators
    if len(gens) < 2:
        return ExplicitGroup(amb, amb.encode(amb.identity()))
    i, j = np.triu_indices(len(gens), k=1)
    comms = _commutator(amb, gens[i], gens[j])
    N = normal_closure(G, comms)
    if not (is_normal(N, G) and N.issubset(G)):
        raise AssertionError("commutator subgroup failed its normality check")
    return N


def quotient_is_abelian(G: ExplicitGroup, N: ExplicitGroup) -> bool:
    amb = G.ambient
    gens = G.generators
    if len(gens) < 2:
        return True
    i, j = np.triu_indices(len(gens), k=1)
    return is_normal(N, G) and bool(np.all(N.contains_codes(amb.encode(_commutator(amb, gens[i], gens[j])))))


def index(G: ExplicitGroup, H: ExplicitGroup) -> int:
    if not H.issubset(G):
        raise DomainError("H is not contained in G")
    return G.order // H.order


def _coset_representatives(G: ExplicitGroup, M: ExplicitGroup) -> np.ndarray:
    amb = G.ambient
    covered = np.zeros(len(G.codes), dtype=bool)
    m_rows = M.rows
    reps = []
    rows = G.rows
    for k in range(len(G.codes)):
        if covered[k]:
            continue
        g = rows[k : k + 1]
        reps.append(g[0])
        coset = amb.encode(amb.mul(np.repeat(g, len(m_rows), axis=0), m_rows))
        covered[np.searchsorted(G.codes, coset)] = True
    return np.array(reps)


def conjugacy_union(G: ExplicitGroup, M: ExplicitGroup) -> np.ndarray:
    """Codes of the union of the conjugates g M g^-1, g in G."""
    if not M.issubset(G):
        raise DomainError("M is not contained in G")
    amb = G.ambient
    reps = _coset_representatives(G, M)
    m_rows = M.rows
    conj = _conj(amb, np.repeat(reps, len(m_rows), axis=0), np.tile(m_rows, (len(reps), 1)))
    return np.unique(amb.encode(conj))


def conjugacy_union_ratio(G: ExplicitGroup, M: ExplicitGroup) -> Fraction:
    """delta(G, M) = |union of conjugates of M| / |G|, exactly."""
    ratio = Fraction(len(conjugacy_union(G, M)), G.order)
    if M.order < G.order and ratio >= 1:
        raise AssertionError("a proper subgroup's conjugates cover G")
    return ratio


def derangement_delta(n: int) -> Fraction:
    """1 - sum_{i<=n} (-1)^i / i!: the share of S_n fixing at least one letter."""
    if not 1 <= n <= 20:
        raise DomainError("n must lie in [1, 20]")
    return 1 - sum(Fraction((-1) ** i, math.factorial(i)) for i in range(n + 1))


# ---------------------------------------------------------------------------
# Subgroups of S_n
# ---------------------------------------------------------------------------


def symmetric_group(n: int) -> ExplicitGroup:
    amb = SymmetricGroup(n)
    gens = [Perm.cycle(n, 0, 1).images] if n >= 2 else []
    if n >= 3:
        gens.append(tuple(range(1, n)) + (0,))
    return closure([np.array(g) for g in gens], amb)


def alternating_group(n: int) -> ExplicitGroup:
    amb = SymmetricGroup(n)
    gens = [Perm.cycle(n, 0, 1, i).images for i in range(2, n)]
    return closure([np.array(g) for g in gens], amb)


def point_stabilizer(n: int, letter: int = 0) -> ExplicitGroup:
    amb = SymmetricGroup(n)
    rows = amb.all_elements()
    return ExplicitGroup(amb, amb.encode(rows[rows[:, letter] == letter]))


def is_transitive(G: ExplicitGroup) -> bool:
    n = G.ambient.n
    return bool(np.all(np.isin(np.arange(n), np.unique(G.rows[:, 0]))))


class _PermTable:
    """S_n indexed 0..n!-1 with a full multiplication table."""

    def __init__(self, n):
        self.amb = SymmetricGroup(n)
        self.rows = self.amb.all_elements()
        self.codes = self.amb.encode(self.rows)
        order = len(self.rows)
        lookup = np.full(self.amb.code_space, -1, dtype=np.int64)
        lookup[self.codes] = np.arange(order)
        self.lookup = lookup
        prod = self.amb.mul(np.repeat(self.rows, order, axis=0), np.tile(self.rows, (order, 1)))
        self.table = lookup[self.amb.encode(prod)].reshape(order, order)
        self.inverse = lookup[self.amb.encode(self.amb.inv(self.rows))]

    def join(self, members: np.ndarray, gens: list, extra: int):
        """Element indices of <members, extra>, given members = <gens>."""
        order = len(self.rows)
        flags = np.zeros(order, dtype=bool)
        flags[members] = True
        all_gens = np.array(gens + [extra], dtype=np.int64)
        frontier = members
        while len(frontier):
            cand = np.unique(self.table[frontier][:, all_gens].ravel())
            new = cand[~flags[cand]]
            flags[new] = True
            frontier = new
        return np.flatnonzero(flags)


_SUBGROUP_CACHE: dict = {}


def all_subgroups(n: int) -> list:
    """Every subgroup of S_n (n <= 6), each exactly once.

    Starts from the trivial group and repeatedly joins conjugacy-class
    representatives with cyclic subgroups of prime-power order, adding whole
    conjugation orbits of each new subgroup, until nothing new appears.
    """
    if not 1 <= n <= 6:
        raise DomainError("all_subgroups supports 1 <= n <= 6")
    if n in _SUBGROUP_CACHE:
        return _SUBGROUP_CACHE[n]
    T = _PermTable(n)
    order = len(T.rows)
    elem_order = np.ones(order, dtype=np.int64)
    power = np.arange(order)
    for k in range(1, order + 1):
        if k > 1:
            power = T.table[power, np.arange(order)]
        hit = (power == 0) & (elem_order == 1) & (np.arange(order) != 0)
        elem_order[hit] = k
        if k > 1 and np.all((elem_order > 1) | (np.arange(order) == 0)):
            break
    identity_index = int(T.lookup[T.amb.encode(T.amb.identity())[0]])
    prime_power = [
        g for g in range(order) if g != identity_index and len(_prime_divisors(int(elem_order[g]))) == 1
    ]

    def key(members):
        return np.sort(members).tobytes()

    # one representative per conjugacy class is expanded; its whole orbit is recorded
    found: dict = {}
    trivial = np.array([identity_index])
    found[key(trivial)] = trivial
    queue = [(trivial, [])]
    while queue:
        members, gens = queue.pop()
        flags = np.zeros(order, dtype=bool)
        flags[members] = True
        for g in prime_power:
            if flags[g]:
                continue
            joined = T.join(members, gens, g)
            jk = key(joined)
            if jk in found:
                continue
            conj = T.table[T.table[:, joined], T.inverse[:, None]]
            for row in conj:
                found.setdefault(key(row), np.sort(row))
            queue.append((joined, gens + [g]))
    groups = [ExplicitGroup(T.amb, T.codes[members]) for members in found.values()]
    groups.sort(key=lambda G: (G.order, G.codes.tobytes()))
    _SUBGROUP_CACHE[n] = groups
    return groups


def _cycle_type(row) -> tuple:
    seen, out = set(), []
    for i in range(len(row)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = int(row[j])
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


def _proper_transitive(G: ExplicitGroup) -> bool:
    n = G.ambient.n
    return is_transitive(G) and 2 * G.order < math.factorial(n)


def transitive_union_ratio(n: int) -> Fraction:
    """|union of transitive subgroups other than A_n, S_n| / n!, from all_subgroups."""
    if not 1 <= n <= 6:
        raise DomainError("transitive_union_ratio supports 1 <= n <= 6")
    union = np.zeros(0, dtype=np.int64)
    for G in all_subgroups(n):
        if _proper_transitive(G):
            union = np.union1d(union, G.codes)
    return Fraction(len(union), math.factorial(n))


def transitive_union_ratio_pairs(n: int) -> Fraction:
    """The same ratio from a sweep over two-generator subgroups.

    The union is a union of conjugacy classes, so a class counts when some
    <x, y> with x its representative is transitive and smaller than A_n.
    """
    if not 1 <= n <= 6:
        raise DomainError("transitive_union_ratio_pairs supports 1 <= n <= 6")
    T = _PermTable(n)
    order = len(T.rows)
    limit = order // 2
    types = [_cycle_type(r) for r in T.rows]
    reps: dict = {}
    for i, t in enumerate(types):
        reps.setdefault(t, i)
    class_size = {t: types.count(t) for t in reps}
    ident = int(T.lookup[T.amb.encode(T.amb.identity())[0]])
    covered = 0
    for t, x in reps.items():
        cyc = [ident]
        while T.table[cyc[-1], x] != ident:
            cyc.append(int(T.table[cyc[-1], x]))
        base = np.array(sorted(set(cyc + [x])))
        for y in range(order):
            members = T.join(base, [x], y)
            if len(members) >= limit and 2 * len(members) >= order:
                continue
            if len(np.unique(T.rows[members, 0])) == n:
                covered += class_size[t]
                break
    return Fraction(covered, order)


# ---------------------------------------------------------------------------
# Subgroups of GL_2(Z/m)
# ---------------------------------------------------------------------------


def gl2_group(m: int) -> ExplicitGroup:
    amb = GL2(m)
    return ExplicitGroup(amb, amb.encode(amb.all_elements()))


def sl2_group(m: int) -> ExplicitGroup:
    amb = GL2(m)
    rows = amb.all_elements()
    return ExplicitGroup(amb, amb.encode(rows[amb.det(rows) == 1 % m]))


def congruence_subgroup(m: int, k: int, special: bool = False) -> ExplicitGroup:
    """{A in GL_2(Z/m) : A = I mod k}, intersected with SL_2 when ``special``."""
    if m % k:
        raise DomainError("k must divide m")
    amb = GL2(m)
    rows = amb.all_elements()
    mask = np.all((rows - np.array([1, 0, 0, 1])) % k == 0, axis=1)
    if special:
        mask &= amb.det(rows) == 1 % m
    return ExplicitGroup(amb, amb.encode(rows[mask]))


def intersect(G: ExplicitGroup, H: ExplicitGroup) -> ExplicitGroup:
    if G.ambient != H.ambient:
        raise DomainError("groups live in different ambients")
    return ExplicitGroup(G.ambient, np.intersect1d(G.codes, H.codes))


def adjoin_determinants(G: ExplicitGroup) -> ExplicitGroup:
    """<G, diag(1, d) : d a unit>, the smallest extension with surjective determinant."""
    amb = G.ambient
    m = amb.m
    diag = np.array([[1, 0, 0, d] for d in range(1, m) if math.gcd(d, m) == 1], dtype=np.int64)
    gens = np.vstack([G.generators, diag]) if len(G.generators) else diag
    return ExplicitGroup(amb, closure_codes(amb, gens), gens)
