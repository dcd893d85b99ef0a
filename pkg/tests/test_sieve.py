import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from largersieve.errors import DomainError
from largersieve.sieve import (
    CoverBoundInput,
    IntPoint,
    ProjPoint,
    SieveInstance,
    auto_cutoff,
    congruent_prime_sum_int,
    congruent_prime_sum_proj,
    cutoff_denominator,
    hit_bound,
    measure_occupancy,
    proj_height,
    sieve_bound_int,
    sieve_bound_proj,
    sieve_primes,
    specialized_bound,
)


def test_proj_point_normalises():
    assert ProjPoint((-2, 4, 6)).coords == (1, -2, -3)
    assert ProjPoint((0, -3)).coords == (0, 1)
    assert proj_height(ProjPoint((6, 10, 15))) == 15
    assert proj_height(ProjPoint((1, 0, 0))) == 1
    with pytest.raises(DomainError):
        ProjPoint((0, 0))


@pytest.mark.parametrize(
    "P, Q, primes",
    [((1, 2), (3, 4), [2]), ((1, 0), (0, 1), []), ((1, 1), (1, 7), [2, 3])],
)
def test_congruent_prime_sum_proj_examples(P, Q, primes):
    P, Q = ProjPoint(P), ProjPoint(Q)
    s, w = congruent_prime_sum_proj(P, Q)
    assert w == primes
    assert s == pytest.approx(math.fsum(math.log(p) for p in primes))
    assert s <= math.log(2 * proj_height(P) * proj_height(Q))


def test_congruent_prime_sum_int_examples():
    assert congruent_prime_sum_int(IntPoint((0, 0)), IntPoint((6, 12)))[1] == [2, 3]
    assert congruent_prime_sum_int(IntPoint((0,)), IntPoint((1,))) == (0, [])
    s, w = congruent_prime_sum_int(IntPoint((2, 3)), IntPoint((5, 3)))
    assert w == [3] and s == math.log(3)
    with pytest.raises(DomainError):
        congruent_prime_sum_int(IntPoint((1, 1)), IntPoint((1, 1)))
    with pytest.raises(DomainError):
        congruent_prime_sum_proj(ProjPoint((1, 2)), ProjPoint((-2, -4)))


coords = st.lists(st.integers(-30, 30), min_size=3, max_size=3).filter(any)


@given(coords, coords)
def test_proj_witnesses_are_reduction_agreements(a, b):
    P, Q = ProjPoint(a), ProjPoint(b)
    if P == Q:
        return
    _, w = congruent_prime_sum_proj(P, Q)
    for p in sympy.primerange(2, 60):
        assert (P.reduce_mod(p) == Q.reduce_mod(p)) == (p in w)


@given(st.lists(st.integers(-10**6, 10**6), min_size=2, max_size=2), st.lists(st.integers(-10**6, 10**6), min_size=2, max_size=2), st.lists(st.integers(-50, 50), min_size=2, max_size=2))
def test_int_sum_depends_on_difference_only(a, b, shift):
    if a == b:
        return
    P, Q = IntPoint(a), IntPoint(b)
    moved = [IntPoint([x + s for x, s in zip(v, shift)]) for v in (a, b)]
    assert congruent_prime_sum_int(P, Q) == congruent_prime_sum_int(*moved)
    assert congruent_prime_sum_int(P, Q)[0] <= math.log((P - Q).norm()) + 1e-12


def test_measure_occupancy_examples():
    assert measure_occupancy([0, 1, 4, 9], 5) == 3
    assert measure_occupancy([17], 101) == 1
    assert measure_occupancy([m * m for m in range(101)], 7) == 4
    assert measure_occupancy([ProjPoint((1, 2)), ProjPoint((3, 6)), ProjPoint((1, 7))], 5) == 1
    assert measure_occupancy([ProjPoint((1, 2)), ProjPoint((3, 6)), ProjPoint((1, 7))], 7) == 2


@given(st.lists(st.integers(-10**5, 10**5), min_size=1, max_size=60, unique=True))
def test_measured_instance_matches_pointwise_occupancy(pts):
    primes = sieve_primes(2, 200)
    inst = SieveInstance.measured(pts, primes)
    assert inst.occupancy == {p: len({v % p for v in pts}) for p in primes}


def _by_hand(occ, penalty):
    num = sum(math.log(p) for p in occ) - penalty
    den = sum(math.log(p) / g for p, g in occ.items()) - penalty
    return num / den if den > 0 else None


def test_sieve_bound_proj_against_hand_evaluation():
    occ = {p: (p + 1) / 2 for p in sieve_primes(2, 200)}
    res = sieve_bound_proj(SieveInstance((), 10**4, occ, kind="proj"))
    assert res.value == pytest.approx(_by_hand(occ, math.log(2 * 10**8)), rel=1e-12)


def test_sieve_bound_single_prime():
    res = sieve_bound_proj(SieveInstance((), 1, {3: 1}, kind="proj"))
    assert res.value == pytest.approx(1.0)


def test_vacuous_sieve_is_inconclusive():
    occ = {p: p + 1 for p in sieve_primes(2, 500)}
    assert sieve_bound_proj(SieveInstance((), 10**4, occ, kind="proj")).inconclusive
    occ = {p: p for p in sieve_primes(2, 500)}
    assert sieve_bound_int(SieveInstance((), 10**6, occ)).inconclusive


def test_sieve_bound_int_with_unit_diameter():
    occ = {p: 2 for p in sieve_primes(3, 50)}
    res = sieve_bound_int(SieveInstance((), 1, occ))
    total = sum(math.log(p) for p in occ)
    assert res.value == pytest.approx(total / (total / 2))


def test_squares_demo():
    B = 10**4
    pts = [m * m for m in range(101)]
    primes = sieve_primes(11, auto_cutoff(0.5, 1.0, set(), B))
    res = sieve_bound_int(SieveInstance.measured(pts, primes))
    assert 101 <= res.value <= 5 * math.sqrt(B)


def test_instance_validation():
    with pytest.raises(DomainError):
        SieveInstance((0, 50), 10, {3: 1})
    with pytest.raises(DomainError):
        SieveInstance((), 10, {3: 0})
    with pytest.raises(DomainError):
        SieveInstance((), 10, {3: 1}, excluded_primes=frozenset({3}))


def test_auto_cutoff_examples():
    x = auto_cutoff(1.0, 1.0, set(), 1)
    assert x <= 100
    assert cutoff_denominator(1.0, 1.0, set(), 1, 1, x) >= 1
    big = auto_cutoff(1.0, 1.0, set(), 10**4)
    half = auto_cutoff(0.5, 1.0, set(), 10**4)
    assert half <= big**2
    assert auto_cutoff(0.5, 1.0, set(), 10**6) > half


@given(st.floats(0.1, 1.0), st.floats(1.0, 4.0), st.floats(1.0, 1e4))
def test_auto_cutoff_is_positive_and_monotone_in_B(delta, D, B):
    x = auto_cutoff(delta, D, set(), B)
    assert cutoff_denominator(delta, D, set(), B, 1, x) >= 1
    assert auto_cutoff(delta, D, set(), 10 * B) >= x


def test_specialized_bound():
    assert specialized_bound(0.5, 1, set(), 100) == pytest.approx(10)
    assert specialized_bound(0.5, 1, set(), 1) == 1
    assert specialized_bound(0.5, 2, set(), 7) == pytest.approx(4 * specialized_bound(0.5, 1, set(), 7))
    # primes of S below D^2 are ignored, those above contribute log p / p
    assert specialized_bound(1, 2, {3, 5}, 1) == pytest.approx(4 * math.exp(math.log(5) / 5))


def test_hit_bound_examples():
    hb = hit_bound(CoverBoundInput(6, ((1, 6),), frozenset({2, 3}), 2, 1, 1000))
    assert hb.delta == 1 and hb.c == 36
    assert hb.bound == pytest.approx(36 * 1000**2 * math.log(1000))
    hb = hit_bound(CoverBoundInput(6, ((1, 2), (2, 3)), frozenset(), 2, 1, 100))
    assert hb.delta == Fraction(1, 3)


@given(st.integers(1, 12), st.integers(1, 12), st.floats(2, 1e5))
def test_hit_bound_monotone(c1, c2, B):
    lo, hi = sorted((c1, c2))
    a = hit_bound(CoverBoundInput(12, ((1, lo),), frozenset(), 3, 1, B))
    b = hit_bound(CoverBoundInput(12, ((1, hi),), frozenset(), 3, 1, B))
    assert 0 < a.delta <= b.delta <= 1 and a.bound <= b.bound
    assert hit_bound(CoverBoundInput(12, ((1, lo),), frozenset(), 3, 1, 2 * B)).bound >= a.bound


def test_cover_input_validation():
    with pytest.raises(DomainError):
        CoverBoundInput(6, ((1, 7),), frozenset(), 2, 1, 10)
    with pytest.raises(DomainError):
        CoverBoundInput(6, ((1, 0),), frozenset(), 2, 1, 10)
    with pytest.raises(DomainError):
        CoverBoundInput(6, ((1, 1),), frozenset({4}), 2, 1, 10)


def test_random_sets_are_sound():
    rng = np.random.default_rng(3)
    primes = sieve_primes(2, 1000)
    for _ in range(50):
        pts = rng.choice(np.arange(-5000, 5001), size=int(rng.integers(1, 80)), replace=False)
        res = sieve_bound_int(SieveInstance.measured(pts.tolist(), primes))
        assert res.inconclusive or res.value >= len(pts) * (1 - 1e-12)
