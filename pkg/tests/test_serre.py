import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from largersieve import groups, serre
from largersieve.errors import DomainError
from largersieve.groups import GL2, Mat2, closure
from largersieve.primes import legendre


def test_classify_examples():
    assert serre.classify(Mat2(1, 0, 0, 1, 5)).as_tuple() == (False, False, False)
    assert serre.classify(Mat2(1, 1, 0, 1, 7)).as_tuple() == (False, False, False)
    assert serre.classify(Mat2(0, -1, 1, 0, 5)).as_tuple() == (False, False, False)
    # trace 3, det 2 mod 5: disc 1 is a nonzero square, u = 9/2 = 2 is excluded from C3
    assert serre.classify_trace_det(3, 2, 5).as_tuple() == (True, False, False)


def test_classify_rejects_small_ell():
    with pytest.raises(DomainError):
        serre.classify_trace_det(1, 1, 3)


def _classes_by_definition(t, d, ell):
    disc = (t * t - 4 * d) % ell
    c1 = t % ell != 0 and disc != 0 and legendre(disc, ell) == 1
    c2 = t % ell != 0 and legendre(disc, ell) == -1
    u = t * t * pow(d, -1, ell) % ell
    c3 = u not in (0, 1, 2, 4 % ell) and (u * u - 3 * u + 1) % ell != 0
    return c1, c2, c3


@pytest.mark.parametrize("ell", [5, 7, 11, 13])
def test_vectorised_classification_matches_scalar(ell):
    rows = GL2(ell).all_elements()
    flags = serre.classify_rows(rows, ell)
    for row, f in zip(rows[::7], flags[::7]):
        a, b, c, d = (int(v) for v in row)
        assert tuple(bool(v) for v in f) == _classes_by_definition(a + d, a * d - b * c, ell)


@pytest.mark.parametrize("ell, d, t, count", [(5, 1, 0, 30), (5, 1, 2, 25), (7, 1, 1, 56)])
def test_count_examples(ell, d, t, count):
    assert serre.count_fixed_trace_det(ell, d, t) == count
    assert serre.count_fixed_trace_det(ell, d, t, method="formula") == count


@pytest.mark.parametrize("ell", [5, 7])
def test_trace_table_matches_full_enumeration(ell):
    for d in range(1, ell):
        direct = np.zeros(ell, dtype=np.int64)
        for a, b, c, e in itertools.product(range(ell), repeat=4):
            if (a * e - b * c) % ell == d:
                direct[(a + e) % ell] += 1
        assert direct.tolist() == serre.trace_count_table(ell, d).tolist()


def test_class_proportion_examples():
    p1 = serre.class_proportion(17, 1, 1)
    p3 = serre.class_proportion(17, 1, 3)
    assert abs(p1 - Fraction(1, 2)) <= Fraction(8, 17)
    assert abs(p3 - 1) <= 1
    for ell in (5, 7, 11):
        for d in range(1, ell):
            total = serre.class_proportion(ell, d, 1) + serre.class_proportion(ell, d, 2)
            assert total <= 1


def test_contains_sl2():
    assert serre.contains_sl2([Mat2(1, 1, 0, 1, 5), Mat2(1, 0, 1, 1, 5)], 5)
    assert not serre.contains_sl2([Mat2(2, 1, 0, 1, 5), Mat2(1, 0, 0, 3, 5)], 5)
    assert serre.contains_sl2([Mat2(2, 0, 0, 1, 7), Mat2(1, 1, 0, 1, 7), Mat2(1, 0, 1, 1, 7)], 7)


@pytest.mark.parametrize("kind", serre.SAMPLE_KINDS)
def test_generator_kinds_are_invertible(kind):
    rng = np.random.default_rng(1)
    for _ in range(20):
        gens = serre.random_generator_set(11, rng, kind)
        assert gens and all(g.det % 11 for g in gens)


@given(st.integers(0, 2**32), st.sampled_from([5, 7]))
def test_criterion_holds(seed, ell):
    rng = np.random.default_rng(seed)
    G = closure(serre.random_generator_set(ell, rng), GL2(ell))
    if all(serre.classes_met(G)):
        assert groups.sl2_group(ell).issubset(G)
