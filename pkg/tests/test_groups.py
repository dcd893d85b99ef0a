import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from largersieve import groups
from largersieve.errors import DomainError
from largersieve.groups import GL2, Mat2, Perm, SymmetricGroup, closure


def test_symmetric_closure_examples():
    amb = SymmetricGroup(3)
    G = closure([Perm.cycle(3, 0, 1), Perm.cycle(3, 0, 1, 2)], amb)
    assert G.order == 6
    assert closure([amb.identity()[0]], amb).order == 1


def test_sl2_mod_5_from_elementary_matrices():
    G = closure([Mat2(1, 1, 0, 1, 5), Mat2(1, 0, 1, 1, 5)], GL2(5))
    assert G.order == 120 == groups.sl2_group(5).order
    assert G == groups.sl2_group(5)


@pytest.mark.parametrize("m, order", [(2, 6), (3, 48), (4, 96), (5, 480), (8, 1536), (12, 4608)])
def test_gl2_orders(m, order):
    assert groups.gl2_group(m).order == order
    assert groups.sl2_group(m).order * sum(1 for u in range(m) if math.gcd(u, m) == 1) == order


def test_commutator_examples():
    S3 = groups.symmetric_group(3)
    assert groups.commutator_subgroup(S3) == groups.alternating_group(3)
    C = closure([Perm.cycle(4, 0, 1, 2, 3)], SymmetricGroup(4))
    assert groups.commutator_subgroup(C).order == 1
    G = groups.gl2_group(2)
    assert groups.index(groups.sl2_group(2), groups.commutator_subgroup(G)) == 2


def test_commutator_quotient_is_abelian():
    for n in (3, 4, 5):
        S = groups.symmetric_group(n)
        C = groups.commutator_subgroup(S)
        assert groups.is_normal(C, S) and groups.quotient_is_abelian(S, C)
        assert C == groups.alternating_group(n)


def test_conjugacy_union_examples():
    S3 = groups.symmetric_group(3)
    M = closure([Perm.cycle(3, 0, 1)], SymmetricGroup(3))
    assert groups.conjugacy_union_ratio(S3, M) == Fraction(2, 3)
    assert groups.conjugacy_union_ratio(S3, S3) == 1
    assert groups.conjugacy_union_ratio(groups.symmetric_group(4), groups.point_stabilizer(4)) == Fraction(5, 8)


def _derangements(n):
    return sum(1 for p in permutations(range(n)) if all(p[i] != i for i in range(n)))


@pytest.mark.parametrize("n", range(1, 8))
def test_derangement_delta(n):
    assert groups.derangement_delta(n) == 1 - Fraction(_derangements(n), math.factorial(n))


def test_derangement_range():
    with pytest.raises(DomainError):
        groups.derangement_delta(0)


def _brute_subgroup_count(n):
    """Subgroups of S_n as closed subsets generated by at most two elements, plus a third."""
    amb = SymmetricGroup(n)
    rows = amb.all_elements()
    seen = set()
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            seen.add(closure([rows[i], rows[j]], amb).codes.tobytes())
    return len(seen)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 6), (4, 30), (5, 156)])
def test_all_subgroups_counts(n, count):
    subs = groups.all_subgroups(n)
    assert len(subs) == count
    assert len({G.codes.tobytes() for G in subs}) == count
    for G in subs:
        assert closure(list(G.rows), G.ambient) == G


def test_all_subgroups_against_two_generator_sweep():
    # every subgroup of S_4 is 2-generated
    assert _brute_subgroup_count(4) == 30


def test_all_subgroups_s6():
    assert len(groups.all_subgroups(6)) == 1455


@pytest.mark.parametrize("n, value", [(3, Fraction(0)), (4, Fraction(2, 3)), (5, Fraction(7, 12)), (6, Fraction(1))])
def test_transitive_union_ratio(n, value):
    assert groups.transitive_union_ratio_pairs(n) == value
    if n <= 5:
        assert groups.transitive_union_ratio(n) == value


def test_example_two_identities():
    H = groups.congruence_subgroup(8, 2)
    CH = groups.commutator_subgroup(H)
    assert CH == groups.congruence_subgroup(8, 4, special=True)
    assert CH.order == 8
    assert groups.index(groups.gl2_group(8), groups.adjoin_determinants(CH)) == 48


@given(st.lists(st.permutations(range(5)), min_size=1, max_size=3))
def test_closure_is_a_group(gens):
    amb = SymmetricGroup(5)
    G = closure([np.array(g) for g in gens], amb)
    assert math.factorial(5) % G.order == 0
    rows = G.rows
    prod = amb.encode(amb.mul(np.repeat(rows, len(rows), axis=0), np.tile(rows, (len(rows), 1))))
    assert set(np.unique(prod)) == set(G.codes)


@given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 7), st.integers(0, 7))
def test_mat2_encoding_roundtrip(a, b, c, d):
    amb = GL2(8)
    A = Mat2(a, b, c, d, 8)
    if A.det % 2 == 0:
        return
    code = amb.encode(np.array([[a, b, c, d]]))
    assert amb.decode(code).tolist() == [[a, b, c, d]]
    assert A.trace == (a + d) % 8
