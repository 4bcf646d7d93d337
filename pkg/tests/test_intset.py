from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ap3lab.intset import (AffineMap, DomainError, IntegerSet, ParseError, abel_identity_residual,
                           counting_profile, map_affine, parse_set, reciprocal_partial_sum)
from oracles import harmonic_like, primes_upto

small_sets = st.sets(st.integers(1, 400), max_size=60)


def test_parse_sorts_and_dedups():
    assert parse_set("3\n1\n2").tolist() == [1, 2, 3]
    assert parse_set("5,5,5").tolist() == [5]
    assert parse_set("# header\n4, 2\n\n  7 \n").tolist() == [2, 4, 7]


def test_parse_rejects_nonpositive():
    with pytest.raises(DomainError):
        parse_set("0\n2")


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as exc:
        parse_set("1\n2\nthree\n")
    assert exc.value.line == 3
    assert "line 3" in str(exc.value)


def test_integer_set_rejects_nonpositive():
    with pytest.raises(DomainError):
        IntegerSet([3, -1])


def test_membership_and_restrict():
    S = IntegerSet([9, 2, 4])
    assert 4 in S and 3 not in S and 100 not in S
    assert S.max_element == 9
    assert S.restrict(5).tolist() == [2, 4]
    assert S.contains(np.array([0, 2, 9, 10])).tolist() == [False, True, True, False]


def test_sets_are_immutable():
    S = IntegerSet([1, 2])
    with pytest.raises(ValueError):
        S.elements[0] = 5


@pytest.mark.parametrize("elems,N,expected", [
    ([2, 4], 5, [0, 1, 1, 2, 2]),
    ([1], 3, [1, 1, 1]),
])
def test_counting_profile(elems, N, expected):
    assert counting_profile(IntegerSet(elems), N).tolist() == expected


def test_counting_profile_primes():
    f = counting_profile(IntegerSet(primes_upto(50)), 10)
    assert f[10] == 4


@given(small_sets, st.integers(1, 500))
def test_counting_profile_steps(elems, N):
    S = IntegerSet(elems)
    f = [0] + counting_profile(S, N).tolist()
    for n in range(1, N + 1):
        assert f[n] - f[n - 1] in (0, 1)
        assert (f[n] == f[n - 1] + 1) == (n in elems)


@pytest.mark.parametrize("elems,expected", [
    ([2, 3, 5, 7], Fraction(247, 210)),
    ([1], Fraction(1)),
    ([2, 4], Fraction(3, 4)),
])
def test_reciprocal_partial_sum(elems, expected):
    r = reciprocal_partial_sum(IntegerSet(elems))
    assert r.fraction == expected
    assert (r.numerator, r.denominator) == (expected.numerator, expected.denominator)
    assert r.approx == float(expected)


def test_reciprocal_sum_of_empty_set_is_rejected():
    with pytest.raises(DomainError):
        reciprocal_partial_sum(IntegerSet())


@given(st.sets(st.integers(1, 10**6), min_size=1, max_size=80), st.integers(1, 10**6))
def test_reciprocal_sum_adds_one_over_x(elems, x):
    if x in elems:
        return
    before = reciprocal_partial_sum(IntegerSet(elems)).fraction
    after = reciprocal_partial_sum(IntegerSet(elems | {x})).fraction
    assert after == before + Fraction(1, x)
    assert after == harmonic_like(elems | {x})


def test_abel_worked_instance():
    assert abel_identity_residual(IntegerSet([2, 4]), 5).is_zero()
    # LHS 3/4 against 2/5 + 1/6 + 1/12 + 2/20
    assert Fraction(2, 5) + Fraction(1, 6) + Fraction(1, 12) + Fraction(2, 20) == Fraction(3, 4)


def test_abel_when_nothing_is_below_horizon():
    r = abel_identity_residual(IntegerSet([10]), 5)
    assert r.is_zero() and str(r) == "0/1"


def test_abel_primes_to_100():
    assert abel_identity_residual(IntegerSet(primes_upto(100)), 100).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(1, 10**4), max_size=300), st.integers(1, 10**4))
def test_abel_residual_is_exactly_zero(elems, N):
    assert abel_identity_residual(IntegerSet(elems), N).is_zero()


@pytest.mark.parametrize("elems,m,expected", [
    ([1, 2, 4, 5], AffineMap(2, 1), [3, 5, 9, 11]),
    ([1, 2, 3], AffineMap(-1, 10), [7, 8, 9]),
])
def test_map_affine(elems, m, expected):
    assert map_affine(IntegerSet(elems), m).tolist() == expected


def test_map_affine_rejects_nonpositive_image():
    with pytest.raises(DomainError):
        map_affine(IntegerSet([1, 5]), AffineMap(-1, 3))


def test_affine_map_needs_nonzero_alpha():
    with pytest.raises(DomainError):
        AffineMap(0, 3)


@given(small_sets, st.integers(-5, 5).filter(bool), st.integers(0, 3000))
def test_map_affine_preserves_size(elems, a, b):
    S = IntegerSet(elems)
    if S and min(a * s + b for s in S) < 1:
        return
    T = map_affine(S, AffineMap(a, b))
    assert len(T) == len(S)
    assert map_affine(S, AffineMap(1, 0)) == S
