"""Partitions, ribbon shapes, and symmetric-function determinants."""

import math
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest

from onedpp.symfunc import (
    complete_homogeneous,
    conjugate,
    contains,
    elementary_symmetric,
    partition,
    ribbon_shape,
    skew_schur_e,
)


def test_partition_validates():
    assert partition([3, 1]) == (3, 1)
    assert partition([]) == ()
    with pytest.raises(ValueError):
        partition([1, 3])
    with pytest.raises(ValueError):
        partition([2, -1])


def test_conjugate():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()
    assert conjugate(conjugate((5, 4, 4, 1))) == (5, 4, 4, 1)


def test_contains():
    assert contains((3, 2), (2, 2))
    assert not contains((3, 2), (3, 3))
    assert not contains((2,), (1, 1))
    assert contains((3, 2), ())


def test_ribbon_shape_worked_example():
    lam, mu = ribbon_shape(8, [1, 5])
    assert lam == (6, 6, 3)
    assert mu == (5, 2, 0)


def test_ribbon_shape_cell_count():
    # a ribbon with n cells, one row per gap in the bordered subset
    for n in range(1, 9):
        for k in range(0, n):
            for subset in combinations(range(1, n), k):
                lam, mu = ribbon_shape(n, list(subset))
                assert sum(lam) - sum(mu) == n
                assert contains(lam, mu)


def test_ribbon_shape_rejects_out_of_range():
    with pytest.raises(ValueError):
        ribbon_shape(4, [0])
    with pytest.raises(ValueError):
        ribbon_shape(4, [4])
    with pytest.raises(ValueError):
        ribbon_shape(4, [2, 2])


def test_skew_schur_empty_shape_is_one():
    e = [Fraction(1), Fraction(1, 2), Fraction(1, 6), Fraction(0), Fraction(0)]
    assert skew_schur_e((3, 1), (3, 1), e) == 1


def test_skew_schur_worked_determinant():
    # e_j = j + 1 on the ribbon of {1, 5} in 8 steps gives the matrix
    # [[2,6,9],[1,5,8],[0,1,4]] with determinant 9
    e = [Fraction(j + 1) for j in range(9)]
    lam, mu = ribbon_shape(8, [1, 5])
    assert skew_schur_e(lam, mu, e) == 9


def test_skew_schur_two_cell_column():
    e = [Fraction(1), Fraction(3), Fraction(2)]
    # shape (1,1): det [[e1, e2], [e0, e1]]
    assert skew_schur_e((1, 1), (0, 0), e) == e[1] * e[1] - e[2] * e[0]


def test_elementary_and_complete_match_brute_force():
    xs = [Fraction(1, 2), Fraction(1, 3), Fraction(2), Fraction(-1, 5)]
    e = elementary_symmetric(xs, 6)
    h = complete_homogeneous(xs, 6)
    for r in range(0, 7):
        e_brute = (sum((math.prod(c, start=Fraction(1)) for c in combinations(xs, r)),
                       Fraction(0)) if r <= len(xs) else Fraction(0))
        h_brute = sum((math.prod(c, start=Fraction(1))
                       for c in combinations_with_replacement(xs, r)), Fraction(0))
        assert e[r] == e_brute
        assert h[r] == h_brute


def test_elementary_truncates_past_alphabet():
    e = elementary_symmetric([Fraction(1), Fraction(1)], 5)
    assert e[3] == 0 and e[5] == 0


def test_generating_functions_are_reciprocal():
    # sum h_r z^r times sum e_r (-z)^r telescopes to 1
    xs = [Fraction(2), Fraction(1, 2), Fraction(-3)]
    deg = 7
    e = elementary_symmetric(xs, deg)
    h = complete_homogeneous(xs, deg)
    for m in range(1, deg + 1):
        conv = sum((-1) ** j * e[j] * h[m - j] for j in range(m + 1))
        assert conv == 0


def test_skew_schur_rejects_bad_inputs():
    with pytest.raises(ValueError):
        skew_schur_e((2,), (1, 1), [Fraction(1), Fraction(1)])
    with pytest.raises(ValueError):
        # needs e_3 but only e_0..e_1 supplied
        skew_schur_e((3,), (), [Fraction(1), Fraction(1)])
