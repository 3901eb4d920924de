"""Connectivity points of a uniform permutation."""

import itertools
import math
from fractions import Fraction

import pytest

from onedpp.connectivity import ConnectivityModel, indecomposable_counts
from onedpp.oracle import oracle_connectivity_distribution


def test_indecomposable_counts_frozen():
    assert indecomposable_counts(7) == [0, 1, 1, 3, 13, 71, 461, 3447]


def test_step_probabilities_form_a_chain():
    m = ConnectivityModel(6)
    for i in range(6):
        assert sum(m.step_probability(i, j) for j in range(i + 1, 7)) == 1
    assert m.step_probability(3, 3) == 0
    assert m.step_probability(4, 2) == 0


def test_q_closed_form_equals_summation():
    for n in (2, 3, 5, 7):
        m = ConnectivityModel(n)
        assert m.q_matrix().to_rows() == m.q_matrix_by_summation().to_rows()


def test_point_probability_against_direct_counting():
    n = 6
    m = ConnectivityModel(n)
    # enumerate all permutations once, tally connectivity points
    counts = {}
    for perm in itertools.permutations(range(1, n + 1)):
        pts = [i for i in range(1, n) if max(perm[:i]) == i]
        counts[perm] = set(pts)
    for r in range(1, 4):
        for sites in itertools.combinations(range(1, n), r):
            want = Fraction(sum(1 for pts in counts.values()
                                if set(sites) <= pts), math.factorial(n))
            assert m.point_probability(sites) == want


def test_kernel_minors_equal_point_probabilities():
    for n in (3, 5, 8):
        m = ConnectivityModel(n)
        kern = m.kernel()
        for r in range(1, 4):
            for sites in itertools.combinations(range(0, n + 1), r):
                assert kern.minor(sites) == m.point_probability(sites)


def test_endpoints_are_certain():
    m = ConnectivityModel(5)
    kern = m.kernel()
    assert kern.minor([0]) == 1
    assert kern.minor([5]) == 1
    assert m.point_probability([0, 5]) == 1


def test_matches_permutation_enumeration():
    # the oracle tallies interior indicator bits; a bit vector is the
    # trajectory through its set positions
    for n in (3, 5):
        dist = oracle_connectivity_distribution(n)
        m = ConnectivityModel(n)
        for bits, p in dist.items():
            traj = (0, *(i for i, b in enumerate(bits, start=1) if b), n)
            assert m.trajectory_probability(traj) == p


def test_expected_interior_points_value():
    m = ConnectivityModel(6)
    want = sum(Fraction(1, math.comb(6, i)) for i in range(1, 6))
    assert m.expected_interior_points() == want == Fraction(31, 60)
    # also equals the kernel trace over interior positions
    kern = m.kernel()
    assert sum(kern.at(x, x) for x in range(1, 6)) == want


def test_not_one_dependent_for_n_at_least_four():
    for n in range(4, 9):
        joint, product = ConnectivityModel(n).dependence_gap()
        assert joint != product
    # and the tiny cases degenerate back to equality
    j3, p3 = ConnectivityModel(3).dependence_gap()
    assert j3 == p3


def test_trajectory_probabilities_sum_to_one():
    for n in range(2, 8):
        m = ConnectivityModel(n)
        total = sum(m.trajectory_probability(t) for t in m.all_trajectories())
        assert total == 1


def test_trajectory_validation():
    m = ConnectivityModel(4)
    with pytest.raises(ValueError):
        m.trajectory_probability([1, 4])
    assert m.trajectory_probability([0, 2, 2, 4]) == 0


def test_simulation_reproducible_and_plausible():
    m = ConnectivityModel(5)
    runs = m.simulate(seed=11, reps=400)
    assert runs == m.simulate(seed=11, reps=400)
    assert all(t[0] == 0 and t[-1] == 5 for t in runs)
    # the full jump 0 -> 5 has probability f(5)/5! = 71/120
    direct = sum(1 for t in runs if t == (0, 5)) / len(runs)
    assert abs(direct - 71 / 120) < 0.08


def test_rejects_tiny_n():
    with pytest.raises(ValueError):
        ConnectivityModel(0)
