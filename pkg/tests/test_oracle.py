"""Enumeration oracles: independent ground truth for the determinant routes."""

from fractions import Fraction

import pytest

from onedpp.catalog import (
    AlternatingDescents,
    BinomialPosetUnion,
    BrentiRelation,
    CarriesBaseB,
    GenericPoints,
    IidTrials,
    MallowsDescents,
    TypeBDescents,
    UniformDescents,
)
from onedpp.groupcarries import q8_setup
from onedpp.oracle import (
    EnumerationBudgetError,
    OracleBudget,
    descent_bits,
    oracle_correlations,
    oracle_distribution,
    oracle_group_distribution,
    oracle_mallows_normalizer,
)


def test_descent_bits():
    assert descent_bits([3, 1, 4, 1, 5]) == (1, 0, 1, 0)
    assert descent_bits([2]) == ()


def test_budget_guard_trips():
    with pytest.raises(EnumerationBudgetError):
        oracle_distribution(CarriesBaseB(10), 12, budget=OracleBudget(1000))
    with pytest.raises(EnumerationBudgetError):
        oracle_group_distribution(q8_setup(), 9, budget=OracleBudget(100))


def test_distributions_are_normalized():
    names = [
        CarriesBaseB(3),
        UniformDescents(),
        MallowsDescents(Fraction(1, 2)),
        IidTrials((Fraction(1, 3), Fraction(2, 3))),
        AlternatingDescents(),
        BinomialPosetUnion(Fraction(1, 2), 2),
        GenericPoints(2),
    ]
    for name in names:
        dist = oracle_distribution(name, 5)
        assert sum(dist.values()) == 1
        assert len(dist) == 16  # zero-filled over all patterns


def test_type_b_oracle_fixes_horizon():
    dist = oracle_distribution(TypeBDescents(2), 3)
    assert dist[(0, 0)] == Fraction(1, 8)
    assert dist[(0, 1)] == Fraction(3, 8)
    with pytest.raises(ValueError):
        oracle_distribution(TypeBDescents(2), 4)


def test_brenti_oracle_weights_strings():
    theta = (Fraction(1, 2), Fraction(1, 2))
    rel = frozenset({(1, 1), (1, 2), (2, 2)})  # i <= j on two letters
    dist = oracle_distribution(BrentiRelation(rel, theta), 4)
    iid = oracle_distribution(IidTrials(theta), 4)
    assert dist == iid


def test_mallows_normalizer_product_formula():
    for n in (3, 4, 5):
        for q in (Fraction(1, 2), Fraction(2, 3)):
            direct, product = oracle_mallows_normalizer(n, q)
            assert direct == product


def test_correlations_zeta_transform():
    dist = {
        (0, 0): Fraction(1, 8), (0, 1): Fraction(1, 4),
        (1, 0): Fraction(1, 8), (1, 1): Fraction(1, 2),
    }
    rho = oracle_correlations(dist)
    assert rho[()] == 1
    assert rho[(1,)] == Fraction(1, 8) + Fraction(1, 2)
    assert rho[(2,)] == Fraction(1, 4) + Fraction(1, 2)
    assert rho[(1, 2)] == Fraction(1, 2)


def test_group_oracle_matches_quaternion_run_rates():
    dist = oracle_group_distribution(q8_setup(), 4)
    assert sum(dist.values()) == 1
    # single-site rate is a_2 = 6/16 at every position
    for site in (1, 2, 3):
        rate = sum(p for bits, p in dist.items() if bits[site - 1] == 1)
        assert rate == Fraction(6, 16)
