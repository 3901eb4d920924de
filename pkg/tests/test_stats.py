"""Counting statistics, normal comparison, and seeded samplers."""

import math
from fractions import Fraction

import pytest

from onedpp.catalog import (
    AlternatingDescents,
    CarriesBaseB,
    GenericPoints,
    IidTrials,
    MallowsDescents,
    TypeBDescents,
    UniformDescents,
    build,
)
from onedpp.onedep import all_patterns, kernel_stationary, pattern_probability
from onedpp.stats import (
    CountPolynomial,
    count_moments,
    count_polynomial,
    eulerian_numbers,
    normal_approx_report,
    normal_cdf,
    numeric_eigenvalues,
    simulate_process,
    uniform_sum_report,
)


def _dense(name, horizon, hi_extra=2):
    spec = build(name, horizon, terms=horizon + hi_extra)
    return kernel_stationary(spec).to_dense(horizon)


# --- counting polynomial ---


def test_count_polynomial_matches_pattern_tally():
    name = CarriesBaseB(3)
    horizon = 6
    spec = build(name, horizon)
    poly = count_polynomial(_dense(name, horizon))
    by_count = {}
    for p in all_patterns(horizon):
        k = sum(p.bits)
        by_count[k] = by_count.get(k, Fraction(0)) + pattern_probability(spec, p)
    for j, c in enumerate(poly.coeffs):
        assert c == by_count.get(j, Fraction(0))
    assert poly.evaluate(Fraction(1)) == 1


def test_count_polynomial_moments_match_trace_formulas():
    kern = _dense(UniformDescents(), 8)
    poly = count_polynomial(kern)
    mean, var = count_moments(kern)
    assert poly.mean() == mean
    assert poly.variance() == var


def test_descent_count_moments_closed_form():
    # descents of a uniform permutation of n+1 letters: mean n/2,
    # variance (n+2)/12
    for horizon in (4, 7, 10):
        mean, var = count_moments(_dense(UniformDescents(), horizon))
        n = horizon - 1
        assert mean == Fraction(n, 2)
        assert var == Fraction(n + 2, 12)


def test_carry_count_moments_closed_form():
    for b in (2, 3, 10):
        for horizon in (5, 9):
            mean, var = count_moments(_dense(CarriesBaseB(b), horizon))
            n = horizon
            assert mean == (n - 1) * (Fraction(1, 2) - Fraction(1, 2 * b))
            assert var == Fraction(n + 1, 12) * (1 - Fraction(1, b * b))


def test_mallows_descent_moments_closed_form():
    for q in (Fraction(1, 2), Fraction(1, 3)):
        for horizon in (4, 6, 9):
            mean, var = count_moments(_dense(MallowsDescents(q), horizon))
            n = horizon
            assert mean == (n - 1) * q / (q + 1)
            want_var = q * ((q * q - q + 1) * n - q * q + 3 * q - 1) \
                / ((q * q + q + 1) * (q + 1) ** 2)
            assert var == want_var


def test_eulerian_numbers_and_descent_polynomial():
    assert eulerian_numbers(4) == [1, 11, 11, 1]
    assert eulerian_numbers(5) == [1, 26, 66, 26, 1]
    assert eulerian_numbers(1) == [1]
    # det(I + (x-1)K) times (n+1)! recovers the descent tallies
    for horizon in (4, 5, 6):
        poly = count_polynomial(_dense(UniformDescents(), horizon))
        fact = math.factorial(horizon)
        got = [c * fact for c in poly.coeffs]
        want = [Fraction(v) for v in eulerian_numbers(horizon)]
        assert got == want


# --- normal comparison ---


def test_normal_cdf_reference_points():
    assert abs(normal_cdf(0.0) - 0.5) < 1e-15
    assert abs(normal_cdf(1.959963984540054) - 0.975) < 1e-12
    assert abs(normal_cdf(-8.0) - 6.22096057427178e-16) < 1e-18


def test_normal_report_on_descent_law():
    poly = count_polynomial(_dense(UniformDescents(), 10))
    report = normal_approx_report(poly)
    assert report.within_bound
    assert report.unimodal
    assert report.mode_distance <= 1.0
    assert 0 < report.sup_distance < report.bound
    d = report.as_dict()
    assert d["mean"] == "9/2"
    assert d["within_bound"] is True


def test_normal_report_rejects_non_probabilities():
    with pytest.raises(ValueError):
        normal_approx_report(CountPolynomial((Fraction(1, 2), Fraction(1, 3))))


def test_eigenvalues_of_small_kernels():
    rep = numeric_eigenvalues(_dense(CarriesBaseB(2), 6))
    assert rep.all_real
    assert rep.in_unit_interval
    assert rep.max_residual < 1e-9
    rep_u = numeric_eigenvalues(_dense(UniformDescents(), 6))
    assert rep_u.all_real and rep_u.in_unit_interval


# --- samplers ---


def test_simulation_reproducibility():
    a = simulate_process(CarriesBaseB(3), 5, reps=500, seed=42)
    b = simulate_process(CarriesBaseB(3), 5, reps=500, seed=42)
    c = simulate_process(CarriesBaseB(3), 5, reps=500, seed=43)
    assert a.pattern_counts == b.pattern_counts
    assert a.pattern_counts != c.pattern_counts
    assert sum(a.pattern_counts.values()) == 500


@pytest.mark.parametrize("name", [
    CarriesBaseB(4),
    UniformDescents(),
    MallowsDescents(Fraction(1, 2)),
    IidTrials((Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))),
    AlternatingDescents(),
    GenericPoints(2),
])
def test_samplers_track_exact_law(name):
    horizon = 4
    reps = 40000
    spec = build(name, horizon)
    sim = simulate_process(name, horizon, reps=reps, seed=7)
    for p in all_patterns(horizon):
        want = float(pattern_probability(spec, p))
        got = sim.frequency(p.bits)
        se = sim.standard_error(want)
        assert abs(got - want) <= max(5 * se, 2e-3)


def test_sampler_refuses_models_without_a_story():
    with pytest.raises(ValueError):
        simulate_process(TypeBDescents(3), 4, reps=10, seed=0)


def test_uniform_sum_report_small():
    rep = uniform_sum_report(4, reps=30000, seed=5)
    assert rep.pathwise_match
    assert rep.max_abs_z() < 5
    assert rep.expected == {0: Fraction(1, 24), 1: Fraction(11, 24),
                            2: Fraction(11, 24), 3: Fraction(1, 24)}
    assert sum(rep.histogram.values()) == 30000
