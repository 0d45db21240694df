from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from genwait.montecarlo import (CounterRNG, SimulationResult, estimate_e, minimum_respected,
                                sample_tau, survival_checks)
from genwait.named import parse_group
from genwait.waiting import TrivialGroupError, expected_wait_exact


def test_same_seed_same_result():
    G = parse_group("S(4)")
    a = estimate_e(G, 2000, 5)
    b = estimate_e(G, 2000, 5, chunk=77)
    assert a.histogram == b.histogram
    assert estimate_e(G, 2000, 6).histogram != a.histogram


@given(st.integers(1, 10 ** 6), st.integers(0, 2 ** 64 - 1))
def test_below_is_in_range(n, seed):
    rng = CounterRNG(seed)
    for _ in range(5):
        assert 0 <= rng.below(n) < n


def test_cyclic_prime_order_is_geometric():
    # tau for C_p is 1 + Geometric(1/p) failures on the identity
    G = parse_group("C(5)")
    res = estimate_e(G, 40000, 3)
    assert abs(float(res.mean) - 1.25) < 4 * res.std_error
    assert abs(float(res.survival(1)) - 0.2) < 0.01


@pytest.mark.parametrize("spec", ["S(3)", "Q8", "A(4)"])
def test_mean_within_four_standard_errors(spec):
    G = parse_group(spec)
    res = estimate_e(G, 20000, 11)
    assert abs(float(res.mean - expected_wait_exact(G))) <= 4 * res.std_error
    assert all(c.ok for c in survival_checks(G, res))
    assert minimum_respected(G, res)


def test_python_sampler_matches_batch():
    G = parse_group("D(8)")
    res = estimate_e(G, 50, 21)
    draws = [sample_tau(G, CounterRNG(21, t)) for t in range(50)]
    assert sum(draws) == res.total


def test_result_statistics():
    r = SimulationResult(4, 0, 10, 26, {2: 2, 3: 2})
    assert r.mean == Fraction(5, 2)
    assert r.survival(2) == Fraction(1, 2)
    assert r.std_error == pytest.approx((1 / 3 / 4) ** 0.5)
    assert r.to_json()["histogram"] == {"2": 2, "3": 2}


def test_bad_arguments():
    G = parse_group("S(3)")
    with pytest.raises(ValueError):
        estimate_e(G, 0, 1)
    with pytest.raises(ValueError):
        estimate_e(G, 10, -1)
    with pytest.raises(TrivialGroupError):
        estimate_e(parse_group("S(1)"), 10, 1)
    with pytest.raises(ValueError):
        CounterRNG(2 ** 64)
