from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from genwait.named import parse_group
from genwait.perm import popcount
from genwait.waiting import (DirichletPolynomial, TrivialGroupError, count_generating_tuples,
                             count_generating_tuples_naive, expected_wait_exact,
                             expected_wait_from_dirichlet, expected_wait_series, gen_probability,
                             gen_probability_dirichlet, minimal_generator_count)


def wait_by_markov_chain(G):
    """E[tau] from the chain on generated subgroups, solved from the top down."""
    n = G.order
    memo = {G.full_mask: Fraction(0)}

    def E(h):
        if h in memo:
            return memo[h]
        gens = G.generators_of(h)
        inside = popcount(h)
        acc = Fraction(1)
        for g in range(n):
            if not (h >> g) & 1:
                acc += Fraction(1, n) * E(G.closure(gens + (g,), h))
        memo[h] = acc / (1 - Fraction(inside, n))
        return memo[h]

    return E(1)


dirichlet_polys = st.dictionaries(st.integers(1, 30), st.fractions(-5, 5, max_denominator=7),
                                  max_size=5).map(DirichletPolynomial)


@given(dirichlet_polys, dirichlet_polys, st.integers(0, 6))
def test_dirichlet_ring_operations(a, b, k):
    assert (a * b)(k) == a(k) * b(k)
    assert (a + b)(k) == a(k) + b(k)
    assert (a - b)(k) == a(k) - b(k)
    assert (a ** 2)(k) == a(k) ** 2
    assert (a * DirichletPolynomial.one()) == a


def test_dirichlet_rejects_bad_base():
    with pytest.raises(ValueError):
        DirichletPolynomial({0: Fraction(1)})


@pytest.mark.parametrize("spec,e", [
    ("C(2)", Fraction(2)), ("C(3)", Fraction(3, 2)), ("S(3)", Fraction(29, 10)),
    ("C(2)xC(2)", Fraction(10, 3)), ("D(8)", Fraction(10, 3)),
    ("C(2)xS(3)", Fraction(1181, 330)), ("C(2)xC(2)xC(2)", Fraction(94, 21)),
])
def test_known_waiting_times(spec, e):
    assert expected_wait_exact(parse_group(spec)) == e


@pytest.mark.parametrize("spec", ["C(4)", "S(3)", "Q8", "D(8)", "A(4)", "C(2)xC(2)xC(2)",
                                  "C(3)xC(3)", "D(10)", "S(4)"])
def test_waiting_time_matches_markov_chain(spec):
    G = parse_group(spec)
    assert expected_wait_exact(G) == wait_by_markov_chain(G)


@pytest.mark.parametrize("spec", ["S(3)", "Q8", "A(4)", "S(4)", "A(5)"])
def test_dirichlet_route_agrees(spec):
    G = parse_group(spec)
    P = gen_probability_dirichlet(G)
    assert P.constant() == 1
    assert expected_wait_from_dirichlet(P) == expected_wait_exact(G)
    for k in range(6):
        assert P(k) == gen_probability(G, None, k)


@pytest.mark.parametrize("spec", ["C(2)", "S(3)", "C(2)xC(2)", "Q8", "C(6)"])
def test_tuple_counts_match_literal_enumeration(spec):
    G = parse_group(spec)
    counts = count_generating_tuples(G, 3)
    for k in range(4):
        assert counts[k] == count_generating_tuples_naive(G, k)
        assert Fraction(counts[k], G.order ** k) == gen_probability(G, None, k)


@given(st.sampled_from(["S(3)", "D(8)", "A(4)", "C(2)xS(3)", "S(4)"]), st.integers(0, 10))
def test_probability_monotone_in_k(spec, k):
    G = parse_group(spec)
    p, q = gen_probability(G, None, k), gen_probability(G, None, k + 1)
    assert 0 <= p <= q <= 1


@pytest.mark.parametrize("spec,d", [("C(5)", 1), ("S(3)", 2), ("C(2)xC(2)xC(2)", 3),
                                    ("A(5)", 2), ("C(3)xC(3)xC(3)", 3)])
def test_minimal_generator_count(spec, d):
    assert minimal_generator_count(parse_group(spec)) == d


def test_series_bracket_contains_exact():
    G = parse_group("S(4)")
    lo, hi = expected_wait_series(G, None, Fraction(1, 10 ** 6))
    e = expected_wait_exact(G)
    assert lo <= e <= hi
    assert hi - lo < Fraction(1, 10 ** 6)


def test_trivial_group_is_rejected():
    G = parse_group("S(1)")
    with pytest.raises(TrivialGroupError):
        expected_wait_exact(G)
    assert gen_probability(G, None, 0) == 1


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        gen_probability(parse_group("S(3)"), None, -1)
