from fractions import Fraction

import pytest

from genwait.bounds import (degree_scan, e_upper_bound, iso_signature, lemma_bounds, mu_exact,
                            reference_scan, scan_matches_reference, theorem_check)
from genwait.named import parse_group
from genwait.waiting import expected_wait_exact


def test_mu_values_s3():
    mu_star, mu_p = mu_exact(parse_group("S(3)"), 2)
    assert mu_star == 0
    assert mu_p == {2: Fraction(1, 2), 3: Fraction(1, 2)}
    assert e_upper_bound(parse_group("S(3)"), 2) == 3


def test_mu_values_c2():
    G = parse_group("C(2)")
    assert mu_exact(G, 3) == (0, {2: Fraction(1, 4)})
    assert e_upper_bound(G, 1) == 2
    assert e_upper_bound(G, 2) == Fraction(5, 2)
    assert e_upper_bound(G, 3) == Fraction(13, 4)


def test_type_b_contributes_to_mu_star():
    mu_star, mu_p = mu_exact(parse_group("A(5)"), 4)
    assert mu_star == Fraction(5 * 5, 4 * 5 ** 4) + Fraction(6 * 6, 5 * 6 ** 4) + Fraction(10 * 10, 9 * 10 ** 4)
    assert all(v == 0 for v in mu_p.values())


def test_t_must_be_positive():
    with pytest.raises(ValueError):
        mu_exact(parse_group("S(3)"), 0)


@pytest.mark.parametrize("spec", ["S(3)", "S(4)", "C(2)xC(2)xC(2)", "A(5)", "S(5)", "D(8)xS(3)"])
def test_census_bound_dominates(spec):
    G = parse_group(spec)
    e = expected_wait_exact(G)
    d = theorem_check(G).d
    for t in range(d + 1, d + 5):
        assert e <= e_upper_bound(G, t)


def test_lemma_bounds_hold_on_corpus(corpus):
    for entry in corpus:
        report = theorem_check(entry.group, entry.name)
        for t in (report.d + 2, report.d + 3, report.d + 5):
            for lb in lemma_bounds(entry.group, t):
                assert lb.holds is not False, (entry.name, t, lb)


def test_unsoluble_lemma_applies():
    lbs = {(lb.name, lb.prime): lb for lb in lemma_bounds(parse_group("A(5)"), 5)}
    assert lbs[("mu_star", None)].applicable
    assert lbs[("mu_star", None)].holds
    assert not lbs[("mu_star_zero", None)].applicable


def test_theorem_suite_on_corpus(corpus):
    for entry in corpus:
        report = theorem_check(entry.group, entry.name)
        assert report.passed, (entry.name, report.to_json())


def test_report_contents():
    r = theorem_check(parse_group("S(3)"), "S(3)")
    assert r.degree == 3
    assert r.check("permutation_degree").applicable is False
    assert r.check("soluble_model").holds
    assert r.check("kappa_tilde_odd_order").applicable is False
    data = r.to_json()
    assert data["e"] == "29/10" and data["passed"] is True

    odd = theorem_check(parse_group("gens[(0 1 2 3 4 5 6),(1 2 4)(3 6 5)]@7"))
    assert odd.check("kappa_tilde_odd_order").holds


def test_unsoluble_bound_check():
    r = theorem_check(parse_group("A(5)xS(3)"))
    assert r.check("unsoluble_bound").holds
    assert not r.check("soluble_model").applicable


def test_signature_separates_order_eight():
    sigs = {iso_signature(parse_group(s)) for s in ["C(8)", "C(2)xC(4)", "C(2)xC(2)xC(2)", "D(8)", "Q8"]}
    assert len(sigs) == 5


@pytest.mark.parametrize("n", [2, 3, 5])
def test_scan_matches_reference(n):
    assert scan_matches_reference(n)


def test_scan_degree_three():
    (hit,) = degree_scan(3)
    assert (hit.name, hit.e, hit.class_size) == ("Sym(3)", Fraction(29, 10), 1)


def test_scan_degree_four_finds_sym4():
    # Sym(4) itself has e = 164317/53130 > 3, which the reference list omits
    hits = {(h.name, h.e) for h in degree_scan(4)}
    assert hits == reference_scan(4) | {("Sym(4)", Fraction(164317, 53130))}
    assert expected_wait_exact(parse_group("S(4)")) == Fraction(164317, 53130)


@pytest.mark.slow
def test_scan_degree_six():
    assert scan_matches_reference(6)


def test_scan_degree_range():
    with pytest.raises(ValueError):
        degree_scan(7)
