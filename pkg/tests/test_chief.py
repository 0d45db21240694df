import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from genwait.chief import (NonSolubleInput, alpha_beta_stats, chief_series, confronti_check,
                           factor_classes, factor_module, gaschutz_dirichlet,
                           gaschutz_probability, intertwiner_dim, is_complemented, rank_mod_p,
                           stime_clauses)
from genwait.named import parse_group
from genwait.waiting import expected_wait_exact, expected_wait_from_dirichlet, gen_probability


def factor_orders(G, choice="smallest"):
    return Counter(f.order for f in chief_series(G, choice).factors)


@pytest.mark.parametrize("spec,orders", [
    ("S(4)", {4: 1, 3: 1, 2: 1}), ("D(8)", {2: 3}), ("A(5)", {60: 1}), ("S(5)", {60: 1, 2: 1}),
    ("A(4)", {4: 1, 3: 1}), ("C(2)xA(5)", {60: 1, 2: 1}), ("C(9)", {3: 2}),
])
def test_chief_factor_orders(spec, orders):
    assert factor_orders(parse_group(spec)) == orders


def test_series_choices_agree(corpus):
    # chief factors are unique up to order, and so are the complemented counts
    for entry in corpus:
        G = entry.group
        small, large = chief_series(G, "smallest"), chief_series(G, "largest")
        assert Counter(f.order for f in small.factors) == Counter(f.order for f in large.factors)
        a = alpha_beta_stats(G, small)
        b = alpha_beta_stats(G, large)
        assert (a.alpha_pt, a.beta) == (b.alpha_pt, b.beta), entry.name


def test_series_terms_are_normal_chain():
    G = parse_group("D(8)xS(3)")
    s = chief_series(G)
    assert s.terms[0] == 1 and s.terms[-1] == G.full_mask
    for lo, hi in zip(s.terms, s.terms[1:]):
        assert hi & lo == lo and hi != lo
        assert G.is_normal_mask(hi)


def test_s4_stats():
    st_ = alpha_beta_stats(parse_group("S(4)"))
    assert st_.alpha_pt == {(2, 2): 1, (2, 1): 1, (3, 1): 1}
    assert st_.beta == 0
    assert st_.d_p == {2: 2, 3: 1}
    assert st_.d == 2


def test_frattini_factor_not_complemented():
    G = parse_group("D(8)")
    s = chief_series(G)
    assert not is_complemented(G, 0, s)
    assert alpha_beta_stats(G).alpha(2) == 2


def test_unsoluble_stats():
    st_ = alpha_beta_stats(parse_group("A(5)xS(3)"))
    assert st_.beta == 1
    assert st_.alpha(3) == 1 and st_.alpha(2) == 1


def test_stime_clauses_hold_on_corpus(corpus):
    for entry in corpus:
        clauses = stime_clauses(alpha_beta_stats(entry.group))
        assert all(clauses.values()), (entry.name, clauses)


@pytest.mark.parametrize("spec", ["S(3)", "S(4)", "D(8)", "Q8", "A(4)", "C(2)xC(2)xC(2)",
                                  "H([2,3,5],1)", "C(3)xS(3)", "gens[(0 3 4 5 1 7 6 2),(0 3 6)(1 7 4)]@8"])
def test_product_formula_matches_mobius(spec):
    G = parse_group(spec)
    for k in range(1, 7):
        assert gaschutz_probability(G, k) == gen_probability(G, None, k)
    assert expected_wait_from_dirichlet(gaschutz_dirichlet(G)) == expected_wait_exact(G)


def test_product_formula_refuses_unsoluble():
    with pytest.raises(NonSolubleInput):
        factor_classes(parse_group("A(5)"))


def test_s4_factor_classes():
    classes = {(c.p, c.t): c for c in factor_classes(parse_group("S(4)"))}
    assert classes[(2, 1)].zeta == 0 and classes[(2, 1)].q == 2
    assert classes[(2, 2)].zeta == 1 and classes[(2, 2)].q == 2 and classes[(2, 2)].r == 2
    assert classes[(3, 1)].zeta == 1


def test_repeated_trivial_factor_class():
    (c,) = factor_classes(parse_group("C(2)xC(2)xC(2)"))
    assert (c.delta, c.zeta, c.q, c.r) == (3, 0, 2, 1)


def test_field_extension_endomorphisms():
    # A4's normal Klein group is irreducible with End = F_4
    G = parse_group("A(4)")
    (V,) = [c for c in factor_classes(G) if c.t == 2]
    assert (V.q, V.r) == (4, 1)


def brute_intertwiners(m1, m2, p):
    t1, t2 = len(m1[0]), len(m2[0])
    count = 0
    for entries in itertools.product(range(p), repeat=t1 * t2):
        X = [entries[i * t1:(i + 1) * t1] for i in range(t2)]
        ok = True
        for A, B in zip(m1, m2):
            XA = [[sum(X[i][k] * A[k][j] for k in range(t1)) % p for j in range(t1)] for i in range(t2)]
            BX = [[sum(B[i][k] * X[k][j] for k in range(t2)) % p for j in range(t1)] for i in range(t2)]
            if XA != BX:
                ok = False
                break
        count += ok
    return count


@pytest.mark.parametrize("spec", ["S(4)", "A(4)", "C(2)xS(3)", "D(8)xS(3)", "C(3)xS(3)",
                                  "C(3)xC(3)"])
def test_linear_algebra_matches_enumeration(spec):
    G = parse_group(spec)
    s = chief_series(G)
    mods = [factor_module(G, f, i) for i, f in enumerate(s.factors) if f.complemented]
    for a in mods:
        for b in mods:
            if a.p != b.p:
                continue
            dim = intertwiner_dim(a.matrices, b.matrices, a.p)
            assert a.p ** dim == brute_intertwiners(a.matrices, b.matrices, a.p)


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(1, 3), st.data())
def test_rank_counts_row_span(p, nrows, ncols, data):
    rows = [[data.draw(st.integers(0, p - 1)) for _ in range(ncols)] for _ in range(nrows)]
    span = {tuple(sum(c * r[j] for c, r in zip(coef, rows)) % p for j in range(ncols))
            for coef in itertools.product(range(p), repeat=nrows)}
    assert len(span) == p ** rank_mod_p(rows, p)


def test_confronti_s4():
    G = parse_group("S(4)")
    assert confronti_check(G, 2, 2, 3) == {"1": True, "2": True, "3": None, "4": True}


def test_confronti_on_soluble_corpus(soluble_corpus):
    for entry in soluble_corpus:
        G = entry.group
        st_ = alpha_beta_stats(G)
        for p in G.primes:
            for k in range(1, st_.d + 4):
                res = confronti_check(G, p, st_.d, k)
                assert res["1"] is True
                assert all(v is not False for v in res.values()), (entry.name, p, k, res)
