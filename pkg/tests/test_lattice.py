import itertools

import pytest
from hypothesis import given, strategies as st

from genwait.lattice import all_subgroups, frattini_mask, maximal_census, mobius
from genwait.named import parse_group
from genwait.perm import popcount


def subgroups_by_closure(G):
    """Closures of all subsets of size <= 3; complete for the small groups used below."""
    out = {1}
    for r in (1, 2, 3):
        for tup in itertools.combinations(range(1, G.order), r):
            out.add(G.closure(tup))
    return out


@pytest.mark.parametrize("spec,count", [("S(3)", 6), ("C(2)xC(2)", 5), ("S(4)", 30),
                                        ("A(5)", 59), ("S(5)", 156), ("D(8)", 10), ("Q8", 6),
                                        ("C(2)xC(2)xC(2)", 16), ("C(3)xC(3)", 6)])
def test_subgroup_counts(spec, count):
    assert len(all_subgroups(parse_group(spec))) == count


@pytest.mark.parametrize("spec", ["S(3)", "D(8)", "Q8", "C(2)xC(2)xC(2)", "A(4)", "C(6)"])
def test_lattice_matches_subset_closures(spec):
    G = parse_group(spec)
    assert set(all_subgroups(G).subgroups) == subgroups_by_closure(G)


@pytest.mark.parametrize("spec,mu1", [("S(3)", 3), ("C(2)xC(2)", 2), ("C(2)xC(2)xC(2)", -8),
                                      ("S(4)", -12), ("A(5)", -60), ("C(6)", 1), ("C(4)", 0),
                                      ("A(4)", 4)])
def test_mobius_at_trivial_subgroup(spec, mu1):
    L = all_subgroups(parse_group(spec))
    assert L.mobius.get(1, 0) == mu1


@pytest.mark.parametrize("spec", ["S(4)", "A(5)", "D(12)", "Q8", "C(3)xS(3)"])
def test_mobius_defining_relation(spec):
    L = all_subgroups(parse_group(spec))
    mu = L.mobius
    for H in L.subgroups:
        total = sum(mu.get(K, 0) for K in L.interval_above(H))
        assert total == (1 if H == L.top else 0)


@given(st.sampled_from(["S(4)", "D(8)", "C(2)xS(3)"]), st.data())
def test_interval_mobius_is_relative(spec, data):
    G = parse_group(spec)
    L = all_subgroups(G)
    top = data.draw(st.sampled_from(L.subgroups))
    mu = mobius(L, top=top)
    assert mu[top] == 1
    for H in L.below(top):
        total = sum(mu.get(K, 0) for K in L.below(top) if K & H == H)
        assert total == (1 if H == top else 0)


def test_s4_census():
    c = maximal_census(parse_group("S(4)"))
    assert c.mA == {2: 1, 3: 3, 4: 4}
    assert c.mB == {}


def test_a5_census_all_type_b():
    c = maximal_census(parse_group("A(5)"))
    assert c.mB == {5: 5, 6: 6, 10: 10}
    assert c.mA == {}


def test_s5_census():
    c = maximal_census(parse_group("S(5)"))
    assert c.mA == {2: 1}
    assert c.mB == {5: 5, 6: 6, 10: 10}


@pytest.mark.parametrize("spec,size", [("S(4)", 1), ("D(8)", 2), ("Q8", 2), ("C(9)", 3),
                                       ("C(2)xC(2)", 1)])
def test_frattini_order(spec, size):
    assert popcount(frattini_mask(parse_group(spec))) == size


def test_lattice_json_shape():
    data = all_subgroups(parse_group("S(3)")).to_json()
    assert data["subgroup_count"] == 6
    assert [r["order"] for r in data["subgroups"]] == [1, 2, 2, 2, 3, 6]
    assert data["census"]["2"] == {"m": 1, "A": 1, "B": 0}
