import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lmkit import make_chain, make_product
from lmkit.errors import CycleError, NotALattice, NotDistributive, UnknownElement
from lmkit.order import (
    build_poset,
    down_set,
    increasing_sets,
    is_convex,
    is_decreasing,
    is_filter,
    is_increasing,
    is_prime_filter,
    lattice_from_poset,
    members,
    prime_filters,
    sigma,
    up_set,
)
from oracles import brute_prime_filters

DIAMOND = (["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def test_build_poset_closes_transitively():
    P = build_poset(["0", "e", "1"], [("0", "e"), ("e", "1")])
    assert P.leq(0, 2)
    assert not P.leq(2, 0)
    assert P.covers == ((0, 1), (1, 2))


def test_cycle_rejected():
    with pytest.raises(CycleError):
        build_poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_unknown_element_rejected():
    with pytest.raises(UnknownElement):
        build_poset(["a"], [("a", "z")])


def test_non_lattice_rejected():
    # two incomparable maximal elements: no top
    with pytest.raises(NotALattice):
        lattice_from_poset(build_poset(["0", "a", "b"], [("0", "a"), ("0", "b")]))


def test_pentagon_is_not_distributive():
    P = build_poset(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
    with pytest.raises(NotDistributive):
        lattice_from_poset(P)


def test_diamond_lattice_tables():
    L = lattice_from_poset(build_poset(*DIAMOND))
    assert L.join[1][2] == 3
    assert L.meet[1][2] == 0
    assert (L.bottom, L.top) == (0, 3)


def test_prime_filters_of_diamond():
    L = lattice_from_poset(build_poset(*DIAMOND))
    FP = prime_filters(L)
    assert sorted(FP.filters) == sorted([0b1010, 0b1100])
    assert set(FP.poset.names) == {"[a)", "[b)"}
    assert not is_prime_filter(L, 0b1000)  # [1) is a filter but 1 = a v b with a, b outside
    assert is_filter(L, 0b1000)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_prime_filters_of_chain(n):
    A = make_chain(n)
    assert len(prime_filters(A.lattice).filters) == n - 1


def test_prime_filters_match_subset_scan(c3xc3):
    found = {frozenset(members(F)) for F in prime_filters(c3xc3.lattice).filters}
    assert found == set(brute_prime_filters(c3xc3))


def test_sigma_is_a_lattice_embedding(c3xc3):
    L = c3xc3.lattice
    FP = prime_filters(L)
    s = [sigma(L, a, FP) for a in range(L.size)]
    assert len(set(s)) == L.size
    for a in range(L.size):
        for b in range(L.size):
            assert s[L.join[a][b]] == s[a] | s[b]
            assert s[L.meet[a][b]] == s[a] & s[b]
    assert len(increasing_sets(FP.poset)) == L.size


subsets = st.integers(min_value=0, max_value=(1 << 9) - 1)


@settings(max_examples=200, deadline=None)
@given(subsets, subsets)
def test_up_and_down_are_closure_operators(Y, Z):
    P = make_product(make_chain(3), make_chain(3)).poset
    for close in (up_set, down_set):
        assert Y & ~close(P, Y) == 0
        assert close(P, close(P, Y)) == close(P, Y)
        if Y & ~Z == 0:
            assert close(P, Y) & ~close(P, Z) == 0
    assert is_increasing(P, up_set(P, Y))
    assert is_decreasing(P, down_set(P, Y))


@settings(max_examples=200, deadline=None)
@given(subsets, subsets)
def test_difference_of_up_sets_is_convex(Y, Z):
    P = make_product(make_chain(3), make_chain(3)).poset
    U = up_set(P, Y | Z)
    V = up_set(P, Z)
    assert is_convex(P, U & ~V)


def test_convexity_detects_gaps():
    P = make_chain(4).poset
    assert not is_convex(P, 0b1001)
    assert is_convex(P, 0b0110)
