import math

import pytest

from lmkit import (
    chain_decomposition,
    co_dual,
    dual_hom,
    dual_space,
    make_chain,
    make_product,
    round_trip,
    topological_closure,
    validate_axioms,
    validate_space,
)
from lmkit.duality import LnPSpace, is_dense_in, sigma_table, space_from_chains
from lmkit.errors import NotAHomomorphism
from lmkit.order import build_poset


def space(names, pairs, n, maps):
    P = build_poset(names, pairs)
    return LnPSpace(P, n, tuple(tuple(P.lookup(v) for v in row) for row in maps))


def axioms(X):
    return {v.axiom for v in validate_space(X)}


def test_dual_of_c3(c3):
    X = dual_space(c3)
    assert X.names == ("[1)", "[1/2)")
    assert X.poset.leq(0, 1) and not X.poset.leq(1, 0)
    assert X.maps == ((0, 0), (1, 1))
    assert sigma_table(c3) == (0b00, 0b10, 0b11)


def test_dual_of_c2():
    X = dual_space(make_chain(2))
    assert X.size == 1 and X.maps == ((0,),)


def test_dual_of_product_is_two_chains(c3xc3):
    X = dual_space(c3xc3)
    chains = chain_decomposition(X)
    assert len(chains) == 2
    assert all(bin(c).count("1") == 2 for c in chains)
    for c in chains:
        for i in X.indices:
            assert X.image(i, c) & ~c == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_chain_duals_are_single_chains(n):
    X = dual_space(make_chain(n))
    assert chain_decomposition(X) == [X.full]
    assert X.size == n - 1
    assert validate_space(X) == []


def test_valid_spaces_report_nothing(c3, c3xc3):
    assert validate_space(dual_space(c3)) == []
    assert validate_space(dual_space(c3xc3)) == []


def test_identity_on_two_chain_breaks_lp3():
    X = space(["p", "q"], [("p", "q")], 2, [["p", "q"]])
    assert "lP3" in axioms(X)


def test_constant_maps_break_lp10_and_the_lnp_conditions():
    X = space(["p", "q"], [("p", "q")], 3, [["p", "p"], ["p", "p"]])
    found = axioms(X)
    assert {"lP10", "lnP6", "lnP7", "lnP8"} <= found
    assert not {"lP3", "lP4", "lP5"} & found


def test_crossed_maps_break_lp4():
    X = space(["p", "q"], [("p", "q")], 3, [["q", "q"], ["p", "p"]])
    assert "lP4" in axioms(X)


def test_antichain_with_identity_maps():
    X = space(["p", "q"], [], 3, [["p", "q"], ["p", "q"]])
    assert validate_space(X) == []
    D = co_dual(X)
    assert D.size == 4
    assert validate_axioms(D) == []
    assert bin(D.boolean_mask).count("1") == 4


def test_co_dual_of_dual_c3(c3):
    D = co_dual(dual_space(c3))
    assert D.size == 3
    assert D.poset.is_chain(D.poset.full)
    assert validate_axioms(D) == []


def test_co_dual_of_point_is_c2():
    X = space(["p"], [], 2, [["p"]])
    D = co_dual(X)
    assert D.size == 2 and D.phi == ((0, 1),)


@pytest.mark.parametrize("build", [lambda: make_chain(2), lambda: make_chain(3), lambda: make_chain(5)])
def test_round_trip_chains(build):
    A = build()
    rt = round_trip(A)
    assert rt.algebra_side.size == A.size
    assert sorted(rt.sigma) == list(range(A.size))


def test_round_trip_product_counts(c3xc3):
    rt = round_trip(c3xc3)
    assert rt.algebra_side.size == 9
    assert sorted(rt.epsilon) == list(range(dual_space(c3xc3).size))


def test_dual_of_projection(c3, c3xc3):
    proj = tuple(c3.names.index(name[1:-1].split(",")[0]) for name in c3xc3.names)
    d = dual_hom(c3xc3, c3, proj)
    X = dual_space(c3xc3)
    assert [X.names[k] for k in d] == ["[(1,0))", "[(1/2,0))"]
    assert len(set(d)) == 2


def test_dual_of_identity(c3):
    assert dual_hom(c3, c3, (0, 1, 2)) == (0, 1)


def test_non_homomorphism_rejected(c3):
    with pytest.raises(NotAHomomorphism):
        dual_hom(c3, c3, ("0", "0", "1"))


def test_finite_topology_is_discrete(c3xc3):
    X = dual_space(c3xc3)
    for Y in range(1 << X.size):
        assert topological_closure(X, Y) == Y
        assert is_dense_in(X, Y, Y)
        if Y:
            assert not is_dense_in(X, Y & (Y - 1), Y)


@pytest.mark.parametrize("lengths,n", [([1, 2, 3], 4), ([4, 4, 1], 5), ([2, 2], 3), ([1], 2)])
def test_space_from_chains_is_valid(lengths, n):
    X = space_from_chains(lengths, n)
    assert validate_space(X) == []
    assert sorted(bin(c).count("1") for c in chain_decomposition(X)) == sorted(lengths)
    D = co_dual(X)
    assert validate_axioms(D) == []
    assert D.size == math.prod(k + 1 for k in lengths)


def test_product_dual_decomposition_is_cardinal_sum():
    A = make_product(make_chain(5), make_chain(5, [0, 2, 4]))
    X = dual_space(A)
    sizes = sorted(bin(c).count("1") for c in chain_decomposition(X))
    assert sizes == [2, 4]
