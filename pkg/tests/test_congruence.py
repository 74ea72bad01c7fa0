import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lmkit import (
    LM,
    THETA,
    all_congruences,
    classify_subset,
    congruence_from_open,
    dual_space,
    filter_congruence,
    generate_congruence_oracle,
    is_principal,
    join,
    make_chain,
    make_product,
    meet,
    principal_congruence,
    principal_theta_congruence,
    theta_from_subset,
)
from lmkit.checks import default_corpus
from lmkit.congruence import (
    dual_open_set,
    dual_subset,
    filter_generator,
    identity,
    nonprincipal_hypothesis_witnesses,
    principal_forms,
    principal_theta_forms,
    total,
)
from lmkit.errors import AlgebraMismatch, ComplementNotSemimodal, NotAFilter, NotSemimodal
from lmkit.order import down_set, is_convex, up_set
from oracles import brute_congruences, brute_theta_congruences, least_containing

SMALL = [e for e in default_corpus() if e.label in {"C3", "C4", "C3xC3", "C3xC3[0,2]", "LM3-chain-x-two", "C5[0,2,4]xC5[0,4]"}]


def first_collapse(A):
    """Classes {(x, y) : y fixed}, i.e. the first coordinate is forgotten."""
    return {frozenset(x for x in range(A.size) if A.names[x].endswith(f",{y})")) for y in ("0", "1/2", "1")}


def blocks(theta):
    return {frozenset(b) for b in theta.blocks()}


# -- oracle --------------------------------------------------------------------


def test_oracle_c3_collapses(c3):
    assert generate_congruence_oracle(c3, [(0, 1)], LM).is_total()


def test_oracle_empty_pairs_is_identity(c3xc3):
    assert generate_congruence_oracle(c3xc3, [], LM).is_identity()
    assert generate_congruence_oracle(c3xc3, [], THETA).is_identity()


def test_oracle_product_first_coordinate(c3xc3):
    a, b = c3xc3.el("(0,0)"), c3xc3.el("(1/2,0)")
    assert blocks(generate_congruence_oracle(c3xc3, [(a, b)], LM)) == first_collapse(c3xc3)


def test_oracle_rejects_unknown_mode(c3):
    with pytest.raises(ValueError):
        generate_congruence_oracle(c3, [], "lattice")


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.label)
def test_oracle_is_least_among_brute_congruences(entry):
    A = entry.build()
    lm, th = brute_congruences(A), brute_theta_congruences(A)
    for a in range(A.size):
        for b in range(A.size):
            assert generate_congruence_oracle(A, [(a, b)], LM).labels == least_containing(lm, a, b)
            assert generate_congruence_oracle(A, [(a, b)], THETA).labels == least_containing(th, a, b)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), max_size=4))
def test_oracle_on_pair_sets(pairs):
    A = make_product(make_chain(3), make_chain(3))
    theta = generate_congruence_oracle(A, pairs, LM)
    assert theta.is_congruence()
    assert all(theta.related(a, b) for a, b in pairs)
    # least: it lies below the join of the principal congruences of its pairs
    acc = identity(A)
    for a, b in pairs:
        acc = join(acc, generate_congruence_oracle(A, [(a, b)], LM))
    assert theta == acc


# -- subsets -------------------------------------------------------------------


def test_classify_examples(c3, c3xc3):
    X = dual_space(c3)
    assert not classify_subset(X, 0b01).semimodal
    full = classify_subset(X, X.full)
    assert full.semimodal and full.modal and full.theta_subset and full.convex
    Y = dual_space(c3xc3)
    chain = 0b0101  # [(0,1)) and [(0,1/2))
    flags = classify_subset(Y, chain)
    assert flags.semimodal and flags.modal and flags.theta_subset and flags.convex and flags.chain_union


def test_lemma_on_every_subset(c3xc3):
    X = dual_space(c3xc3)
    for Y in range(1, 1 << X.size):
        f = classify_subset(X, Y)
        assert f.semimodal == f.modal == f.chain_union
        if f.modal:
            assert classify_subset(X, X.full & ~Y).modal


def test_theta_from_subset_examples(c3, c3xc3):
    X = dual_space(c3)
    assert theta_from_subset(c3, 0).is_total()
    assert theta_from_subset(c3, X.full).is_identity()
    second_chain = 0b0101
    assert blocks(theta_from_subset(c3xc3, second_chain)) == first_collapse(c3xc3)
    with pytest.raises(NotSemimodal):
        theta_from_subset(c3, 0b01)


def test_congruence_from_open_examples(c3, c3xc3):
    X = dual_space(c3xc3)
    assert congruence_from_open(c3xc3, X.full).is_total()
    assert congruence_from_open(c3xc3, 0).is_identity()
    first_chain = 0b1010
    assert blocks(congruence_from_open(c3xc3, first_chain)) == first_collapse(c3xc3)
    with pytest.raises(ComplementNotSemimodal):
        congruence_from_open(c3, 0b01)


# -- principal congruences -----------------------------------------------------


def test_principal_c3_worked_example(c3):
    G, cong = principal_forms(c3, 0, 1)
    X = dual_space(c3)
    assert set(G.values()) == {X.full}
    assert filter_generator(c3, 0, 1) == 0
    assert principal_congruence(c3, 0, 1).is_total()
    assert all(c.is_total() for c in cong.values())


def test_principal_trivial_pair(c3xc3):
    for a in range(c3xc3.size):
        assert principal_congruence(c3xc3, a, a).is_identity()
        assert principal_theta_congruence(c3xc3, a, a).is_identity()


def test_principal_product_example(c3xc3):
    a, b = "(0,0)", "(1/2,0)"
    X = dual_space(c3xc3)
    G, _ = principal_forms(c3xc3, a, b)
    assert set(G.values()) == {0b1010}
    assert X.poset.names_of(0b1010) == ["[(1,0))", "[(1/2,0))"]
    assert c3xc3.names[filter_generator(c3xc3, a, b)] == "(0,1)"
    lm = principal_congruence(c3xc3, a, b)
    th = principal_theta_congruence(c3xc3, a, b)
    assert blocks(lm) == first_collapse(c3xc3)
    assert lm == th


def test_principal_theta_c3(c3):
    H, cong = principal_theta_forms(c3, 0, 1)
    assert set(H.values()) == {dual_space(c3).full}
    assert principal_theta_congruence(c3, 0, 1).is_total()


def test_incomparable_pair_reduces(c3xc3):
    a, b = c3xc3.el("(1,0)"), c3xc3.el("(0,1/2)")
    assert principal_congruence(c3xc3, a, b) == principal_congruence(
        c3xc3, c3xc3.meet(a, b), c3xc3.join(a, b)
    )


def test_is_principal_witnesses(c3xc3):
    X = dual_space(c3xc3)
    for theta in all_congruences(c3xc3):
        w = is_principal(c3xc3, theta)
        assert w is not None
        assert generate_congruence_oracle(c3xc3, [(w.a, w.b)]) == theta
        assert is_convex(X.poset, w.R)
        assert w.G == w.R | X.preimages(w.R)
    w = is_principal(c3xc3, identity(c3xc3))
    assert w.a == w.b


# -- lattices ------------------------------------------------------------------


def test_small_lattices(c3, c3xc3):
    assert len(all_congruences(make_chain(2))) == 2
    assert {c.num_classes for c in all_congruences(c3)} == {1, 3}
    lat = all_congruences(c3xc3)
    assert len(lat) == 4
    assert sorted(bin(Y).count("1") for Y in lat.subsets) == [0, 2, 2, 4]


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.label)
def test_lattices_match_partition_scan(entry):
    A = entry.build()
    assert {c.labels for c in all_congruences(A, LM)} == brute_congruences(A)
    assert {c.labels for c in all_congruences(A, THETA)} == brute_theta_congruences(A)


def test_lattice_above_the_cap_uses_generation(c3xc3):
    capped = all_congruences(c3xc3, LM, max_space_size=2)
    assert capped.subsets is None
    assert set(capped) == set(all_congruences(c3xc3))


def test_theta_congruences_are_congruences(c3xc3):
    con = all_congruences(c3xc3)
    for c in all_congruences(c3xc3, THETA):
        assert c in con and c.is_theta_congruence()


def test_dual_subset_round_trip(c3xc3):
    for k, theta in enumerate(all_congruences(c3xc3)):
        Y = dual_subset(c3xc3, theta)
        assert Y == all_congruences(c3xc3).subsets[k]
        assert theta_from_subset(c3xc3, Y) == theta
        assert dual_open_set(c3xc3, theta) == dual_space(c3xc3).full & ~Y


def test_hasse_diagram_is_a_diamond(c3xc3):
    assert sorted(all_congruences(c3xc3).hasse()) == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_meet_and_join(c3xc3):
    lat = all_congruences(c3xc3)
    delta, f1, f2, nabla = lat.congruences
    assert meet(nabla, f1) == f1
    assert meet(f1, f2) == delta
    assert join(f1, f2) == nabla
    assert f1 <= nabla and delta <= f1 and not f1 <= f2
    assert lat.complements(f1) == [f2]


def test_mixing_algebras_fails(c3):
    with pytest.raises(AlgebraMismatch):
        meet(identity(c3), identity(make_chain(3)))


# -- filters -------------------------------------------------------------------


def test_filter_examples(c3, c3xc3):
    assert filter_congruence(c3, c3.poset.up[0]).is_total()
    assert filter_congruence(c3, c3.poset.up[2]).is_identity()
    F = c3xc3.poset.up[c3xc3.el("(0,1)")]
    assert blocks(filter_congruence(c3xc3, F)) == first_collapse(c3xc3)
    with pytest.raises(NotAFilter):
        filter_congruence(c3, 0b001)


def test_filter_of_non_boolean_element_is_reported(c3):
    theta = filter_congruence(c3, c3.poset.up[1])
    assert theta.is_lattice_congruence()
    assert not theta.is_lm_compatible()


# -- set identities --------------------------------------------------------------


def test_preimage_identity_on_convex_sets(c3xc3):
    X = dual_space(c3xc3)
    P = X.poset
    for R in range(1 << X.size):
        if not is_convex(P, R):
            continue
        pre = X.preimages(R)
        if R & ~pre == 0:
            assert pre == down_set(P, R) | up_set(P, R)


def test_nonprincipal_hypothesis_is_vacuous(c3xc3):
    assert nonprincipal_hypothesis_witnesses(dual_space(c3xc3)) == []


def test_total_and_identity_bounds(c3xc3):
    lat = all_congruences(c3xc3)
    assert lat.congruences[0] == identity(c3xc3)
    assert lat.congruences[-1] == total(c3xc3)
