import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import seqs_of, sequents, theories, type_maps, typesets
from truthkit.cls_core import TypeMap, TypeSet
from truthkit.errors import DanglingReference, SizeCapExceeded, TypeSetMismatch
from truthkit.theory_flow import (
    Sequent,
    Theory,
    bottom_theory,
    closure_enumerate,
    common_consequences,
    dir_flow,
    entails,
    extent_masks,
    flow_geq,
    inv_flow,
    inv_flow_contains,
    inv_flow_extent,
    join_theories,
    make_theory,
    same_closure,
    subset_satisfies,
    theory_geq,
    theory_of_extent,
)


def ext_subsets(T):
    return {T.types.subset(m) for m in extent_masks(T)}


def seq_set(T):
    return {(frozenset(q.lhs), frozenset(q.rhs)) for q in T.sequents}


def test_subset_satisfies_examples():
    q = Sequent(["p"], ["q"])
    assert subset_satisfies({"p", "q"}, q)
    assert not subset_satisfies({"p"}, q)
    assert subset_satisfies(set(), q)


def test_entails_examples(T0, Y):
    assert entails(T0, Sequent(["p"], ["p", "q"]))
    assert not entails(T0, Sequent([], ["q"]))
    assert entails(bottom_theory(Y), Sequent(["p"], ["p"]))


def test_closure_of_empty_theory_over_one_type():
    got = seq_set(closure_enumerate(bottom_theory(["p"])))
    assert got == oracles.closure(["p"], [])
    assert got == {(frozenset({"p"}), frozenset({"p"}))}


def test_closure_fixed_point_and_extensive(T0):
    c = closure_enumerate(T0)
    assert closure_enumerate(c) == c
    assert T0.sequents <= c.sequents


def test_closure_cap(monkeypatch):
    T = bottom_theory([f"y{i}" for i in range(7)])
    with pytest.raises(SizeCapExceeded):
        closure_enumerate(T)
    monkeypatch.setenv("TRUTHKIT_MAX_TYPES", "7")
    assert len(closure_enumerate(bottom_theory(["a", "b", "c", "d", "e", "f", "g"])).sequents) > 0


def test_ordering_examples(T0, bottom):
    assert theory_geq(bottom, T0)
    assert not theory_geq(T0, bottom)
    assert theory_geq(T0, T0)


def test_bottom_examples(Y, T0):
    assert ext_subsets(bottom_theory(Y)) == set(oracles.subsets(Y))
    empty = bottom_theory([])
    assert empty.sequents == frozenset() and ext_subsets(empty) == {frozenset()}


def test_join_examples(T0, Y, bottom):
    J = join_theories(T0, make_theory(Y, [(["q"], ["p"])]))
    assert ext_subsets(J) == {frozenset(), frozenset({"p", "q"})}
    assert same_closure(join_theories(T0, bottom), T0)
    assert same_closure(join_theories(T0, T0), T0)


def test_dir_flow_examples(T0, const_map, Y, bottom):
    assert dir_flow(const_map, T0) == make_theory(["r"], [(["r"], ["r"])])
    assert dir_flow(TypeMap.identity(Y), T0) == T0
    assert dir_flow(const_map, bottom) == bottom_theory(["r"])


def test_inv_flow_examples(T0, const_map, Y):
    T2 = make_theory(["r"], [([], ["r"])])
    assert Sequent([], ["p"]) in inv_flow(const_map, T2).sequents
    assert inv_flow_contains(const_map, T2, Sequent([], ["p"]))
    assert theory_geq(dir_flow(const_map, T0), T2)
    assert theory_geq(T0, inv_flow(const_map, T2))
    assert same_closure(inv_flow(TypeMap.identity(Y), T0), T0)


def test_inverse_flow_does_not_preserve_bottom(const_map):
    # a non-injective map identifies p and q, so {p} and {q} drop out
    inv = inv_flow(const_map, bottom_theory(["r"]))
    assert ext_subsets(inv) == {frozenset(), frozenset({"p", "q"})}
    assert not same_closure(inv, bottom_theory(["p", "q"]))


def test_mismatched_types_rejected(T0):
    with pytest.raises(TypeSetMismatch):
        theory_geq(T0, bottom_theory(["p"]))
    with pytest.raises(DanglingReference):
        make_theory(["p"], [(["z"], [])])


@given(theories())
def test_closure_matches_brute_force(T):
    assert seq_set(closure_enumerate(T)) == oracles.closure(list(T.types), seqs_of(T))


@given(st.data())
def test_entails_matches_brute_force(data):
    T = data.draw(theories())
    q = data.draw(sequents(T.types))
    assert entails(T, q) == ((frozenset(q.lhs), frozenset(q.rhs)) in oracles.closure(list(T.types), seqs_of(T)))


@given(st.data())
def test_geq_matches_brute_force(data):
    Y = data.draw(typesets())
    T1, T2 = data.draw(theories(Y)), data.draw(theories(Y))
    assert theory_geq(T1, T2) == oracles.geq(list(Y), seqs_of(T1), seqs_of(T2))


@given(st.data())
def test_closure_is_monotone(data):
    Y = data.draw(typesets())
    T1 = data.draw(theories(Y))
    T2 = Theory(Y, T1.sequents | data.draw(theories(Y)).sequents)
    assert closure_enumerate(T1).sequents <= closure_enumerate(T2).sequents


@given(theories())
def test_extent_of_closure_is_extent(T):
    assert extent_masks(closure_enumerate(T)) == extent_masks(T)


@given(st.data())
def test_join_is_greatest_lower_bound(data):
    Y = data.draw(typesets())
    T1, T2, U = (data.draw(theories(Y)) for _ in range(3))
    J = join_theories(T1, T2)
    assert theory_geq(T1, J) and theory_geq(T2, J)
    if theory_geq(T1, U) and theory_geq(T2, U):
        assert theory_geq(J, U)


@given(st.data())
def test_common_consequences_is_least_upper_bound(data):
    Y = data.draw(typesets())
    T1, T2, U = (data.draw(theories(Y)) for _ in range(3))
    C = common_consequences(T1, T2)
    assert theory_geq(C, T1) and theory_geq(C, T2)
    if theory_geq(U, T1) and theory_geq(U, T2):
        assert theory_geq(U, C)


@given(theories())
def test_bottom_is_above_everything(T):
    assert theory_geq(bottom_theory(T.types), T)


@given(st.data())
def test_theory_of_extent_round_trip(data):
    Y = data.draw(typesets())
    masks = data.draw(st.sets(st.integers(0, (1 << len(Y)) - 1)))
    assert extent_masks(theory_of_extent(Y, masks)) == frozenset(masks)


@given(st.data())
def test_flows_match_brute_force(data):
    f = data.draw(type_maps())
    T1 = data.draw(theories(f.source))
    T2 = data.draw(theories(f.target))
    got_dir = {(frozenset(q.lhs), frozenset(q.rhs)) for q in dir_flow(f, T1).sequents}
    assert got_dir == set(oracles.dir_flow(f.mapping, seqs_of(T1)))
    want_inv = oracles.inv_flow(f.mapping, list(f.source), list(f.target), seqs_of(T2))
    assert seq_set(inv_flow(f, T2)) == want_inv


@given(st.data())
def test_flow_adjunction(data):
    f = data.draw(type_maps())
    T1 = data.draw(theories(f.source))
    T2 = data.draw(theories(f.target))
    assert theory_geq(dir_flow(f, T1), T2) == theory_geq(T1, inv_flow(f, T2)) == flow_geq(T1, f, T2)


@given(st.data())
def test_inverse_flow_extent_is_preimages(data):
    f = data.draw(type_maps())
    T2 = data.draw(theories(f.target))
    assert extent_masks(inv_flow(f, T2)) == inv_flow_extent(f, T2)
