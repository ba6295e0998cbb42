import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import classifications, seqs_of, states_of, theories, type_maps, typesets
from truthkit.cls_core import Classification, TypeMap, TypeSet, fiber_morphism_exists, \
    fiber_morphisms, is_separated, power_classification, state_map
from truthkit.errors import NotAModel, NotSound
from truthkit.theory_flow import Sequent, bottom_theory, closure_enumerate, extent_masks, \
    make_theory, same_closure, theory_geq
from truthkit.truth_core import (
    Logic,
    SoundLogic,
    bottom_logic,
    check_logic_morphism,
    extent,
    intent,
    intent_contains,
    intent_enumerate,
    is_model,
    join_logic,
    model_initial_morphism,
    nat_logic,
    satisfaction_invariance,
    satisfies,
    satisfies_via_order,
    sum_injections,
    sum_mediators,
    sum_normal_instances,
    theory_logic,
)

IDENT = {"1": "1", "2": "2", "3": "3"}


def test_intent_examples(M0, Y):
    assert intent_contains(M0, Sequent(["p", "q"], ["p"]))
    assert not intent_contains(M0, Sequent(["p"], ["q"]))
    P = power_classification(Y)
    assert intent_enumerate(P) == closure_enumerate(bottom_theory(Y))


def test_extent_examples(T0, Y):
    assert set(extent(T0).instances) == {"{}", "{q}", "{p,q}"}
    assert extent(bottom_theory(Y)) == power_classification(Y)


def test_satisfies_examples(M0, T0, T_cover, bottom):
    assert satisfies(M0, T_cover)
    assert not satisfies(M0, T0)
    assert satisfies(M0, bottom)


def test_sum_examples(M0, Y, bottom):
    assert sum_normal_instances(Logic(M0, make_theory(Y, [([], ["p"])]))).instances == ("1", "2")
    assert sum_normal_instances(Logic(M0, bottom)) == M0
    assert sum_normal_instances(Logic(M0, make_theory(Y, [([], [])]))).instances == ()


def test_nat_logic_examples(M0):
    L = nat_logic(M0)
    assert L.is_sound()
    assert sum_normal_instances(L) == M0
    empty = Classification(["p", "q"], [], [])
    assert extent_masks(intent(empty)) == frozenset()
    assert sum_normal_instances(nat_logic(empty)).instances == ()


def test_join_logic_examples(M0, T0, T_cover, bottom):
    assert join_logic(Logic(M0, T0)).is_sound()
    assert same_closure(join_logic(Logic(M0, T_cover)).theory, T_cover)
    # bottom already holds everywhere, so keeping what both entail leaves bottom
    assert same_closure(join_logic(Logic(M0, bottom)).theory, bottom)
    assert not same_closure(join_logic(Logic(M0, bottom)).theory, intent(M0))


def test_join_logic_is_the_least_sound_theory_above_both(M0, T0):
    # the join lies above both T0 and the intent, and the closure of the
    # intent alone would not lie above T0
    J = join_logic(Logic(M0, T0)).theory
    assert theory_geq(J, T0) and theory_geq(J, intent(M0))
    assert not theory_geq(intent(M0), T0)


def test_model_witness_examples(M0, T0, T_cover, bottom):
    w = model_initial_morphism(T_cover, M0)
    assert w.instance_map == {"1": "{p}", "2": "{p,q}", "3": "{q}"} and w.unique
    w = model_initial_morphism(bottom, M0)
    assert w.morphism.source == power_classification(M0.types) and w.unique
    with pytest.raises(NotAModel):
        model_initial_morphism(T0, M0)


def test_logic_morphism_examples(M0, T_cover, bottom, Y):
    ident = TypeMap.identity(Y)
    assert check_logic_morphism(ident, IDENT, Logic(M0, bottom), Logic(M0, bottom))
    # bottom is >= every theory, so an empty source theory always meets the
    # ordering and a nontrivial source over an empty target never does
    assert check_logic_morphism(ident, IDENT, Logic(M0, bottom), Logic(M0, T_cover))
    assert not check_logic_morphism(ident, IDENT, Logic(M0, T_cover), Logic(M0, bottom))


def test_satisfaction_invariance_examples(const_map, T0, Y, M0):
    with_r = Classification(["r"], ["a"], [("a", "r")])
    without_r = Classification(["r"], ["a"], [])
    assert satisfaction_invariance(const_map, with_r, T0) == (True, True)
    assert satisfaction_invariance(const_map, without_r, make_theory(Y, [([], ["p"])])) == (False, False)
    a, b = satisfaction_invariance(TypeMap.identity(Y), M0, T0)
    assert a == b


def test_sound_logic_rejects_unsound(M0, T0):
    with pytest.raises(NotSound):
        SoundLogic(M0, T0)


def test_bottom_and_theory_logics(M0, T0):
    assert bottom_logic(M0).is_sound()
    assert theory_logic(T0).structure == extent(T0)


@given(st.data())
def test_satisfaction_characterizations_agree(data):
    Y = data.draw(typesets())
    M = data.draw(classifications(Y))
    T = data.draw(theories(Y))
    brute = oracles.satisfies(states_of(M), seqs_of(T))
    assert satisfies(M, T) == brute == satisfies_via_order(M, T) == is_model(M, T)
    assert brute == (len(fiber_morphisms(extent(T), M)) == 1)


@given(classifications())
def test_intent_matches_brute_force(M):
    got = {(frozenset(q.lhs), frozenset(q.rhs)) for q in intent_enumerate(M).sequents}
    assert got == oracles.intent(list(M.types), states_of(M))


@given(theories())
def test_galois_triangle(T):
    assert closure_enumerate(intent(extent(T))) == closure_enumerate(T)
    assert is_separated(extent(T))


@given(classifications(max_instances=4))
def test_extent_of_intent_lists_the_states(M):
    E = extent(intent(M))
    assert {E.tau_mask(x) for x in E.instances} == set(M.state_masks())


@given(st.data())
def test_intent_is_antitone_along_morphisms(data):
    Y = data.draw(typesets())
    M, M2 = data.draw(classifications(Y)), data.draw(classifications(Y))
    if fiber_morphism_exists(M, M2):
        assert theory_geq(intent(M), intent(M2))


@given(st.data())
def test_sum_is_sound_and_a_coproduct(data):
    Y = data.draw(typesets(0, 2))
    L = Logic(data.draw(classifications(Y)), data.draw(theories(Y, 2)))
    S = sum_normal_instances(L)
    assert satisfies(S, L.theory)
    inclusion, via_state = sum_injections(L)
    N = data.draw(classifications(Y, 2))
    for g1 in fiber_morphisms(L.structure, N):
        for g2 in fiber_morphisms(extent(L.theory), N):
            assert len(sum_mediators(L, N, g1.instance_map, g2.instance_map)) == 1


@given(st.data())
def test_truth_is_invariant_under_change_of_notation(data):
    f = data.draw(type_maps())
    a, b = satisfaction_invariance(f, data.draw(classifications(f.target)), data.draw(theories(f.source)))
    assert a == b


@given(theories())
def test_sum_of_theory_logic_is_extent(T):
    assert sum_normal_instances(theory_logic(T)) == extent(T)


@given(st.data())
def test_join_logic_closure_is_common_consequence(data):
    Y = data.draw(typesets())
    M, T = data.draw(classifications(Y)), data.draw(theories(Y))
    J = join_logic(Logic(M, T)).theory
    want = oracles.closure(list(Y), seqs_of(T)) & oracles.intent(list(Y), states_of(M))
    got = {(frozenset(q.lhs), frozenset(q.rhs)) for q in closure_enumerate(J).sequents}
    assert got == want
