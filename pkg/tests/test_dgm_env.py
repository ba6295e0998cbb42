import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from truthkit import gen
from truthkit.dgm_env import (
    Diagram,
    Equation,
    Graph,
    GraphMorphism,
    all_paths,
    canonical_diagram,
    category_law_problem,
    diagram_composite,
    dgm_intent,
    dgm_satisfies,
    factor_is_functor,
    factor_through_quotient,
    isomorphic_via,
    make_category,
    make_path,
    path_category,
    quotient_category,
    translate_along,
)
from truthkit.errors import DoesNotSatisfy, IllFormedMorphism, IllFormedPath, PathSpaceInfinite, \
    ValidationError


@pytest.fixture
def fg():
    """Two parallel edges f, g: A -> B."""
    return Graph(["A", "B"], [("f", "A", "B"), ("g", "A", "B")])


def arrow_category(extra=()):
    """Objects X, Y with identities and the given morphisms X -> Y."""
    morphs = {"1X": ("X", "X"), "1Y": ("Y", "Y")}
    morphs.update({m: ("X", "Y") for m in extra})
    table = {("1X", "1X"): "1X", ("1Y", "1Y"): "1Y"}
    for m in extra:
        table[("1X", m)] = m
        table[(m, "1Y")] = m
    return make_category(["X", "Y"], morphs, {"X": "1X", "Y": "1Y"}, table)


def diagram(G, C, f_to, g_to):
    return Diagram(G, C, {"A": "X", "B": "Y"}, {"f": f_to, "g": g_to})


def eq(G, lhs, rhs, start=None):
    return Equation(make_path(G, lhs, start), make_path(G, rhs, start))


def test_path_category_examples(fg):
    assert sorted(path_category(fg).morphisms) == ["f", "g", "id:A", "id:B"]
    assert list(path_category(Graph(["A"], [])).morphisms) == ["id:A"]
    with pytest.raises(PathSpaceInfinite):
        path_category(Graph(["A"], [("loop", "A", "A")]))


def test_length_cap_is_enforced():
    G = Graph(["A", "B", "C"], [("a", "A", "B"), ("b", "B", "C")])
    with pytest.raises(PathSpaceInfinite):
        all_paths(G, length_cap=1)
    assert len(all_paths(G, length_cap=2)) == 6


def test_edge_ids_are_restricted():
    with pytest.raises(ValidationError):
        Graph(["A"], [("a;b", "A", "A")])
    with pytest.raises(ValidationError):
        Graph(["A"], [("id:x", "A", "A")])


def test_composites(fg):
    C = arrow_category(["m", "n"])
    D = diagram(fg, C, "m", "n")
    assert diagram_composite(D, make_path(fg, [], "A")) == "1X"
    assert diagram_composite(D, make_path(fg, ["f"])) == "m"
    G = Graph(["A", "B", "C"], [("a", "A", "B"), ("b", "B", "C")])
    P = path_category(G)
    D2 = Diagram(G, P, {n: n for n in G.nodes}, {"a": "a", "b": "b"})
    assert diagram_composite(D2, make_path(G, ["a", "b"])) == P.compose("a", "b") == "a;b"


def test_satisfaction_examples(fg):
    same = diagram(fg, arrow_category(["m"]), "m", "m")
    diff = diagram(fg, arrow_category(["m", "n"]), "m", "n")
    assert dgm_satisfies(same, eq(fg, ["f"], ["g"]))
    assert not dgm_satisfies(diff, eq(fg, ["f"], ["g"]))
    assert dgm_satisfies(diff, eq(fg, ["f"], ["f"]))


def test_ill_formed_paths_and_diagrams(fg):
    with pytest.raises(IllFormedPath):
        make_path(fg, ["f", "g"])
    with pytest.raises(IllFormedPath):
        eq(fg, ["f"], [], "A")
    with pytest.raises(IllFormedMorphism):
        Diagram(fg, arrow_category(["m"]), {"A": "Y", "B": "Y"}, {"f": "m", "g": "m"})


def test_translation_examples(fg):
    single = Graph(["A", "B"], [("e", "A", "B")])
    H = GraphMorphism(single, fg, {"A": "A", "B": "B"}, {"e": "f"})
    D2 = diagram(fg, arrow_category(["m", "n"]), "m", "n")
    t = translate_along(H, eq(single, ["e"], ["e"]), D2)
    assert t.equation == eq(fg, ["f"], ["f"])
    assert (t.pulled_back_satisfies, t.translated_satisfied) == (True, True)
    two = Graph(["A", "B"], [("e1", "A", "B"), ("e2", "A", "B")])
    H2 = GraphMorphism(two, fg, {"A": "A", "B": "B"}, {"e1": "f", "e2": "g"})
    t = translate_along(H2, eq(two, ["e1"], ["e2"]), D2)
    assert t.equation == eq(fg, ["f"], ["g"])
    assert (t.pulled_back_satisfies, t.translated_satisfied) == (False, False)
    with pytest.raises(IllFormedMorphism):
        GraphMorphism(single, fg, {"A": "B", "B": "B"}, {"e": "f"})


def test_quotient_examples(fg):
    Q = quotient_category(fg, [eq(fg, ["f"], ["g"])])
    assert len(Q.category.morphisms) == 3
    assert Q.canonical["f"] == Q.canonical["g"]
    Q0 = quotient_category(fg, [])
    P = path_category(fg)
    assert isomorphic_via(Q0.category, P, {m: m for m in P.morphisms})
    tri = Graph(["A", "B", "C"], [("ab", "A", "B"), ("bc", "B", "C"), ("ac", "A", "C")])
    Qt = quotient_category(tri, [eq(tri, ["ab", "bc"], ["ac"])])
    assert len(Qt.category.hom("A", "C")) == 1
    assert category_law_problem(Qt.category) is None


def test_whiskering_propagates():
    G = Graph(["A", "B", "C"], [("f", "A", "B"), ("g", "A", "B"), ("h", "B", "C")])
    Q = quotient_category(G, [eq(G, ["f"], ["g"])])
    assert Q.canonical["f;h"] == Q.canonical["g;h"]


def test_intent_examples(fg):
    same = diagram(fg, arrow_category(["m"]), "m", "m")
    diff = diagram(fg, arrow_category(["m", "n"]), "m", "n")
    reflexive = {Equation(p, p) for p in all_paths(fg)}
    assert dgm_intent(diff) == reflexive
    both = reflexive | {eq(fg, ["f"], ["g"]), eq(fg, ["g"], ["f"])}
    assert dgm_intent(same) == both


def test_factor_examples(fg):
    same = diagram(fg, arrow_category(["m"]), "m", "m")
    F = factor_through_quotient(same, [eq(fg, ["f"], ["g"])])
    assert F.class_map[F.quotient.canonical["f"]] == "m" and F.unique
    assert factor_is_functor(F, same)
    diff = diagram(fg, arrow_category(["m", "n"]), "m", "n")
    F0 = factor_through_quotient(diff, [])
    assert F0.class_map == {"id:A": "1X", "id:B": "1Y", "f": "m", "g": "n"}
    with pytest.raises(DoesNotSatisfy):
        factor_through_quotient(diff, [eq(fg, ["f"], ["g"])])


def test_category_validation():
    with pytest.raises(ValidationError):
        make_category(["X"], {"1X": ("X", "X"), "u": ("X", "X")}, {"X": "1X"},
                      {("1X", "1X"): "1X", ("1X", "u"): "u", ("u", "1X"): "u", ("u", "u"): "1X2"})


def _as_tuples(G):
    return [(p.start, p.end, p.edges) for p in all_paths(G)]


@given(st.integers(0, 10**6))
def test_quotient_matches_naive_congruence(seed):
    rng = random.Random(seed)
    G = gen.dag(rng, 4, 4)
    E = gen.equations(rng, G, 2)
    Q = quotient_category(G, E)
    pairs = [((e.lhs.start, e.lhs.end, e.lhs.edges), (e.rhs.start, e.rhs.end, e.rhs.edges)) for e in E]
    paths = _as_tuples(G)
    want = oracles.classes(paths, oracles.congruence(paths, pairs))
    by_rep = {}
    for p in all_paths(G):
        by_rep.setdefault(Q.canonical[p.id], set()).add((p.start, p.end, p.edges))
    assert sorted(map(sorted, by_rep.values())) == sorted(map(sorted, want))
    assert category_law_problem(Q.category) is None


@given(st.integers(0, 10**6))
def test_satisfaction_invariance_and_factorization(seed):
    rng = random.Random(seed)
    G2 = gen.dag(rng, 4, 4, prefix="t")
    D2 = canonical_diagram(quotient_category(G2, gen.equations(rng, G2, 2)))
    H = gen.graph_morphism_into(rng, G2)
    for e in gen.parallel_pairs(H.source)[:6]:
        t = translate_along(H, e, D2)
        assert t.pulled_back_satisfies == t.translated_satisfied
    E = gen.equations(rng, G2, 2)
    holds = all(dgm_satisfies(D2, e) for e in E)
    assert holds == set(E).issubset(dgm_intent(D2))
    try:
        F = factor_through_quotient(D2, E)
    except DoesNotSatisfy:
        assert not holds
    else:
        assert holds and F.unique and factor_is_functor(F, D2)


@given(st.integers(0, 10**6))
def test_canonical_diagram_satisfies_its_equations(seed):
    rng = random.Random(seed)
    G = gen.dag(rng, 4, 4)
    E = gen.equations(rng, G, 2)
    D = canonical_diagram(quotient_category(G, E))
    assert all(dgm_satisfies(D, e) for e in E)
    P = path_category(G)
    Q0 = quotient_category(G, [])
    assert isomorphic_via(Q0.category, P, {m: m for m in P.morphisms})
