"""Hypothesis strategies for small classifications, theories and maps."""
from __future__ import annotations

from hypothesis import strategies as st

from truthkit.cls_core import Classification, TypeMap, TypeSet
from truthkit.theory_flow import Sequent, Theory

NAMES = "pqrs"


def typesets(min_size=0, max_size=3, prefix=""):
    return st.integers(min_size, max_size).map(lambda n: TypeSet(prefix + NAMES[i] for i in range(n)))


def subsets_of(Y):
    return st.sets(st.sampled_from(list(Y))) if len(Y) else st.just(set())


@st.composite
def classifications(draw, Y=None, max_instances=3):
    if Y is None:
        Y = draw(typesets())
    k = draw(st.integers(0, max_instances))
    states = [draw(subsets_of(Y)) for _ in range(k)]
    insts = [f"x{i}" for i in range(k)]
    return Classification(Y, insts, [(x, y) for x, S in zip(insts, states) for y in S])


@st.composite
def sequents(draw, Y):
    return Sequent(draw(subsets_of(Y)), draw(subsets_of(Y)))


@st.composite
def theories(draw, Y=None, max_gens=3):
    if Y is None:
        Y = draw(typesets())
    return Theory(Y, draw(st.lists(sequents(Y), max_size=max_gens)))


@st.composite
def type_maps(draw, Y1=None, Y2=None):
    if Y2 is None:
        Y2 = draw(typesets(1, 3, prefix="t"))
    if Y1 is None:
        Y1 = draw(typesets(0, 3, prefix="s"))
    if len(Y2) == 0:
        Y1 = TypeSet()
    return TypeMap(Y1, Y2, {y: draw(st.sampled_from(list(Y2))) for y in Y1})


def seqs_of(T):
    return [(frozenset(q.lhs), frozenset(q.rhs)) for q in T.sequents]


def states_of(M):
    return [frozenset(M.tau(x)) for x in M.instances]


def taus_of(M):
    return {x: frozenset(M.tau(x)) for x in M.instances}
