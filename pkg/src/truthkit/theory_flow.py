"""Sequent theories over a finite type set.

Closure is semantic: a sequent is entailed by a theory when every type
subset satisfying the theory's generators also satisfies the sequent.
Theories are ordered by ``theory_geq``: T1 >= T2 when the closure of T1 is
contained in the closure of T2, equivalently ext(T2) is a subset of ext(T1).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from . import config
from .cls_core import TypeMap, TypeSet
from .errors import DanglingReference, TypeSetMismatch


@dataclass(frozen=True, init=False)
class Sequent:
    lhs: frozenset[str]
    rhs: frozenset[str]

    def __init__(self, lhs: Iterable[str] = (), rhs: Iterable[str] = ()):
        object.__setattr__(self, "lhs", frozenset(lhs))
        object.__setattr__(self, "rhs", frozenset(rhs))

    def sort_key(self) -> tuple:
        return (len(self.lhs), sorted(self.lhs), len(self.rhs), sorted(self.rhs))

    def __repr__(self) -> str:
        return f"Sequent({sorted(self.lhs)} |- {sorted(self.rhs)})"

    def __lt__(self, other: Sequent) -> bool:
        return self.sort_key() < other.sort_key()


def mask_satisfies(s: int, lhs: int, rhs: int) -> bool:
    return bool(lhs & ~s) or bool(s & rhs)


def subset_satisfies(S: Iterable[str], q: Sequent) -> bool:
    S = set(S)
    return not q.lhs <= S or bool(S & q.rhs)


@dataclass(frozen=True, init=False)
class Theory:
    types: TypeSet
    sequents: frozenset[Sequent]

    def __init__(self, types: TypeSet | Iterable[str], sequents: Iterable[Sequent] = ()):
        if not isinstance(types, TypeSet):
            types = TypeSet(types)
        seqs = frozenset(sequents)
        for q in seqs:
            for y in q.lhs | q.rhs:
                if y not in types:
                    raise DanglingReference(f"sequent {q!r} names undeclared type {y!r}", "sequents")
        object.__setattr__(self, "types", types)
        object.__setattr__(self, "sequents", seqs)

    def sorted_sequents(self) -> list[Sequent]:
        return sorted(self.sequents, key=Sequent.sort_key)

    @cached_property
    def mask_sequents(self) -> tuple[tuple[int, int], ...]:
        return tuple((self.types.mask(q.lhs), self.types.mask(q.rhs)) for q in self.sorted_sequents())

    @cached_property
    def oracle(self) -> ClosureOracle:
        return ClosureOracle(self)


def make_theory(types: Iterable[str] | TypeSet, pairs: Iterable[tuple[Iterable[str], Iterable[str]]]) -> Theory:
    return Theory(types, [Sequent(l, r) for l, r in pairs])


class ClosureOracle:
    """The satisfying subsets of a theory, computed once."""

    def __init__(self, theory: Theory):
        self.theory = theory
        gens = theory.mask_sequents
        self.satisfying_masks = frozenset(
            s for s in theory.types.all_masks()
            if all(mask_satisfies(s, l, r) for l, r in gens)
        )

    @property
    def satisfying_subsets(self) -> frozenset[frozenset[str]]:
        return frozenset(self.theory.types.subset(m) for m in self.satisfying_masks)

    def entails_masks(self, lhs: int, rhs: int) -> bool:
        return all(mask_satisfies(s, lhs, rhs) for s in self.satisfying_masks)

    def entails(self, q: Sequent) -> bool:
        Y = self.theory.types
        return self.entails_masks(Y.mask(q.lhs), Y.mask(q.rhs))


def _same_types(T1: Theory, T2: Theory) -> None:
    if T1.types != T2.types:
        raise TypeSetMismatch("theories are over different type sets")


def extent_masks(T: Theory) -> frozenset[int]:
    return T.oracle.satisfying_masks


def entails(T: Theory, q: Sequent) -> bool:
    return T.oracle.entails(q)


def all_sequent_masks(Y: TypeSet) -> Iterable[tuple[int, int]]:
    n = 1 << len(Y)
    return itertools.product(range(n), range(n))


def closure_enumerate(T: Theory) -> Theory:
    """Every sequent over the type set entailed by T (4^|Y| candidates)."""
    Y = T.types
    config.require_closure_enumerable(len(Y))
    ext = T.oracle.satisfying_masks
    keep = [
        Sequent(Y.subset(l), Y.subset(r))
        for l, r in all_sequent_masks(Y)
        if all(mask_satisfies(s, l, r) for s in ext)
    ]
    return Theory(Y, keep)


def theory_geq(T1: Theory, T2: Theory) -> bool:
    """T1 >= T2: every generator of T1 is entailed by T2."""
    _same_types(T1, T2)
    o2 = T2.oracle
    return all(o2.entails_masks(l, r) for l, r in T1.mask_sequents)


def same_closure(T1: Theory, T2: Theory) -> bool:
    _same_types(T1, T2)
    return extent_masks(T1) == extent_masks(T2)


def bottom_theory(Y: TypeSet | Iterable[str]) -> Theory:
    return Theory(Y, ())


def join_theories(T1: Theory, T2: Theory) -> Theory:
    """Generator union; its extent is the intersection of the two extents."""
    _same_types(T1, T2)
    return Theory(T1.types, T1.sequents | T2.sequents)


def theory_of_extent(Y: TypeSet, masks: Iterable[int]) -> Theory:
    """A theory whose satisfying subsets are exactly ``masks``.

    Each excluded subset S contributes the sequent S |- Y \\ S, which every
    subset other than S satisfies.
    """
    keep = set(masks)
    full = Y.full_mask
    return Theory(Y, [
        Sequent(Y.subset(s), Y.subset(full & ~s))
        for s in Y.all_masks() if s not in keep
    ])


def common_consequences(T1: Theory, T2: Theory) -> Theory:
    """Least theory above both in the >= order: closure is the intersection of closures."""
    _same_types(T1, T2)
    return theory_of_extent(T1.types, extent_masks(T1) | extent_masks(T2))


def dir_flow(f: TypeMap, T1: Theory) -> Theory:
    if f.source != T1.types:
        raise TypeSetMismatch("type map source differs from the theory's types")
    return Theory(f.target, [Sequent(f.image(q.lhs), f.image(q.rhs)) for q in T1.sequents])


def inv_flow_contains(f: TypeMap, T2: Theory, q: Sequent) -> bool:
    if f.target != T2.types:
        raise TypeSetMismatch("type map target differs from the theory's types")
    return entails(T2, Sequent(f.image(q.lhs), f.image(q.rhs)))


def inv_flow(f: TypeMap, T2: Theory) -> Theory:
    """All sequents over the source whose image is entailed by T2."""
    if f.target != T2.types:
        raise TypeSetMismatch("type map target differs from the theory's types")
    Y1 = f.source
    config.require_closure_enumerable(len(Y1), "inverse flow")
    o2 = T2.oracle
    keep = [
        Sequent(Y1.subset(l), Y1.subset(r))
        for l, r in all_sequent_masks(Y1)
        if o2.entails_masks(f.image_mask(l), f.image_mask(r))
    ]
    return Theory(Y1, keep)


def inv_flow_extent(f: TypeMap, T2: Theory) -> frozenset[int]:
    """Satisfying subsets of inv_flow(f, T2): the preimages of T2's satisfying subsets."""
    if f.target != T2.types:
        raise TypeSetMismatch("type map target differs from the theory's types")
    return frozenset(f.preimage_mask(s) for s in extent_masks(T2))


def flow_geq(T1: Theory, f: TypeMap, T2: Theory) -> bool:
    """T1 >= inv_flow(f, T2), decided without materializing the inverse flow."""
    if f.source != T1.types:
        raise TypeSetMismatch("type map source differs from the theory's types")
    return inv_flow_extent(f, T2) <= extent_masks(T1)
