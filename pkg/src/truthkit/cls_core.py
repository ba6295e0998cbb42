"""Finite classifications and the maps between them.

A classification is a set of instances, a set of types and an incidence
relation. Type subsets are handled as ``frozenset`` values at the API
boundary and as bitmasks over the sorted type order internally.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from . import config
from .errors import (
    DanglingReference,
    DuplicateId,
    InvalidMorphism,
    SizeCapExceeded,
    TypeSetMismatch,
    UnknownInstance,
)

TypeSubset = frozenset


def _no_duplicates(items: Iterable[str], what: str) -> tuple[str, ...]:
    items = list(items)
    seen: set[str] = set()
    for item in items:
        if not isinstance(item, str):
            raise DuplicateId(f"{what} ids must be strings, got {item!r}", what)
        if item in seen:
            raise DuplicateId(f"duplicate {what} id {item!r}", what)
        seen.add(item)
    return tuple(sorted(items))


@dataclass(frozen=True, init=False)
class TypeSet:
    types: tuple[str, ...]

    def __init__(self, types: Iterable[str] = ()):
        object.__setattr__(self, "types", _no_duplicates(types, "type"))

    def __iter__(self) -> Iterator[str]:
        return iter(self.types)

    def __len__(self) -> int:
        return len(self.types)

    def __contains__(self, y: object) -> bool:
        return y in self.index

    @cached_property
    def index(self) -> dict[str, int]:
        return {y: i for i, y in enumerate(self.types)}

    @property
    def full_mask(self) -> int:
        return (1 << len(self.types)) - 1

    def mask(self, subset: Iterable[str]) -> int:
        m = 0
        for y in subset:
            try:
                m |= 1 << self.index[y]
            except KeyError:
                raise DanglingReference(f"type {y!r} is not declared", "types") from None
        return m

    def subset(self, mask: int) -> frozenset[str]:
        return frozenset(y for i, y in enumerate(self.types) if mask >> i & 1)

    def all_masks(self) -> range:
        config.require_subset_enumerable(len(self.types))
        return range(1 << len(self.types))

    def all_subsets(self) -> list[frozenset[str]]:
        return [self.subset(m) for m in self.all_masks()]


def subset_id(subset: Iterable[str]) -> str:
    """Canonical instance id for a type subset: ``{p,q}``, ``{}`` for empty."""
    return "{" + ",".join(sorted(subset)) + "}"


@dataclass(frozen=True, init=False)
class Classification:
    types: TypeSet
    instances: tuple[str, ...]
    incidence: frozenset[tuple[str, str]]

    def __init__(self, types: TypeSet | Iterable[str], instances: Iterable[str],
                 incidence: Iterable[tuple[str, str]]):
        if not isinstance(types, TypeSet):
            types = TypeSet(types)
        instances = _no_duplicates(instances, "instance")
        declared = set(instances)
        pairs: set[tuple[str, str]] = set()
        for pair in incidence:
            x, y = pair
            if x not in declared:
                raise DanglingReference(f"incidence names undeclared instance {x!r}", "incidence")
            if y not in types:
                raise DanglingReference(f"incidence names undeclared type {y!r}", "incidence")
            if (x, y) in pairs:
                raise DuplicateId(f"duplicate incidence pair {(x, y)!r}", "incidence")
            pairs.add((x, y))
        object.__setattr__(self, "types", types)
        object.__setattr__(self, "instances", instances)
        object.__setattr__(self, "incidence", frozenset(pairs))

    @cached_property
    def _masks(self) -> dict[str, int]:
        masks = dict.fromkeys(self.instances, 0)
        idx = self.types.index
        for x, y in self.incidence:
            masks[x] |= 1 << idx[y]
        return masks

    def tau_mask(self, x: str) -> int:
        try:
            return self._masks[x]
        except KeyError:
            raise UnknownInstance(f"unknown instance {x!r}") from None

    def tau(self, x: str) -> frozenset[str]:
        return self.types.subset(self.tau_mask(x))

    def holds(self, x: str, y: str) -> bool:
        return (x, y) in self.incidence

    def state_masks(self) -> frozenset[int]:
        """Distinct state descriptions, as masks."""
        return frozenset(self._masks.values())

    def restrict(self, keep: Iterable[str]) -> Classification:
        keep = set(keep)
        return Classification(
            self.types,
            [x for x in self.instances if x in keep],
            [(x, y) for x, y in self.incidence if x in keep],
        )


def make_classification(types: Iterable[str] | TypeSet, instances: Iterable[str],
                        incidence: Iterable[tuple[str, str]]) -> Classification:
    return Classification(types, instances, incidence)


def classification_of_masks(types: TypeSet, masks: Iterable[int]) -> Classification:
    """Classification whose instances are the given subsets, classified by membership."""
    instances = []
    incidence = []
    for m in sorted(set(masks)):
        s = types.subset(m)
        sid = subset_id(s)
        instances.append(sid)
        incidence.extend((sid, y) for y in s)
    return Classification(types, instances, incidence)


def state_description(M: Classification, x: str) -> frozenset[str]:
    return M.tau(x)


def power_classification(Y: TypeSet | Iterable[str]) -> Classification:
    if not isinstance(Y, TypeSet):
        Y = TypeSet(Y)
    return classification_of_masks(Y, Y.all_masks())


@dataclass(frozen=True, init=False)
class TypeMap:
    """Total function between two type sets."""
    source: TypeSet
    target: TypeSet
    mapping: dict[str, str]

    def __init__(self, source: TypeSet | Iterable[str], target: TypeSet | Iterable[str],
                 mapping: Mapping[str, str]):
        source = source if isinstance(source, TypeSet) else TypeSet(source)
        target = target if isinstance(target, TypeSet) else TypeSet(target)
        mapping = dict(mapping)
        for y in source:
            if y not in mapping:
                raise DanglingReference(f"type map is not defined on {y!r}", "map")
        for y, z in mapping.items():
            if y not in source:
                raise DanglingReference(f"type map names undeclared source type {y!r}", "map")
            if z not in target:
                raise DanglingReference(f"type map targets undeclared type {z!r}", "map")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "mapping", mapping)

    @staticmethod
    def identity(Y: TypeSet) -> TypeMap:
        return TypeMap(Y, Y, {y: y for y in Y})

    def __call__(self, y: str) -> str:
        return self.mapping[y]

    def image(self, subset: Iterable[str]) -> frozenset[str]:
        return frozenset(self.mapping[y] for y in subset)

    def preimage(self, subset: Iterable[str]) -> frozenset[str]:
        subset = set(subset)
        return frozenset(y for y in self.source if self.mapping[y] in subset)

    @cached_property
    def _bits(self) -> list[int]:
        tidx = self.target.index
        return [1 << tidx[self.mapping[y]] for y in self.source]

    def image_mask(self, mask: int) -> int:
        out = 0
        for i, bit in enumerate(self._bits):
            if mask >> i & 1:
                out |= bit
        return out

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for i, bit in enumerate(self._bits):
            if mask & bit:
                out |= 1 << i
        return out

    def then(self, other: TypeMap) -> TypeMap:
        """Diagrammatic composite: first self, then other."""
        if self.target != other.source:
            raise TypeSetMismatch("type maps are not composable")
        return TypeMap(self.source, other.target,
                       {y: other.mapping[self.mapping[y]] for y in self.source})


def inverse_image_classification(f: TypeMap, M2: Classification) -> Classification:
    """Reindex M2 along f: x is of type y1 iff x is of type f(y1) in M2."""
    if f.target != M2.types:
        raise TypeSetMismatch("type map target differs from the classification's types")
    return Classification(
        f.source,
        M2.instances,
        [(x, y1) for x in M2.instances for y1 in f.source if M2.holds(x, f(y1))],
    )


def reindex(f: TypeMap, h: FiberMorphism) -> FiberMorphism:
    """Reindex a fiber morphism over f's target along f; the instance map is unchanged."""
    return FiberMorphism(inverse_image_classification(f, h.source),
                         inverse_image_classification(f, h.target), h.instance_map)


def is_separated(M: Classification) -> bool:
    return len(M.state_masks()) == len(M.instances)


@dataclass(frozen=True)
class Infomorphism:
    """type_map goes forward Y1 -> Y2, instance_map goes backward X2 -> X1."""
    source: Classification
    target: Classification
    type_map: TypeMap
    instance_map: dict[str, str]

    def __post_init__(self):
        problem = infomorphism_problem(self.type_map, self.instance_map, self.source, self.target)
        if problem is not None:
            raise InvalidMorphism(problem)

    def then(self, other: Infomorphism) -> Infomorphism:
        if self.target != other.source:
            raise InvalidMorphism("infomorphisms are not composable")
        return Infomorphism(
            self.source,
            other.target,
            self.type_map.then(other.type_map),
            {x3: self.instance_map[x2] for x3, x2 in other.instance_map.items()},
        )


def infomorphism_problem(f: TypeMap, g: Mapping[str, str], A: Classification,
                         B: Classification) -> str | None:
    """Describe why (f, g): A -> B is not an infomorphism, or None if it is."""
    if f.source != A.types or f.target != B.types:
        return "type map does not run between the classifications' type sets"
    if set(g) != set(B.instances):
        return "instance map is not total on the target's instances"
    a_inst = set(A.instances)
    for xb, xa in g.items():
        if xa not in a_inst:
            return f"instance map sends {xb!r} to unknown instance {xa!r}"
        if A.tau_mask(xa) != f.preimage_mask(B.tau_mask(xb)):
            return f"fundamental condition fails at instance {xb!r}"
    return None


def is_infomorphism(f: TypeMap, g: Mapping[str, str], A: Classification,
                    B: Classification) -> bool:
    return infomorphism_problem(f, g, A, B) is None


def infomorphisms_over(f: TypeMap, A: Classification, B: Classification) -> list[dict[str, str]]:
    """All instance maps g: X_B -> X_A making (f, g): A -> B an infomorphism.

    Each instance of B can only go to an instance of A whose state description
    is the preimage of its own, so the search runs over those candidates.
    The cap is applied to the product of candidate counts.
    """
    by_state: dict[int, list[str]] = {}
    for xa in A.instances:
        by_state.setdefault(A.tau_mask(xa), []).append(xa)
    choices = []
    total = 1
    for xb in B.instances:
        cands = by_state.get(f.preimage_mask(B.tau_mask(xb)), [])
        if not cands:
            return []
        choices.append(cands)
        total *= len(cands)
        if total > config.MORPHISM_SEARCH_CAP:
            raise SizeCapExceeded(
                f"morphism search space exceeds cap {config.MORPHISM_SEARCH_CAP}")
    return [dict(zip(B.instances, combo)) for combo in itertools.product(*choices)]


@dataclass(frozen=True)
class FiberMorphism:
    """Morphism M -> M' over one type set; instance_map runs X' -> X."""
    source: Classification
    target: Classification
    instance_map: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.source.types != self.target.types:
            raise TypeSetMismatch("fiber morphism endpoints must share a type set")
        problem = infomorphism_problem(TypeMap.identity(self.source.types), self.instance_map,
                                       self.source, self.target)
        if problem is not None:
            raise InvalidMorphism(problem)

    @staticmethod
    def identity(M: Classification) -> FiberMorphism:
        return FiberMorphism(M, M, {x: x for x in M.instances})

    def then(self, other: FiberMorphism) -> FiberMorphism:
        if self.target != other.source:
            raise InvalidMorphism("fiber morphisms are not composable")
        return FiberMorphism(self.source, other.target,
                             {x3: self.instance_map[x2] for x3, x2 in other.instance_map.items()})


def is_fiber_morphism(M: Classification, M2: Classification, h: Mapping[str, str]) -> bool:
    if M.types != M2.types:
        return False
    return is_infomorphism(TypeMap.identity(M.types), h, M, M2)


def fiber_morphisms(M: Classification, M2: Classification) -> list[FiberMorphism]:
    if M.types != M2.types:
        raise TypeSetMismatch("fiber morphisms need a shared type set")
    maps = infomorphisms_over(TypeMap.identity(M.types), M, M2)
    return [FiberMorphism(M, M2, h) for h in maps]


def fiber_morphism_exists(M: Classification, M2: Classification) -> bool:
    """Cheap existence test: every state description of M2 occurs in M."""
    return M2.state_masks() <= M.state_masks()


def parallel_morphisms_agree(M: Classification, M2: Classification) -> bool:
    """True when there is at most one fiber morphism M -> M2."""
    return len(fiber_morphisms(M, M2)) <= 1


def state_map(M: Classification) -> dict[str, str]:
    """x |-> canonical id of its state description."""
    return {x: subset_id(M.tau(x)) for x in M.instances}


def tau_infomorphism(M: Classification) -> Infomorphism:
    """The infomorphism (id, tau) from the power classification into M."""
    P = power_classification(M.types)
    return Infomorphism(P, M, TypeMap.identity(M.types), state_map(M))
