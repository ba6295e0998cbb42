"""Flattened (Grothendieck) categories over the language category of type sets.

Objects pair a type set with a fiber object; a morphism pairs a type map
with a fiber part. Composition is diagrammatic: ``compose(m1, m2)`` runs m1
first. Fiber parts are instance maps and compose contravariantly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .cls_core import (
    Classification,
    TypeMap,
    TypeSet,
    infomorphism_problem,
    power_classification,
    state_map,
    subset_id,
)
from .errors import InvalidMorphism, NonComposable, NotSound, TagMismatch
from .theory_flow import Theory, bottom_theory, flow_geq
from .truth_core import Logic, extent, intent, join_logic, satisfies

TAGS = ("Lang", "Spec", "Struc", "Log", "Snd")
Payload = Union[TypeSet, Theory, Classification, Logic]

_PAYLOAD_TYPES = {
    "Lang": TypeSet,
    "Spec": Theory,
    "Struc": Classification,
    "Log": Logic,
    "Snd": Logic,
}


@dataclass(frozen=True)
class GrothObject:
    tag: str
    payload: Payload

    def __post_init__(self):
        if self.tag not in TAGS:
            raise TagMismatch(f"unknown tag {self.tag!r}")
        if not isinstance(self.payload, _PAYLOAD_TYPES[self.tag]):
            raise TagMismatch(f"{self.tag} object needs a {_PAYLOAD_TYPES[self.tag].__name__} payload")
        if self.tag == "Snd" and not satisfies(self.payload.structure, self.payload.theory):
            raise NotSound("Snd objects must be sound logics")

    @property
    def language(self) -> TypeSet:
        p = self.payload
        return p if isinstance(p, TypeSet) else p.types

    @property
    def structure(self) -> Classification:
        p = self.payload
        return p if isinstance(p, Classification) else p.structure

    @property
    def theory(self) -> Theory:
        p = self.payload
        return p if isinstance(p, Theory) else p.theory


def has_structure(tag: str) -> bool:
    return tag in ("Struc", "Log", "Snd")


def has_theory(tag: str) -> bool:
    return tag in ("Spec", "Log", "Snd")


def morphism_problem(source: GrothObject, target: GrothObject, type_map: TypeMap,
                     instance_map: Mapping[str, str] | None) -> str | None:
    if source.tag != target.tag:
        return "endpoints carry different tags"
    tag = source.tag
    if type_map.source != source.language or type_map.target != target.language:
        return "type map does not run between the endpoint languages"
    if has_structure(tag):
        if instance_map is None:
            return f"{tag} morphisms need an instance map"
        problem = infomorphism_problem(type_map, instance_map, source.structure, target.structure)
        if problem is not None:
            return problem
    elif instance_map is not None:
        return f"{tag} morphisms carry no instance map"
    if has_theory(tag) and not flow_geq(source.theory, type_map, target.theory):
        return "source theory is not >= the inverse flow of the target theory"
    return None


@dataclass(frozen=True)
class GrothMorphism:
    source: GrothObject
    target: GrothObject
    type_map: TypeMap
    instance_map: dict[str, str] | None = None

    def __post_init__(self):
        problem = morphism_problem(self.source, self.target, self.type_map, self.instance_map)
        if problem is not None:
            if self.source.tag != self.target.tag:
                raise TagMismatch(problem)
            raise InvalidMorphism(problem)

    @property
    def tag(self) -> str:
        return self.source.tag


def is_morphism(source: GrothObject, target: GrothObject, type_map: TypeMap,
                instance_map: Mapping[str, str] | None) -> bool:
    return morphism_problem(source, target, type_map,
                            None if instance_map is None else dict(instance_map)) is None


def identity(obj: GrothObject) -> GrothMorphism:
    fiber = {x: x for x in obj.structure.instances} if has_structure(obj.tag) else None
    return GrothMorphism(obj, obj, TypeMap.identity(obj.language), fiber)


def compose(m1: GrothMorphism, m2: GrothMorphism) -> GrothMorphism:
    if m1.tag != m2.tag:
        raise TagMismatch(f"cannot compose {m1.tag} with {m2.tag}")
    if m1.target != m2.source:
        raise NonComposable("first morphism's target is not the second's source")
    fiber = None
    if has_structure(m1.tag):
        fiber = {x3: m1.instance_map[x2] for x3, x2 in m2.instance_map.items()}
    return GrothMorphism(m1.source, m2.target, m1.type_map.then(m2.type_map), fiber)


def project_object(obj: GrothObject, which: str) -> GrothObject:
    if which == "pr":
        return GrothObject("Lang", obj.language)
    if obj.tag not in ("Log", "Snd"):
        raise TagMismatch(f"{which} only applies to Log and Snd, got {obj.tag}")
    if which == "pr0":
        return GrothObject("Struc", obj.payload.structure)
    if which == "pr1":
        return GrothObject("Spec", obj.payload.theory)
    raise TagMismatch(f"unknown projection {which!r}")


def project(m: GrothMorphism, which: str) -> GrothMorphism:
    src, tgt = project_object(m.source, which), project_object(m.target, which)
    fiber = m.instance_map if has_structure(src.tag) else None
    return GrothMorphism(src, tgt, m.type_map, fiber)


def logic_object(M: Classification, T: Theory, sound: bool = False) -> GrothObject:
    return GrothObject("Snd" if sound else "Log", Logic(M, T))


# Functor lifts. Each sends a morphism to the morphism with the same data
# between the lifted endpoints; validity of that data is the content of the lift.

def nat_lift(m: GrothMorphism) -> GrothMorphism:
    """Struc -> Snd, M |-> (M, int M)."""
    if m.tag != "Struc":
        raise TagMismatch("nat lifts Struc morphisms")
    return GrothMorphism(nat_object(m.source), nat_object(m.target), m.type_map, m.instance_map)


def nat_object(obj: GrothObject) -> GrothObject:
    return logic_object(obj.structure, intent(obj.structure), sound=True)


def bottom_lift(m: GrothMorphism) -> GrothMorphism:
    """Lang -> Spec, Y |-> (Y, empty theory)."""
    if m.tag != "Lang":
        raise TagMismatch("bottom lifts Lang morphisms")
    src = GrothObject("Spec", bottom_theory(m.source.language))
    tgt = GrothObject("Spec", bottom_theory(m.target.language))
    return GrothMorphism(src, tgt, m.type_map)


def join_object(obj: GrothObject) -> GrothObject:
    return GrothObject("Snd", join_logic(obj.payload))


def join_lift(m: GrothMorphism) -> GrothMorphism:
    """Log -> Snd, (M, T) |-> (M, int M v T)."""
    if m.tag != "Log":
        raise TagMismatch("join lifts Log morphisms")
    return GrothMorphism(join_object(m.source), join_object(m.target), m.type_map, m.instance_map)


def extent_object(obj: GrothObject) -> GrothObject:
    return GrothObject("Struc", extent(obj.theory))


def extent_lift(m: GrothMorphism) -> GrothMorphism:
    """Spec -> Struc; each satisfying subset of the target goes to its preimage."""
    if m.tag != "Spec":
        raise TagMismatch("extent lifts Spec morphisms")
    src, tgt = extent_object(m.source), extent_object(m.target)
    E2 = tgt.structure
    fiber = {s2: subset_id(m.type_map.preimage(E2.tau(s2))) for s2 in E2.instances}
    return GrothMorphism(src, tgt, m.type_map, fiber)


def intent_lift(m: GrothMorphism) -> GrothMorphism:
    """Struc -> Spec, M |-> int M."""
    if m.tag != "Struc":
        raise TagMismatch("intent lifts Struc morphisms")
    return GrothMorphism(GrothObject("Spec", intent(m.source.structure)),
                         GrothObject("Spec", intent(m.target.structure)), m.type_map)


def theory_object(obj: GrothObject) -> GrothObject:
    T = obj.theory
    return logic_object(extent(T), T, sound=True)


def theory_lift(m: GrothMorphism) -> GrothMorphism:
    """Spec -> Snd, T |-> (ext T, T)."""
    e = extent_lift(m)
    return GrothMorphism(theory_object(m.source), theory_object(m.target), m.type_map, e.instance_map)


def initial_object(Y: TypeSet) -> GrothObject:
    return GrothObject("Struc", power_classification(Y))


def initial_morphism(obj: GrothObject) -> GrothMorphism:
    """The morphism from the power classification of the language: the state map."""
    M = obj.structure
    return GrothMorphism(initial_object(M.types), GrothObject("Struc", M),
                         TypeMap.identity(M.types), state_map(M))
