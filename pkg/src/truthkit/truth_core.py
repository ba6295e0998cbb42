"""Intent, extent, satisfaction and logics over classifications."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import config
from .cls_core import (
    Classification,
    FiberMorphism,
    TypeMap,
    classification_of_masks,
    fiber_morphisms,
    infomorphism_problem,
    inverse_image_classification,
    power_classification,
    state_map,
)
from .errors import NotAModel, NotSound, TypeSetMismatch
from .theory_flow import (
    Sequent,
    Theory,
    closure_enumerate,
    common_consequences,
    dir_flow,
    extent_masks,
    flow_geq,
    mask_satisfies,
    theory_geq,
    theory_of_extent,
)


@dataclass(frozen=True)
class Logic:
    structure: Classification
    theory: Theory

    def __post_init__(self):
        if self.structure.types != self.theory.types:
            raise TypeSetMismatch("structure and theory must share a type set")

    @property
    def types(self):
        return self.structure.types

    def is_sound(self) -> bool:
        return satisfies(self.structure, self.theory)

    def __eq__(self, other):
        # a SoundLogic is the same object as the plain Logic with equal data
        if not isinstance(other, Logic):
            return NotImplemented
        return (self.structure, self.theory) == (other.structure, other.theory)


@dataclass(frozen=True, eq=False)
class SoundLogic(Logic):
    def __post_init__(self):
        super().__post_init__()
        if not satisfies(self.structure, self.theory):
            raise NotSound("structure does not satisfy the theory")


def intent(M: Classification) -> Theory:
    """A generator set whose closure is the intent of M.

    Uses one excluding sequent per subset that is not a state description,
    so the satisfying subsets are exactly the state descriptions of M.
    """
    return theory_of_extent(M.types, M.state_masks())


def intent_contains(M: Classification, q: Sequent) -> bool:
    Y = M.types
    lhs, rhs = Y.mask(q.lhs), Y.mask(q.rhs)
    return all(mask_satisfies(s, lhs, rhs) for s in M.state_masks())


def intent_enumerate(M: Classification) -> Theory:
    return closure_enumerate(intent(M))


def extent(T: Theory) -> Classification:
    return classification_of_masks(T.types, extent_masks(T))


def satisfies(M: Classification, T: Theory) -> bool:
    if M.types != T.types:
        raise TypeSetMismatch("classification and theory must share a type set")
    gens = T.mask_sequents
    return all(mask_satisfies(s, l, r) for s in M.state_masks() for l, r in gens)


def sum_normal_instances(L: Logic) -> Classification:
    """Restrict the structure to the instances satisfying every generator."""
    M, gens = L.structure, L.theory.mask_sequents
    keep = [x for x in M.instances
            if all(mask_satisfies(M.tau_mask(x), l, r) for l, r in gens)]
    return M.restrict(keep)


def nat_logic(M: Classification) -> SoundLogic:
    return SoundLogic(M, intent(M))


def join_logic(L: Logic) -> SoundLogic:
    """(M, int(M) v T) where v keeps only what both theories entail.

    The result is always sound, and has the closure of T whenever L was sound.
    """
    return SoundLogic(L.structure, common_consequences(intent(L.structure), L.theory))


def bottom_logic(M: Classification) -> SoundLogic:
    return SoundLogic(M, Theory(M.types, ()))


def theory_logic(T: Theory) -> SoundLogic:
    """(ext T, T)."""
    return SoundLogic(extent(T), T)


@dataclass(frozen=True)
class ModelWitness:
    theory: Theory
    structure: Classification
    morphism: FiberMorphism
    unique: bool

    @property
    def instance_map(self) -> dict[str, str]:
        return self.morphism.instance_map


def model_initial_morphism(T: Theory, M: Classification) -> ModelWitness:
    if not satisfies(M, T):
        raise NotAModel("the classification does not satisfy the theory")
    E = extent(T)
    witness = FiberMorphism(E, M, state_map(M))
    found = fiber_morphisms(E, M)
    return ModelWitness(T, M, witness, len(found) == 1 and found[0] == witness)


def logic_morphism_problem(sigma: TypeMap, f: Mapping[str, str], L1: Logic, L2: Logic) -> str | None:
    if sigma.source != L1.types or sigma.target != L2.types:
        return "type map does not run between the logics' type sets"
    problem = infomorphism_problem(sigma, f, L1.structure, L2.structure)
    if problem is not None:
        return problem
    if not flow_geq(L1.theory, sigma, L2.theory):
        return "source theory is not >= the inverse flow of the target theory"
    return None


def check_logic_morphism(sigma: TypeMap, f: Mapping[str, str], L1: Logic, L2: Logic) -> bool:
    """f is a fiber morphism L1.structure -> reindexed L2.structure and T1 >= inv(sigma)(T2)."""
    return logic_morphism_problem(sigma, f, L1, L2) is None


def satisfaction_invariance(sigma: TypeMap, M2: Classification, T1: Theory) -> tuple[bool, bool]:
    return (satisfies(inverse_image_classification(sigma, M2), T1),
            satisfies(M2, dir_flow(sigma, T1)))


def extent_lax_component(sigma: TypeMap, T2: Theory) -> FiberMorphism:
    """ext(inv(sigma)(T2)) -> reindexed ext(T2), sending each S2 to its preimage."""
    config.require_subset_enumerable(len(sigma.source))
    Y1 = sigma.source
    E2 = extent(T2)
    source = classification_of_masks(Y1, {sigma.preimage_mask(s) for s in extent_masks(T2)})
    target = inverse_image_classification(sigma, E2)
    # instances of the reindexed extent keep their Y2 ids; their state is the preimage
    return FiberMorphism(source, target, state_map(target))


def initial_lax_component(sigma: TypeMap) -> FiberMorphism:
    """The power classification of Y1 into the reindexed power classification of Y2."""
    source = power_classification(sigma.source)
    target = inverse_image_classification(sigma, power_classification(sigma.target))
    return FiberMorphism(source, target, state_map(target))


def sum_injections(L: Logic) -> tuple[FiberMorphism, FiberMorphism]:
    """The two legs M -> X^T and ext(T) -> X^T of the fiber sum."""
    S = sum_normal_instances(L)
    inclusion = FiberMorphism(L.structure, S, {x: x for x in S.instances})
    via_state = FiberMorphism(extent(L.theory), S, state_map(S))
    return inclusion, via_state


def sum_mediators(L: Logic, N: Classification, g_struct: Mapping[str, str],
                  g_ext: Mapping[str, str]) -> list[dict[str, str]]:
    """All fiber morphisms X^T -> N whose composites with the two legs are the given pair.

    g_struct is the instance map of a fiber morphism M -> N and g_ext that of
    ext(T) -> N. Brute force over every fiber morphism out of the sum.
    """
    inclusion, via_state = sum_injections(L)
    out = []
    for h in fiber_morphisms(inclusion.target, N):
        leg1 = inclusion.then(h).instance_map
        leg2 = via_state.then(h).instance_map
        if leg1 == dict(g_struct) and leg2 == dict(g_ext):
            out.append(h.instance_map)
    return out


def is_model(M: Classification, T: Theory) -> bool:
    """Model-side validator: a unique initial witness from the extent exists."""
    try:
        return model_initial_morphism(T, M).unique
    except NotAModel:
        return False


def satisfies_via_order(M: Classification, T: Theory) -> bool:
    return theory_geq(T, intent(M))
