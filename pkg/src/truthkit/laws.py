"""Executable law suite: categories, functors, lax components and adjunctions.

Every law has a seeded bundle generator and a checker. A checker returns
None when the law holds on the bundle and a short message otherwise.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable

from . import config, gen
from .cls_core import (
    Classification,
    FiberMorphism,
    TypeMap,
    TypeSet,
    classification_of_masks,
    fiber_morphisms,
    infomorphisms_over,
    inverse_image_classification,
    is_infomorphism,
    power_classification,
    reindex,
    state_map,
    subset_id,
)
from .errors import NotAModel, TruthkitError, UnknownAdjunction, UnknownLaw
from .fibered_cat import (
    GrothMorphism,
    GrothObject,
    bottom_lift,
    compose,
    extent_lift,
    has_structure,
    has_theory,
    identity,
    initial_morphism,
    intent_lift,
    is_morphism,
    join_lift,
    nat_lift,
    project,
    project_object,
    theory_lift,
)
from .serialize import to_json
from .theory_flow import (
    Theory,
    bottom_theory,
    dir_flow,
    extent_masks,
    inv_flow,
    inv_flow_extent,
    same_closure,
    theory_geq,
)
from .truth_core import (
    Logic,
    extent,
    extent_lax_component,
    initial_lax_component,
    intent,
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

DEFAULT_SEED = 0
DEFAULT_MAX_TYPES = 3
DEFAULT_TRIALS = 40

Bundle = dict[str, Any]


@dataclass(frozen=True)
class LawReport:
    law_id: str
    instance: str
    passed: bool
    checked: int
    counterexample: dict | None = None

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")

    def to_json(self) -> dict:
        return {
            "law": self.law_id,
            "instance": self.instance,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class Law:
    law_id: str
    summary: str
    generate: Callable[[random.Random, int], Bundle]
    check: Callable[[Bundle], str | None]


# -- generators --------------------------------------------------------------

def _size(rng: random.Random, hi: int, lo: int = 0) -> int:
    if hi > lo and rng.random() < 0.85:
        return rng.randint(max(lo, 1), hi)
    return rng.randint(lo, hi)


def _typeset_chain(rng: random.Random, mt: int, n: int) -> list[TypeSet]:
    sets: list[TypeSet] = [TypeSet()] * n
    for i in reversed(range(n)):
        hi = mt if i == n - 1 or len(sets[i + 1]) else 0
        k = _size(rng, hi)
        sets[i] = TypeSet(f"{gen.TYPE_NAMES[j]}{i}" for j in range(k))
    return sets


def _chain(rng: random.Random, mt: int, tag: str, n: int = 4) -> Bundle:
    """n objects of one tag joined by n - 1 composable morphisms."""
    Ys = _typeset_chain(rng, mt, n)
    sigmas = [gen.type_map(rng, Ys[i], Ys[i + 1]) for i in range(n - 1)]
    Ms: list[Classification | None] = [None] * n
    fs: list[dict | None] = [None] * (n - 1)
    Ts: list[Theory | None] = [None] * n
    if has_structure(tag):
        Ms[-1] = gen.classification(rng, Ys[-1], 3, prefix=f"x{n - 1}_")
        for i in reversed(range(n - 1)):
            Ms[i], fs[i] = gen.struc_source(rng, sigmas[i], Ms[i + 1], prefix=f"x{i}_")
    if has_theory(tag):
        for i in reversed(range(n)):
            need = set() if i == n - 1 else set(inv_flow_extent(sigmas[i], Ts[i + 1]))
            if tag == "Snd":
                need |= Ms[i].state_masks()
            Ts[i] = gen.theory_above(rng, Ys[i], need)
    return {"tag": tag, "types": Ys, "maps": sigmas, "structures": Ms, "instance_maps": fs, "theories": Ts}


def _chain_objects(b: Bundle) -> list[GrothObject]:
    tag = b["tag"]
    out = []
    for Y, M, T in zip(b["types"], b["structures"], b["theories"]):
        payload: Any = {"Lang": Y, "Spec": T, "Struc": M}.get(tag)
        if tag in ("Log", "Snd"):
            payload = Logic(M, T)
        out.append(GrothObject(tag, payload))
    return out


def _chain_morphisms(b: Bundle) -> list[GrothMorphism]:
    objs = _chain_objects(b)
    return [GrothMorphism(objs[i], objs[i + 1], b["maps"][i], b["instance_maps"][i])
            for i in range(len(objs) - 1)]


def _category_laws(ms: list[GrothMorphism]) -> str | None:
    a, b, c = ms
    if compose(compose(a, b), c) != compose(a, compose(b, c)):
        return "composition is not associative"
    for m in ms:
        if compose(identity(m.source), m) != m or compose(m, identity(m.target)) != m:
            return "identity law fails"
    return None


def _gen_chain(tag: str) -> Callable[[random.Random, int], Bundle]:
    return lambda rng, mt: _chain(rng, mt, tag)


def _functor_laws(lift: Callable[[GrothMorphism], GrothMorphism], ms: list[GrothMorphism]) -> str | None:
    a, b = ms[0], ms[1]
    if lift(compose(a, b)) != compose(lift(a), lift(b)):
        return "lift does not preserve composition"
    if lift(identity(a.source)) != identity(lift(a).source):
        return "lift does not preserve identities"
    return None


def _as_tag(m: GrothMorphism, tag: str) -> GrothMorphism:
    return GrothMorphism(GrothObject(tag, m.source.payload), GrothObject(tag, m.target.payload),
                         m.type_map, m.instance_map)


def _pair(rng: random.Random, mt: int) -> tuple[TypeSet, TypeSet, TypeMap]:
    Y1, Y2 = _typeset_chain(rng, mt, 2)
    return Y1, Y2, gen.type_map(rng, Y1, Y2)


# -- category laws -------------------------------------------------------------

def check_spec_cat(b: Bundle) -> str | None:
    ms = _chain_morphisms(b)
    problem = _category_laws(ms)
    if problem:
        return problem
    # the composite ordering, decided against the literal inverse flow
    total = compose(compose(ms[0], ms[1]), ms[2])
    T1, T4 = b["theories"][0], b["theories"][-1]
    if not theory_geq(T1, inv_flow(total.type_map, T4)):
        return "composite ordering fails against the enumerated inverse flow"
    return None


def check_struc_cat(b: Bundle) -> str | None:
    ms = _chain_morphisms(b)
    problem = _category_laws(ms)
    if problem:
        return problem
    total = compose(compose(ms[0], ms[1]), ms[2])
    if not is_infomorphism(total.type_map, total.instance_map, b["structures"][0], b["structures"][-1]):
        return "composite fails the fundamental condition"
    return None


def check_log_cat(b: Bundle) -> str | None:
    ms = _chain_morphisms(b)
    problem = _category_laws(ms)
    if problem:
        return problem
    total = compose(compose(ms[0], ms[1]), ms[2])
    for which in ("pr0", "pr1"):
        if project(total, which) != compose(compose(*[project(m, which) for m in ms[:2]]), project(ms[2], which)):
            return f"{which} of the composite differs from the composite of {which}s"
    return None


def check_snd_full_sub(b: Bundle) -> str | None:
    ms = _chain_morphisms(b)
    problem = _category_laws(ms)
    if problem:
        return problem
    logs = [_as_tag(m, "Log") for m in ms]
    if _as_tag(compose(ms[0], ms[1]), "Log") != compose(logs[0], logs[1]):
        return "Snd composition differs from Log composition"
    # fullness: any Log morphism between sound logics is a Snd morphism, and conversely
    for m in ms:
        src, tgt = m.source, m.target
        for f in infomorphisms_over(m.type_map, src.structure, tgt.structure)[:4]:
            as_log = is_morphism(GrothObject("Log", src.payload), GrothObject("Log", tgt.payload), m.type_map, f)
            if as_log != is_morphism(src, tgt, m.type_map, f):
                return "Log and Snd disagree on a morphism between sound logics"
    # reindexing keeps soundness, objectwise
    sigma = b["maps"][0]
    M2, T2 = b["structures"][1], b["theories"][1]
    if not satisfies(inverse_image_classification(sigma, M2), inv_flow(sigma, T2)):
        return "reindexed sound logic is not sound"
    return None


def check_pr_functor(b: Bundle) -> str | None:
    ms = _chain_morphisms(b)
    for which in ("pr", "pr0", "pr1"):
        problem = _functor_laws(lambda m: project(m, which), ms)
        if problem:
            return f"{which}: {problem}"
        if project(identity(ms[0].source), which) != identity(project_object(ms[0].source, which)):
            return f"{which} does not send identities to identities"
    for m in ms:
        via0 = project(project(m, "pr0"), "pr")
        via1 = project(project(m, "pr1"), "pr")
        if not (via0 == project(m, "pr") == via1):
            return "language projections through pr0 and pr1 disagree"
    return None


# -- naturality and lax components -----------------------------------------------

def gen_int_naturality(rng: random.Random, mt: int) -> Bundle:
    Y1, Y2, sigma = _pair(rng, mt)
    chain = _chain(rng, mt, "Struc", n=3)
    return {"map": sigma, "structure": gen.classification(rng, Y2, 3), "chain": chain}


def check_int_naturality(b: Bundle) -> str | None:
    sigma, M2 = b["map"], b["structure"]
    lhs = extent_masks(intent(inverse_image_classification(sigma, M2)))
    rhs = extent_masks(inv_flow(sigma, intent(M2)))
    if lhs != rhs:
        return "intent of the reindexed structure differs from the inverse flow of the intent"
    return _functor_laws(intent_lift, _chain_morphisms(b["chain"]))


def gen_ext_lax(rng: random.Random, mt: int) -> Bundle:
    Y1, Y2, sigma = _pair(rng, mt)
    return {"map": sigma, "theory": gen.theory(rng, Y2), "chain": _chain(rng, mt, "Spec", n=3)}


def check_ext_lax(b: Bundle) -> str | None:
    sigma, T2 = b["map"], b["theory"]
    comp = extent_lax_component(sigma, T2)
    if comp.source != extent(inv_flow(sigma, T2)):
        return "component source is not the extent of the inverse flow"
    if comp.target != inverse_image_classification(sigma, extent(T2)):
        return "component target is not the reindexed extent"
    return _functor_laws(extent_lift, _chain_morphisms(b["chain"]))


def gen_paste(rng: random.Random, mt: int) -> Bundle:
    Y1, Y2, Y3 = _typeset_chain(rng, mt, 3)
    return {"maps": [gen.type_map(rng, Y1, Y2), gen.type_map(rng, Y2, Y3)], "theory": gen.theory(rng, Y3)}


def check_ext_lax_paste(b: Bundle) -> str | None:
    s1, s2 = b["maps"]
    T3 = b["theory"]
    first = extent_lax_component(s1, inv_flow(s2, T3))
    second = reindex(s1, extent_lax_component(s2, T3))
    if first.target != second.source:
        return "components do not paste: middle classifications differ"
    pasted = first.then(second)
    direct = extent_lax_component(s1.then(s2), T3)
    if (pasted.source, pasted.target, pasted.instance_map) != (direct.source, direct.target, direct.instance_map):
        return "pasted component differs from the component of the composite"
    return None


def check_0_lax(b: Bundle) -> str | None:
    s1, s2 = b["maps"]
    comp = initial_lax_component(s1)
    found = fiber_morphisms(comp.source, comp.target)
    if found != [comp]:
        return "initial component is not the unique morphism out of the power classification"
    pasted = comp.then(reindex(s1, initial_lax_component(s2)))
    direct = initial_lax_component(s1.then(s2))
    if (pasted.source, pasted.target, pasted.instance_map) != (direct.source, direct.target, direct.instance_map):
        return "initial components do not paste along the composite"
    return None


# -- special objects --------------------------------------------------------------

def gen_kappa(rng: random.Random, mt: int) -> Bundle:
    Y = gen.typeset(rng, 0, mt)
    return {"theory": gen.theory(rng, Y), "chain": _chain(rng, mt, "Lang", n=3)}


def check_kappa_unit(b: Bundle) -> str | None:
    T = b["theory"]
    bot = bottom_theory(T.types)
    if not theory_geq(bot, T):
        return "bottom is not >= the theory"
    GrothMorphism(GrothObject("Spec", bot), GrothObject("Spec", T), TypeMap.identity(T.types))
    return _functor_laws(bottom_lift, _chain_morphisms(b["chain"]))


def gen_omega(rng: random.Random, mt: int) -> Bundle:
    Y = gen.typeset(rng, 0, mt)
    return {"structure": gen.classification(rng, Y, 3)}


def check_omega_counit(b: Bundle) -> str | None:
    M = b["structure"]
    found = fiber_morphisms(power_classification(M.types), M)
    if len(found) != 1:
        return f"{len(found)} morphisms out of the power classification"
    if found[0].instance_map != state_map(M):
        return "the unique morphism is not the state description map"
    if initial_morphism(GrothObject("Struc", M)).instance_map != state_map(M):
        return "initial morphism disagrees with the state map"
    return None


# -- adjunctions -------------------------------------------------------------------

def gen_adj_pi(rng: random.Random, mt: int) -> Bundle:
    Y, Y2, sigma = _pair(rng, mt)
    M2 = gen.classification(rng, Y2, 3, prefix="y")
    M, f = gen.struc_source(rng, sigma, M2)
    return {"map": sigma, "structure": M, "theory": gen.sound_theory(rng, M), "target": M2,
            "instance_map": f, "chain": _chain(rng, mt, "Struc", n=3)}


def check_adj_pi(b: Bundle) -> str | None:
    M, T, M2, sigma, f = b["structure"], b["theory"], b["target"], b["map"], b["instance_map"]
    L = GrothObject("Snd", Logic(M, T))
    nat = GrothObject("Snd", nat_logic(M))
    unit = GrothMorphism(L, nat, TypeMap.identity(M.types), {x: x for x in M.instances})
    struc = GrothMorphism(GrothObject("Struc", M), GrothObject("Struc", M2), sigma, f)
    lifted = GrothMorphism(L, GrothObject("Snd", nat_logic(M2)), sigma, f)
    if compose(unit, nat_lift(struc)) != lifted:
        return "unit followed by nat of the structure morphism is not the mediating morphism"
    if project(lifted, "pr0") != struc:
        return "mediating morphism does not project to the structure morphism"
    return _functor_laws(nat_lift, _chain_morphisms(b["chain"]))


def gen_adj_lambda(rng: random.Random, mt: int) -> Bundle:
    Y, Y2, sigma = _pair(rng, mt)
    M2 = gen.classification(rng, Y2, 3, prefix="y")
    T2 = gen.sound_theory(rng, M2)
    T = gen.theory_above(rng, Y, inv_flow_extent(sigma, T2))
    return {"map": sigma, "theory": T, "target_structure": M2, "target_theory": T2}


def check_adj_lambda(b: Bundle) -> str | None:
    sigma, T, M2, T2 = b["map"], b["theory"], b["target_structure"], b["target_theory"]
    spec = GrothMorphism(GrothObject("Spec", T), GrothObject("Spec", T2), sigma)
    target = GrothObject("Snd", Logic(M2, T2))
    counit = GrothMorphism(GrothObject("Snd", theory_logic(T2)), target, TypeMap.identity(M2.types), state_map(M2))
    lifts = infomorphisms_over(sigma, extent(T), M2)
    expected = {x: subset_id(sigma.preimage(M2.tau(x))) for x in M2.instances}
    if lifts != [expected]:
        return f"{len(lifts)} lifts of the specification morphism, expected exactly one"
    if compose(theory_lift(spec), counit) != GrothMorphism(GrothObject("Snd", theory_logic(T)), target, sigma, expected):
        return "th of the specification morphism followed by the counit is not the lift"
    if project_object(GrothObject("Snd", theory_logic(T)), "pr1").payload != T:
        return "unit is not the identity"
    return None


def gen_adj_rho(rng: random.Random, mt: int) -> Bundle:
    Y2, Y, sigma = _pair(rng, mt)
    M = gen.classification(rng, Y, 3, prefix="y")
    T = gen.theory(rng, Y)
    M2, f = gen.struc_source(rng, sigma, M)
    T2 = gen.theory_above(rng, Y2, set(inv_flow_extent(sigma, T)) | M2.state_masks())
    return {"structure": M, "theory": T, "map": sigma, "source_structure": M2, "source_theory": T2,
            "instance_map": f, "chain": _chain(rng, mt, "Log", n=3)}


def check_adj_rho_join(b: Bundle) -> str | None:
    M, T, sigma, M2, T2, f = (b["structure"], b["theory"], b["map"], b["source_structure"],
                              b["source_theory"], b["instance_map"])
    res = join_logic(Logic(M, T))
    L = GrothObject("Log", Logic(M, T))
    counit = GrothMorphism(GrothObject("Log", res), L, TypeMap.identity(M.types), {x: x for x in M.instances})
    g = GrothMorphism(GrothObject("Log", Logic(M2, T2)), L, sigma, f)
    factor = GrothMorphism(GrothObject("Snd", Logic(M2, T2)), GrothObject("Snd", res), sigma, f)
    if compose(_as_tag(factor, "Log"), counit) != g:
        return "factor followed by the counit is not the given morphism"
    if satisfies(M, T) and not same_closure(res.theory, T):
        return "join of a sound logic changed its closure"
    return _functor_laws(join_lift, _chain_morphisms(b["chain"]))


def gen_adj_sum(rng: random.Random, mt: int) -> Bundle:
    Y, Y2, sigma = _pair(rng, mt)
    M2 = gen.classification(rng, Y2, 3, prefix="y")
    M, f = gen.struc_source(rng, sigma, M2, extra=2)
    T = gen.theory_above(rng, Y, {sigma.preimage_mask(s) for s in M2.state_masks()})
    return {"structure": M, "theory": T, "map": sigma, "target": M2, "instance_map": f}


def check_adj_sum_nat(b: Bundle) -> str | None:
    M, T, sigma, M2, f = b["structure"], b["theory"], b["map"], b["target"], b["instance_map"]
    L = Logic(M, T)
    S = sum_normal_instances(L)
    unit = GrothMorphism(GrothObject("Log", L), GrothObject("Log", Logic(S, intent(S))),
                         TypeMap.identity(M.types), {x: x for x in S.instances})
    given = GrothMorphism(GrothObject("Log", L), GrothObject("Log", Logic(M2, intent(M2))), sigma, f)
    factors = [h for h in infomorphisms_over(sigma, S, M2) if h == f]
    if len(factors) != 1:
        return f"{len(factors)} factorizations through the sum, expected one"
    struc = GrothMorphism(GrothObject("Struc", S), GrothObject("Struc", M2), sigma, f)
    if compose(unit, _as_tag(nat_lift(struc), "Log")) != given:
        return "unit followed by nat of the factor is not the given morphism"
    if sum_normal_instances(nat_logic(M)) != M:
        return "sum of the natural logic is not the structure"
    return None


def gen_dir_inv(rng: random.Random, mt: int) -> Bundle:
    Y1, Y2, f = _pair(rng, mt)
    return {"map": f, "source_theory": gen.theory(rng, Y1), "target_theory": gen.theory(rng, Y2)}


def check_adj_dir_inv(b: Bundle) -> str | None:
    f, T1, T2 = b["map"], b["source_theory"], b["target_theory"]
    if theory_geq(dir_flow(f, T1), T2) != theory_geq(T1, inv_flow(f, T2)):
        return "dir(T1) >= T2 and T1 >= inv(T2) disagree"
    return None


# -- truth ------------------------------------------------------------------------

def gen_invariance(rng: random.Random, mt: int) -> Bundle:
    Y1, Y2, sigma = _pair(rng, mt)
    return {"map": sigma, "structure": gen.classification(rng, Y2, 3), "theory": gen.theory(rng, Y1)}


def check_truth_invariance(b: Bundle) -> str | None:
    a, c = satisfaction_invariance(b["map"], b["structure"], b["theory"])
    return None if a == c else f"reindexed satisfaction {a} but translated satisfaction {c}"


def gen_model(rng: random.Random, mt: int) -> Bundle:
    Y = gen.typeset(rng, 0, mt)
    M = gen.classification(rng, Y, 3)
    T = gen.sound_theory(rng, M) if rng.random() < 0.5 else gen.theory(rng, Y)
    return {"structure": M, "theory": T}


def check_fact_model_initial(b: Bundle) -> str | None:
    M, T = b["structure"], b["theory"]
    sat = satisfies(M, T)
    if sat != satisfies_via_order(M, T):
        return "satisfaction and the intent ordering disagree"
    count = len(fiber_morphisms(extent(T), M))
    if sat != (count == 1):
        return f"satisfies={sat} but {count} morphisms from the extent"
    if sat:
        w = model_initial_morphism(T, M)
        if not w.unique or w.instance_map != state_map(M):
            return "witness is not the unique state description map"
    else:
        try:
            model_initial_morphism(T, M)
            return "witness produced for a non-model"
        except NotAModel:
            pass
    return None


def gen_sum_coproduct(rng: random.Random, mt: int) -> Bundle:
    Y = gen.typeset(rng, 0, min(mt, 2))
    M = gen.classification(rng, Y, 3)
    return {"structure": M, "theory": gen.theory(rng, Y, max_gens=2)}


def small_classifications(Y: TypeSet, max_instances: int = 2) -> list[Classification]:
    out = []
    for k in range(max_instances + 1):
        for masks in itertools.product(range(1 << len(Y)), repeat=k):
            out.append(gen.classification_from_masks(Y, masks, prefix="n"))
    return out


def check_sum_coproduct(b: Bundle) -> str | None:
    L = Logic(b["structure"], b["theory"])
    if not satisfies(sum_normal_instances(L), L.theory):
        return "sum does not satisfy the theory"
    sum_injections(L)
    E = extent(L.theory)
    for N in small_classifications(L.types):
        for g1 in fiber_morphisms(L.structure, N):
            for g2 in fiber_morphisms(E, N):
                n = len(sum_mediators(L, N, g1.instance_map, g2.instance_map))
                if n != 1:
                    return f"{n} mediators for a competing pair into {list(N.instances)}"
    return None


def gen_theory_only(rng: random.Random, mt: int) -> Bundle:
    Y = gen.typeset(rng, 0, mt)
    return {"theory": gen.theory(rng, Y), "structure": gen.classification(rng, Y, 3)}


def check_th_sum_ext(b: Bundle) -> str | None:
    T, M = b["theory"], b["structure"]
    if sum_normal_instances(theory_logic(T)) != extent(T):
        return "sum of the theory logic is not the extent"
    if sum_normal_instances(nat_logic(M)) != M:
        return "sum of the natural logic is not the structure"
    return None


def gen_mod(rng: random.Random, mt: int) -> Bundle:
    Y, Y2, sigma = _pair(rng, mt)
    M2 = gen.classification(rng, Y2, 3, prefix="y")
    M, f = gen.struc_source(rng, sigma, M2)
    T = gen.sound_theory(rng, M) if rng.random() < 0.7 else gen.theory(rng, Y)
    T2 = gen.sound_theory(rng, M2) if rng.random() < 0.7 else gen.theory(rng, Y2)
    return {"map": sigma, "source_structure": M, "source_theory": T, "target_structure": M2,
            "target_theory": T2, "instance_map": f}


def check_mod_iso_snd(b: Bundle) -> str | None:
    M, T, M2, T2 = b["source_structure"], b["source_theory"], b["target_structure"], b["target_theory"]
    for X, U in ((M, T), (M2, T2)):
        if is_model(X, U) != Logic(X, U).is_sound():
            return "model and sound-logic validators disagree on an object"
    mod_ok = is_model(M, T) and is_model(M2, T2) and is_morphism(
        GrothObject("Log", Logic(M, T)), GrothObject("Log", Logic(M2, T2)), b["map"], b["instance_map"])
    try:
        GrothMorphism(GrothObject("Snd", Logic(M, T)), GrothObject("Snd", Logic(M2, T2)),
                      b["map"], b["instance_map"])
        snd_ok = True
    except TruthkitError:
        snd_ok = False
    if mod_ok != snd_ok:
        return "model and sound-logic validators disagree on a morphism"
    return None


LAWS: dict[str, Law] = {law.law_id: law for law in [
    Law("spec-cat", "Spec is a category", _gen_chain("Spec"), check_spec_cat),
    Law("struc-cat", "Struc is a category", _gen_chain("Struc"), check_struc_cat),
    Law("log-cat", "Log is a category and pr0, pr1 preserve composites", _gen_chain("Log"), check_log_cat),
    Law("snd-full-sub", "Snd is the full subcategory of sound logics", _gen_chain("Snd"), check_snd_full_sub),
    Law("pr-functor", "projections are functors and commute with pr", _gen_chain("Log"), check_pr_functor),
    Law("int-naturality", "intent commutes with reindexing", gen_int_naturality, check_int_naturality),
    Law("ext-lax", "extent laxity components are morphisms", gen_ext_lax, check_ext_lax),
    Law("ext-lax-paste", "extent laxity components paste along composites", gen_paste, check_ext_lax_paste),
    Law("0-lax", "initial laxity components are unique and paste", gen_paste, check_0_lax),
    Law("kappa-unit", "bottom is >= every theory", gen_kappa, check_kappa_unit),
    Law("omega-counit", "the power classification is initial", gen_omega, check_omega_counit),
    Law("adj-pi", "pr0 is left adjoint to nat", gen_adj_pi, check_adj_pi),
    Law("adj-lambda", "th is left adjoint to pr1", gen_adj_lambda, check_adj_lambda),
    Law("adj-rho-join", "inclusion of Snd is left adjoint to the join logic", gen_adj_rho, check_adj_rho_join),
    Law("adj-sum-nat", "sum is left adjoint to nat", gen_adj_sum, check_adj_sum_nat),
    Law("adj-dir-inv", "direct flow is left adjoint to inverse flow", gen_dir_inv, check_adj_dir_inv),
    Law("truth-invariance", "satisfaction is invariant under change of notation", gen_invariance,
        check_truth_invariance),
    Law("fact-model-initial", "M satisfies T iff a unique morphism from ext(T) exists", gen_model,
        check_fact_model_initial),
    Law("sum-coproduct", "the normal instances are a fiber coproduct", gen_sum_coproduct, check_sum_coproduct),
    Law("th-sum-ext", "sum after th is ext, sum after nat is the identity", gen_theory_only, check_th_sum_ext),
    Law("mod-iso-snd", "models and sound logics are validated alike", gen_mod, check_mod_iso_snd),
]}

LAW_IDS = tuple(sorted(LAWS))
ADJUNCTION_IDS = tuple(i for i in LAW_IDS if i.startswith("adj-"))


def _get(law_id: str) -> Law:
    try:
        return LAWS[law_id]
    except KeyError:
        raise UnknownLaw(f"unknown law {law_id!r}; known: {', '.join(LAW_IDS)}") from None


def _evaluate(law: Law, bundle: Bundle) -> str | None:
    try:
        return law.check(bundle)
    except TruthkitError as e:
        return f"{type(e).__name__}: {e}"


def check_law(law_id: str, bundle: Bundle) -> LawReport:
    law = _get(law_id)
    msg = _evaluate(law, bundle)
    if msg is None:
        return LawReport(law_id, "supplied bundle", True, 1)
    return LawReport(law_id, "supplied bundle", False, 1, {"message": msg, "bundle": to_json(bundle)})


def verify_adjunction(adj_id: str, bundle: Bundle) -> LawReport:
    key = adj_id if adj_id.startswith("adj-") else f"adj-{adj_id}"
    if key not in ADJUNCTION_IDS:
        raise UnknownAdjunction(f"unknown adjunction {adj_id!r}; known: {', '.join(ADJUNCTION_IDS)}")
    return check_law(key, bundle)


def effective_max_types(max_types: int) -> int:
    # several laws materialize inverse flows, which need 4^|Y| sequents
    return max(0, min(max_types, config.closure_cap()))


def default_bundles(law_id: str, seed: int = DEFAULT_SEED, max_types: int = DEFAULT_MAX_TYPES,
                    trials: int = DEFAULT_TRIALS) -> list[Bundle]:
    law = _get(law_id)
    rng = gen.rng_for(seed, law_id)
    mt = effective_max_types(max_types)
    return [law.generate(rng, mt) for _ in range(trials)]


def run_law(law_id: str, seed: int = DEFAULT_SEED, max_types: int = DEFAULT_MAX_TYPES,
            trials: int = DEFAULT_TRIALS) -> LawReport:
    law = _get(law_id)
    rng = gen.rng_for(seed, law_id)
    mt = effective_max_types(max_types)
    instance = f"seed={seed} max_types={mt} trials={trials}"
    for i in range(trials):
        bundle = law.generate(rng, mt)
        msg = _evaluate(law, bundle)
        if msg is not None:
            return LawReport(law_id, instance, False, i + 1,
                             {"trial": i, "message": msg, "bundle": to_json(bundle)})
    return LawReport(law_id, instance, True, trials)


def run_suite(suite: str = "all", seed: int = DEFAULT_SEED, max_types: int = DEFAULT_MAX_TYPES,
              trials: int = DEFAULT_TRIALS) -> list[LawReport]:
    ids = LAW_IDS if suite == "all" else (_get(suite).law_id,)
    return [run_law(i, seed, max_types, trials) for i in sorted(ids)]
