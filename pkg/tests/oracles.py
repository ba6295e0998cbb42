"""Naive set-based reference implementations used as test oracles.

Everything here works on plain Python sets and dicts and shares no code
with the package, so agreement is evidence rather than tautology.
"""
from __future__ import annotations

import itertools


def subsets(types):
    types = sorted(types)
    return [frozenset(c) for k in range(len(types) + 1) for c in itertools.combinations(types, k)]


def all_sequents(types):
    subs = subsets(types)
    return [(a, b) for a in subs for b in subs]


def holds(state, seq):
    lhs, rhs = seq
    return not lhs <= state or bool(state & rhs)


def models(types, seqs):
    return {S for S in subsets(types) if all(holds(S, q) for q in seqs)}


def closure(types, seqs):
    ext = models(types, seqs)
    return {q for q in all_sequents(types) if all(holds(S, q) for S in ext)}


def geq(types, seqs1, seqs2):
    c2 = closure(types, seqs2)
    return all((frozenset(a), frozenset(b)) in c2 for a, b in seqs1)


def intent(types, states):
    return {q for q in all_sequents(types) if all(holds(S, q) for S in states)}


def satisfies(states, seqs):
    return all(holds(S, q) for S in states for q in seqs)


def image(f, s):
    return frozenset(f[y] for y in s)


def preimage(f, s):
    return frozenset(y for y in f if f[y] in s)


def dir_flow(f, seqs):
    return [(image(f, a), image(f, b)) for a, b in seqs]


def inv_flow(f, types1, types2, seqs2):
    c2 = closure(types2, seqs2)
    return {(a, b) for a, b in all_sequents(types1) if (image(f, a), image(f, b)) in c2}


def all_functions(dom, cod):
    dom, cod = list(dom), list(cod)
    for combo in itertools.product(cod, repeat=len(dom)):
        yield dict(zip(dom, combo))


def infomorphisms(f, tau_a, tau_b):
    """All g: X_B -> X_A with tau_a(g(b)) = f^-1(tau_b(b)); tau_* map instance -> frozenset."""
    return [g for g in all_functions(tau_b, tau_a)
            if all(tau_a[g[b]] == preimage(f, tau_b[b]) for b in tau_b)]


def fiber_morphisms(types, tau_src, tau_tgt):
    return infomorphisms({y: y for y in types}, tau_src, tau_tgt)


def subset_name(s):
    return "{" + ",".join(sorted(s)) + "}"


def congruence(paths, pairs):
    """Least congruence on paths (tuples (start, end, edges)) containing pairs; naive fixpoint."""
    rel = {(p, p) for p in paths} | set(pairs) | {(q, p) for p, q in pairs}
    while True:
        new = set(rel)
        for p, q in rel:
            for u in paths:
                if u[1] == p[0]:
                    new.add(((u[0], p[1], u[2] + p[2]), (u[0], q[1], u[2] + q[2])))
                if p[1] == u[0]:
                    new.add(((p[0], u[1], p[2] + u[2]), (q[0], u[1], q[2] + u[2])))
        for p, q in rel:
            for r, s in rel:
                if q == r:
                    new.add((p, s))
        if new == rel:
            return rel
        rel = new


def classes(paths, rel):
    out = []
    seen = set()
    for p in paths:
        if p in seen:
            continue
        cls = frozenset(q for q in paths if (p, q) in rel)
        seen |= cls
        out.append(cls)
    return out
