"""Graphs, finite categories, diagrams and equations between paths.

Composition is diagrammatic throughout: ``compose(f, g)`` is f followed by g
and needs tgt(f) == src(g). Paths are restricted to acyclic graphs so that
every path category is finite.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    DoesNotSatisfy,
    DuplicateId,
    IllFormedMorphism,
    IllFormedPath,
    PathSpaceInfinite,
    ValidationError,
)

PATH_COUNT_CAP = 100_000
IDENTITY_PREFIX = "id:"


@dataclass(frozen=True, init=False)
class Graph:
    nodes: tuple[str, ...]
    edges: dict[str, tuple[str, str]]

    def __init__(self, nodes: Iterable[str], edges: Mapping[str, tuple[str, str]] | Iterable[tuple[str, str, str]]):
        nodes = list(nodes)
        if len(set(nodes)) != len(nodes):
            raise DuplicateId("duplicate node id", "nodes")
        if isinstance(edges, Mapping):
            items = [(e, s, t) for e, (s, t) in edges.items()]
        else:
            items = [tuple(e) for e in edges]
        table: dict[str, tuple[str, str]] = {}
        node_set = set(nodes)
        for e, s, t in items:
            if e in table:
                raise DuplicateId(f"duplicate edge id {e!r}", "edges")
            if ";" in e or e.startswith(IDENTITY_PREFIX):
                raise ValidationError(f"edge id {e!r} may not contain ';' or start with {IDENTITY_PREFIX!r}", "edges")
            if s not in node_set or t not in node_set:
                raise ValidationError(f"edge {e!r} has an endpoint outside the node set", "edges")
            table[e] = (s, t)
        object.__setattr__(self, "nodes", tuple(sorted(nodes)))
        object.__setattr__(self, "edges", dict(sorted(table.items())))

    def src(self, e: str) -> str:
        return self.edges[e][0]

    def tgt(self, e: str) -> str:
        return self.edges[e][1]

    @cached_property
    def out_edges(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {n: [] for n in self.nodes}
        for e, (s, _) in self.edges.items():
            out[s].append(e)
        return out

    def find_cycle(self) -> list[str] | None:
        """A cycle as a list of edge ids, or None for an acyclic graph."""
        state: dict[str, int] = {}
        stack: list[str] = []

        def visit(n: str) -> list[str] | None:
            state[n] = 1
            for e in self.out_edges[n]:
                t = self.tgt(e)
                stack.append(e)
                if state.get(t) == 1:
                    start = next(i for i, s in enumerate(stack) if self.src(s) == t)
                    return stack[start:]
                if t not in state:
                    found = visit(t)
                    if found:
                        return found
                stack.pop()
            state[n] = 2
            return None

        for n in self.nodes:
            if n not in state:
                found = visit(n)
                if found:
                    return found
        return None


@dataclass(frozen=True)
class Path:
    start: str
    end: str
    edges: tuple[str, ...] = ()

    @property
    def id(self) -> str:
        return path_id(self)

    def sort_key(self) -> tuple:
        return (len(self.edges), self.edges, self.start)


def path_id(p: Path) -> str:
    return IDENTITY_PREFIX + p.start if not p.edges else ";".join(p.edges)


def make_path(G: Graph, edges: Iterable[str], start: str | None = None) -> Path:
    edges = tuple(edges)
    for e in edges:
        if e not in G.edges:
            raise IllFormedPath(f"unknown edge {e!r}")
    if not edges:
        if start is None or start not in G.nodes:
            raise IllFormedPath("an empty path needs a start node of the graph")
        return Path(start, start, ())
    if start is not None and start != G.src(edges[0]):
        raise IllFormedPath(f"path starts at {start!r} but its first edge leaves {G.src(edges[0])!r}")
    for a, b in zip(edges, edges[1:]):
        if G.tgt(a) != G.src(b):
            raise IllFormedPath(f"edges {a!r} and {b!r} do not compose")
    return Path(G.src(edges[0]), G.tgt(edges[-1]), edges)


def check_path(G: Graph, p: Path) -> None:
    q = make_path(G, p.edges, p.start)
    if q != p:
        raise IllFormedPath(f"path {path_id(p)!r} has the wrong end node")


def concat(p: Path, q: Path) -> Path:
    if p.end != q.start:
        raise IllFormedPath("paths do not compose")
    return Path(p.start, q.end, p.edges + q.edges)


@dataclass(frozen=True)
class Equation:
    lhs: Path
    rhs: Path

    def __post_init__(self):
        if (self.lhs.start, self.lhs.end) != (self.rhs.start, self.rhs.end):
            raise IllFormedPath("equation sides are not parallel")

    def sort_key(self) -> tuple:
        return (self.lhs.sort_key(), self.rhs.sort_key())


def all_paths(G: Graph, length_cap: int | None = None) -> list[Path]:
    cycle = G.find_cycle()
    if cycle is not None:
        raise PathSpaceInfinite(f"graph has a cycle through edges {cycle}")
    out: list[Path] = []
    frontier = [Path(n, n, ()) for n in G.nodes]
    while frontier:
        out.extend(frontier)
        if len(out) > PATH_COUNT_CAP:
            raise PathSpaceInfinite(f"more than {PATH_COUNT_CAP} paths")
        nxt = []
        for p in frontier:
            for e in G.out_edges[p.end]:
                nxt.append(Path(p.start, G.tgt(e), p.edges + (e,)))
        if nxt and length_cap is not None and len(nxt[0].edges) > length_cap:
            raise PathSpaceInfinite(f"graph has paths longer than the cap {length_cap}")
        frontier = nxt
    return sorted(out, key=Path.sort_key)


@dataclass(frozen=True)
class FiniteCategory:
    objects: tuple[str, ...]
    morphisms: dict[str, tuple[str, str]]
    identities: dict[str, str]
    table: dict[tuple[str, str], str] = field(repr=False)

    def src(self, m: str) -> str:
        return self.morphisms[m][0]

    def tgt(self, m: str) -> str:
        return self.morphisms[m][1]

    def compose(self, f: str, g: str) -> str:
        try:
            return self.table[(f, g)]
        except KeyError:
            raise IllFormedMorphism(f"{f!r} and {g!r} are not composable") from None

    def hom(self, a: str, b: str) -> list[str]:
        return [m for m, st in self.morphisms.items() if st == (a, b)]

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        by_src: dict[str, list[str]] = {}
        for m, (s, _) in self.morphisms.items():
            by_src.setdefault(s, []).append(m)
        for f, (_, t) in self.morphisms.items():
            for g in by_src.get(t, []):
                yield f, g


def make_category(objects: Iterable[str], morphisms: Mapping[str, tuple[str, str]],
                  identities: Mapping[str, str], table: Mapping[tuple[str, str], str],
                  check_laws: bool = True) -> FiniteCategory:
    objects = list(objects)
    if len(set(objects)) != len(objects):
        raise DuplicateId("duplicate object id", "objects")
    C = FiniteCategory(tuple(sorted(objects)), dict(sorted(morphisms.items())),
                       dict(identities), dict(table))
    obj = set(objects)
    for m, (s, t) in C.morphisms.items():
        if s not in obj or t not in obj:
            raise ValidationError(f"morphism {m!r} has an endpoint outside the objects", "morphisms")
    for a in objects:
        i = C.identities.get(a)
        if i is None or C.morphisms.get(i) != (a, a):
            raise ValidationError(f"object {a!r} lacks an identity", "identities")
    for f, g in C.composable_pairs():
        h = C.table.get((f, g))
        if h is None:
            raise ValidationError(f"composite of {f!r} and {g!r} is missing", "compose")
        if C.morphisms.get(h) != (C.src(f), C.tgt(g)):
            raise ValidationError(f"composite of {f!r} and {g!r} has the wrong endpoints", "compose")
    if check_laws:
        problem = category_law_problem(C)
        if problem:
            raise ValidationError(problem, "compose")
    return C


def category_law_problem(C: FiniteCategory) -> str | None:
    for m, (s, t) in C.morphisms.items():
        if C.table[(C.identities[s], m)] != m or C.table[(m, C.identities[t])] != m:
            return f"identity law fails at {m!r}"
    by_src: dict[str, list[str]] = {}
    for m, (s, _) in C.morphisms.items():
        by_src.setdefault(s, []).append(m)
    for f, g in C.composable_pairs():
        fg = C.table[(f, g)]
        for h in by_src.get(C.tgt(g), []):
            if C.table[(fg, h)] != C.table[(f, C.table[(g, h)])]:
                return f"associativity fails at ({f!r}, {g!r}, {h!r})"
    return None


def path_category(G: Graph, length_cap: int | None = None) -> FiniteCategory:
    """All paths of an acyclic graph, composed by concatenation."""
    paths = all_paths(G, length_cap)
    by_start: dict[str, list[Path]] = {}
    for p in paths:
        by_start.setdefault(p.start, []).append(p)
    table = {}
    for p in paths:
        for q in by_start[p.end]:
            table[(p.id, q.id)] = path_id(concat(p, q))
    return FiniteCategory(
        tuple(G.nodes),
        {p.id: (p.start, p.end) for p in paths},
        {n: IDENTITY_PREFIX + n for n in G.nodes},
        table,
    )


@dataclass(frozen=True)
class Diagram:
    graph: Graph
    category: FiniteCategory
    node_map: dict[str, str]
    edge_map: dict[str, str]

    def __post_init__(self):
        G, C = self.graph, self.category
        for n in G.nodes:
            if self.node_map.get(n) not in C.identities:
                raise IllFormedMorphism(f"node {n!r} is not sent to an object")
        for e, (s, t) in G.edges.items():
            m = self.edge_map.get(e)
            if m not in C.morphisms:
                raise IllFormedMorphism(f"edge {e!r} is not sent to a morphism")
            if C.morphisms[m] != (self.node_map[s], self.node_map[t]):
                raise IllFormedMorphism(f"edge {e!r} is sent to a morphism with the wrong endpoints")
        if set(self.node_map) != set(G.nodes) or set(self.edge_map) != set(G.edges):
            raise IllFormedMorphism("diagram maps must be defined exactly on the graph")


def diagram_composite(D: Diagram, p: Path) -> str:
    check_path(D.graph, p)
    C = D.category
    m = C.identities[D.node_map[p.start]]
    for e in p.edges:
        m = C.compose(m, D.edge_map[e])
    return m


def dgm_satisfies(D: Diagram, eq: Equation) -> bool:
    return diagram_composite(D, eq.lhs) == diagram_composite(D, eq.rhs)


@dataclass(frozen=True)
class GraphMorphism:
    source: Graph
    target: Graph
    node_map: dict[str, str]
    edge_map: dict[str, str]

    def __post_init__(self):
        if set(self.node_map) != set(self.source.nodes) or set(self.edge_map) != set(self.source.edges):
            raise IllFormedMorphism("graph morphism must be total on nodes and edges")
        for n, n2 in self.node_map.items():
            if n2 not in self.target.nodes:
                raise IllFormedMorphism(f"node {n!r} sent outside the target graph")
        for e, (s, t) in self.source.edges.items():
            e2 = self.edge_map[e]
            if e2 not in self.target.edges:
                raise IllFormedMorphism(f"edge {e!r} sent outside the target graph")
            if self.target.edges[e2] != (self.node_map[s], self.node_map[t]):
                raise IllFormedMorphism(f"edge {e!r} is not sent compatibly with its endpoints")

    def path_image(self, p: Path) -> Path:
        return Path(self.node_map[p.start], self.node_map[p.end], tuple(self.edge_map[e] for e in p.edges))


def translate_equation(H: GraphMorphism, eq: Equation) -> Equation:
    check_path(H.source, eq.lhs)
    check_path(H.source, eq.rhs)
    return Equation(H.path_image(eq.lhs), H.path_image(eq.rhs))


def pull_back_diagram(H: GraphMorphism, D2: Diagram) -> Diagram:
    """H followed by D2, a diagram over H's source graph."""
    if D2.graph != H.target:
        raise IllFormedMorphism("diagram is not over the morphism's target graph")
    return Diagram(
        H.source,
        D2.category,
        {n: D2.node_map[H.node_map[n]] for n in H.source.nodes},
        {e: D2.edge_map[H.edge_map[e]] for e in H.source.edges},
    )


@dataclass(frozen=True)
class Translation:
    equation: Equation
    diagram: Diagram
    pulled_back_satisfies: bool
    translated_satisfied: bool


def translate_along(H: GraphMorphism, eq: Equation, D2: Diagram) -> Translation:
    eq2 = translate_equation(H, eq)
    D1 = pull_back_diagram(H, D2)
    return Translation(eq2, D1, dgm_satisfies(D1, eq), dgm_satisfies(D2, eq2))


class _UnionFind:
    def __init__(self, items: Iterable[str], key):
        self.parent = {x: x for x in items}
        self.key = key

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # the smaller key stays root so representatives are canonical
        if self.key(rb) < self.key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class QuotientCategory:
    graph: Graph
    equations: tuple[Equation, ...]
    category: FiniteCategory
    canonical: dict[str, str]  # path id -> class representative id


def quotient_category(G: Graph, equations: Iterable[Equation], length_cap: int | None = None) -> QuotientCategory:
    """Paths modulo the least congruence containing the equations."""
    equations = tuple(sorted(set(equations), key=Equation.sort_key))
    paths = all_paths(G, length_cap)
    by_id = {p.id: p for p in paths}
    for eq in equations:
        check_path(G, eq.lhs)
        check_path(G, eq.rhs)
    uf = _UnionFind(by_id, key=lambda pid: by_id[pid].sort_key())
    for eq in equations:
        uf.union(eq.lhs.id, eq.rhs.id)
    # close under whiskering by single edges; a path is congruent to its
    # representative, so whiskering both is enough to cover every pair
    changed = True
    while changed:
        changed = False
        for p in paths:
            r = by_id[uf.find(p.id)]
            if r == p:
                continue
            for e in G.out_edges[p.end]:
                changed |= uf.union(";".join(p.edges + (e,)), ";".join(r.edges + (e,)))
            for e in G.edges:
                if G.tgt(e) == p.start:
                    changed |= uf.union(";".join((e,) + p.edges), ";".join((e,) + r.edges))
    canonical = {pid: uf.find(pid) for pid in by_id}
    reps = sorted(set(canonical.values()), key=lambda pid: by_id[pid].sort_key())
    by_start: dict[str, list[Path]] = {}
    for p in paths:
        by_start.setdefault(p.start, []).append(p)
    table: dict[tuple[str, str], str] = {}
    for a in reps:
        pa = by_id[a]
        for b in reps:
            pb = by_id[b]
            if pa.end == pb.start:
                table[(a, b)] = canonical[path_id(concat(pa, pb))]
    # composition must not depend on the chosen representatives
    for p in paths:
        for q in by_start[p.end]:
            if canonical[path_id(concat(p, q))] != table[(canonical[p.id], canonical[q.id])]:
                raise ValidationError("congruence closure failed to be compatible with composition")
    C = FiniteCategory(
        tuple(G.nodes),
        {r: (by_id[r].start, by_id[r].end) for r in reps},
        {n: canonical[IDENTITY_PREFIX + n] for n in G.nodes},
        table,
    )
    return QuotientCategory(G, equations, C, canonical)


def canonical_diagram(Q: QuotientCategory) -> Diagram:
    """The graph sent into its own quotient: each edge to its class."""
    return Diagram(Q.graph, Q.category, {n: n for n in Q.graph.nodes},
                   {e: Q.canonical[e] for e in Q.graph.edges})


def dgm_intent(D: Diagram, length_cap: int | None = None) -> frozenset[Equation]:
    paths = all_paths(D.graph, length_cap)
    value = {p.id: diagram_composite(D, p) for p in paths}
    out = set()
    for p, q in itertools.product(paths, repeat=2):
        if (p.start, p.end) == (q.start, q.end) and value[p.id] == value[q.id]:
            out.add(Equation(p, q))
    return frozenset(out)


@dataclass(frozen=True)
class Factorization:
    quotient: QuotientCategory
    class_map: dict[str, str]  # class representative -> morphism of D's category
    unique: bool


def factor_through_quotient(D: Diagram, equations: Iterable[Equation], length_cap: int | None = None) -> Factorization:
    equations = list(equations)
    for eq in equations:
        if not dgm_satisfies(D, eq):
            raise DoesNotSatisfy(f"diagram does not satisfy {path_id(eq.lhs)} = {path_id(eq.rhs)}")
    Q = quotient_category(D.graph, equations, length_cap)
    paths = all_paths(D.graph, length_cap)
    class_map: dict[str, str] = {}
    for p in paths:
        cls = Q.canonical[p.id]
        m = diagram_composite(D, p)
        if class_map.setdefault(cls, m) != m:
            raise DoesNotSatisfy(f"diagram is not constant on the class of {cls!r}")
    # every class contains a path, so a class map agreeing with D on paths is forced
    unique = set(class_map) == set(Q.category.morphisms)
    return Factorization(Q, class_map, unique)


def factor_is_functor(F: Factorization, D: Diagram) -> bool:
    C, Q = D.category, F.quotient.category
    for a, b in Q.composable_pairs():
        if F.class_map[Q.table[(a, b)]] != C.compose(F.class_map[a], F.class_map[b]):
            return False
    return all(F.class_map[Q.identities[n]] == C.identities[D.node_map[n]] for n in D.graph.nodes)


def isomorphic_via(C1: FiniteCategory, C2: FiniteCategory, mapping: Mapping[str, str]) -> bool:
    """Is ``mapping`` (identity on objects) a bijection on morphisms preserving composition?"""
    if set(C1.objects) != set(C2.objects):
        return False
    if set(mapping) != set(C1.morphisms) or sorted(mapping.values()) != sorted(C2.morphisms):
        return False
    for m, st in C1.morphisms.items():
        if C2.morphisms[mapping[m]] != st:
            return False
    for (f, g), h in C1.table.items():
        if C2.table.get((mapping[f], mapping[g])) != mapping[h]:
            return False
    return all(mapping[C1.identities[a]] == C2.identities[a] for a in C1.objects)
