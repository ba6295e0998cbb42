"""Seeded random generators for small instances of every domain type."""
from __future__ import annotations

import random
from typing import Iterable

from .cls_core import Classification, TypeMap, TypeSet
from .dgm_env import Equation, Graph, GraphMorphism, all_paths
from .fol_struc import FolStructure
from .theory_flow import Sequent, Theory, extent_masks, theory_of_extent

TYPE_NAMES = "pqrstuvwabcdefghijklmno"


def rng_for(seed: int | str, label: str = "") -> random.Random:
    # string seeds are hashed with sha512 by random, so this is stable across runs
    return random.Random(f"{seed}:{label}")


def typeset(rng: random.Random, lo: int, hi: int, prefix: str = "") -> TypeSet:
    n = rng.randint(lo, hi)
    return TypeSet(prefix + TYPE_NAMES[i] for i in range(n))


def random_mask(rng: random.Random, n: int, p: float = 0.5) -> int:
    m = 0
    for i in range(n):
        if rng.random() < p:
            m |= 1 << i
    return m


def classification(rng: random.Random, Y: TypeSet, max_instances: int = 3,
                   min_instances: int = 0, prefix: str = "x") -> Classification:
    k = rng.randint(min_instances, max_instances)
    insts = [f"{prefix}{i}" for i in range(k)]
    inc = [(x, y) for x in insts for y in Y if rng.random() < 0.5]
    return Classification(Y, insts, inc)


def classification_from_masks(Y: TypeSet, masks: Iterable[int], prefix: str = "x") -> Classification:
    insts, inc = [], []
    for i, m in enumerate(masks):
        x = f"{prefix}{i}"
        insts.append(x)
        inc.extend((x, y) for y in Y.subset(m))
    return Classification(Y, insts, inc)


def sequent(rng: random.Random, Y: TypeSet) -> Sequent:
    n = len(Y)
    return Sequent(Y.subset(random_mask(rng, n, 0.35)), Y.subset(random_mask(rng, n, 0.4)))


def theory(rng: random.Random, Y: TypeSet, max_gens: int = 3, min_gens: int = 0) -> Theory:
    k = rng.randint(min_gens, max_gens)
    return Theory(Y, [sequent(rng, Y) for _ in range(k)])


def type_map(rng: random.Random, Y1: TypeSet, Y2: TypeSet) -> TypeMap:
    targets = Y2.types
    return TypeMap(Y1, Y2, {y: rng.choice(targets) for y in Y1})


def nonempty_target_typesets(rng: random.Random, max_types: int) -> tuple[TypeSet, TypeSet]:
    """Source and target type sets such that a total map exists."""
    Y2 = typeset(rng, 0, max_types, prefix="")
    lo = 0
    hi = max_types if len(Y2) else 0
    Y1 = typeset(rng, lo, hi, prefix="")
    # keep the two languages visibly distinct
    Y1 = TypeSet(y + "1" for y in Y1)
    Y2 = TypeSet(y + "2" for y in Y2)
    return Y1, Y2


def theory_above(rng: random.Random, Y: TypeSet, required: Iterable[int], tries: int = 8) -> Theory:
    """A theory whose satisfying subsets include ``required`` (so it is >= any theory with those)."""
    required = frozenset(required)
    for _ in range(tries):
        T = theory(rng, Y, max_gens=2)
        if required <= extent_masks(T):
            return T
    extra = {random_mask(rng, len(Y)) for _ in range(rng.randint(0, 2))}
    return theory_of_extent(Y, required | extra)


def sound_theory(rng: random.Random, M: Classification) -> Theory:
    return theory_above(rng, M.types, M.state_masks())


def struc_source(rng: random.Random, sigma: TypeMap, M2: Classification, extra: int = 1,
                 prefix: str = "u") -> tuple[Classification, dict[str, str]]:
    """A classification M1 over sigma's source with an infomorphism (sigma, f): M1 -> M2."""
    Y1 = sigma.source
    masks: list[int] = []
    f: dict[str, str] = {}
    for x2 in M2.instances:
        want = sigma.preimage_mask(M2.tau_mask(x2))
        reuse = [i for i, m in enumerate(masks) if m == want]
        if reuse and rng.random() < 0.5:
            f[x2] = f"{prefix}{rng.choice(reuse)}"
        else:
            masks.append(want)
            f[x2] = f"{prefix}{len(masks) - 1}"
    for _ in range(rng.randint(0, extra)):
        masks.append(random_mask(rng, len(Y1)))
    return classification_from_masks(Y1, masks, prefix), f


# graphs and diagrams

def dag(rng: random.Random, max_nodes: int = 4, max_edges: int = 5, prefix: str = "") -> Graph:
    """A random acyclic graph: edges only run from lower to higher node index.

    Edges often repeat an earlier pair or close a two-step path, so parallel
    paths are common.
    """
    n = rng.randint(1, max_nodes)
    nodes = [f"{prefix}N{i}" for i in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    used: list[tuple[int, int]] = []
    edges = []
    for k in range(rng.randint(1, max_edges) if pairs else 0):
        r = rng.random()
        two_step = [(a, c) for a, b in used for b2, c in used if b == b2]
        if used and r < 0.3:
            a, b = rng.choice(used)
        elif two_step and r < 0.6:
            a, b = rng.choice(two_step)
        else:
            a, b = rng.choice(pairs)
        used.append((a, b))
        edges.append((f"{prefix}e{k}", nodes[a], nodes[b]))
    return Graph(nodes, edges)


def graph_morphism_into(rng: random.Random, G2: Graph, max_nodes: int = 4, max_edges: int = 4) -> GraphMorphism:
    """A random graph with a morphism into G2; it is acyclic whenever G2 is."""
    node_map: dict[str, str] = {}

    def node_over(target: str) -> str:
        over = [v for v, t in node_map.items() if t == target]
        if over and (len(node_map) >= max_nodes or rng.random() < 0.7):
            return rng.choice(over)
        v = f"M{len(node_map)}"
        node_map[v] = target
        return v

    edges, edge_map = [], {}
    targets = list(G2.edges)
    for k in range(rng.randint(0, max_edges) if targets else 0):
        e2 = rng.choice(targets)
        s, t = G2.edges[e2]
        a, b = node_over(s), node_over(t)
        edges.append((f"h{k}", a, b))
        edge_map[f"h{k}"] = e2
    if not node_map or rng.random() < 0.3:
        node_over(rng.choice(G2.nodes))
    return GraphMorphism(Graph(list(node_map), edges), G2, node_map, edge_map)


def parallel_pairs(G: Graph) -> list[Equation]:
    paths = all_paths(G)
    return [Equation(p, q) for p in paths for q in paths
            if (p.start, p.end) == (q.start, q.end) and p.sort_key() < q.sort_key()]


def equations(rng: random.Random, G: Graph, max_count: int = 2) -> list[Equation]:
    pairs = parallel_pairs(G)
    if not pairs:
        return []
    return [rng.choice(pairs) for _ in range(rng.randint(1, max_count))]


def unified_structure(rng: random.Random, max_tables: int = 3, max_rows: int = 4,
                      max_columns: int = 3) -> FolStructure:
    """A unified, trim structure whose column graph is acyclic.

    Tables are relation (and entity) types, rows are tuples of exactly one
    table, and each variable is a column from one table to a later one.
    """
    k = rng.randint(1, max_tables)
    tables = [f"T{i}" for i in range(k)]
    rows: dict[str, list[str]] = {t: [] for t in tables}
    n_rows = rng.randint(0, max_rows)
    for i in range(n_rows):
        rows[rng.choice(tables)].append(f"r{i}")
    columns: dict[str, tuple[str, str]] = {}
    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    for j in range(rng.randint(0, max_columns) if pairs else 0):
        a, b = rng.choice(pairs)
        if rows[tables[a]] and not rows[tables[b]]:
            # a column out of a nonempty table needs a row to point at
            if n_rows == max_rows:
                continue
            rows[tables[b]].append(f"r{n_rows}")
            n_rows += 1
        columns[f"c{j}"] = (tables[a], tables[b])
    # a later target row can make an earlier column's source nonempty
    columns = {x: (a, b) for x, (a, b) in columns.items() if rows[b] or not rows[a]}
    universe = [r for t in tables for r in rows[t]]
    cls = Classification(tables, universe, [(r, t) for t in tables for r in rows[t]])
    records = {r: {x: rng.choice(rows[b]) for x, (a, b) in columns.items() if a == t}
               for t in tables for r in rows[t]}
    signatures = {t: {x: b for x, (a, b) in columns.items() if a == t} for t in tables}
    return FolStructure(list(columns), cls, cls, {x: b for x, (_, b) in columns.items()}, records, signatures)
