"""First-order structures built from an entity and a relation classification.

Tuples are the instances of the relation classification and relation types
its types. Each tuple carries a record (variable -> entity) whose keys are
its arity; each relation type carries a signature (variable -> entity type)
whose keys are its arity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cls_core import Classification
from .dgm_env import FiniteCategory, Graph, IDENTITY_PREFIX, path_category
from .errors import (
    AmbiguousColumn,
    AmbiguousRowType,
    DuplicateFrameId,
    DuplicateId,
    IllFormedFunctor,
    NonFunctorial,
    NotTrim,
    NotUnified,
    UnknownId,
    ValidationError,
)


def _frozen_maps(d: Mapping[str, Mapping[str, str]]) -> dict[str, dict[str, str]]:
    return {k: dict(sorted(v.items())) for k, v in sorted(d.items())}


@dataclass(frozen=True, init=False)
class FolStructure:
    variables: tuple[str, ...]
    entity: Classification
    relation: Classification
    reference: dict[str, str]
    records: dict[str, dict[str, str]]
    signatures: dict[str, dict[str, str]]

    def __init__(self, variables: Iterable[str], entity: Classification, relation: Classification,
                 reference: Mapping[str, str], records: Mapping[str, Mapping[str, str]],
                 signatures: Mapping[str, Mapping[str, str]]):
        variables = list(variables)
        if len(set(variables)) != len(variables):
            raise DuplicateId("duplicate variable", "variables")
        var_set = set(variables)
        if set(reference) != var_set:
            raise ValidationError("reference must be defined exactly on the variables", "reference")
        for x, t in reference.items():
            if t not in entity.types:
                raise ValidationError(f"variable {x!r} refers to unknown entity type {t!r}", "reference")
        if set(records) != set(relation.instances):
            raise ValidationError("every tuple needs exactly one record", "tuples")
        universe = set(entity.instances)
        for r, rec in records.items():
            for x, v in rec.items():
                if x not in var_set:
                    raise ValidationError(f"tuple {r!r} uses unknown variable {x!r}", "tuples")
                if v not in universe:
                    raise ValidationError(f"tuple {r!r} holds {v!r}, which is not an entity", "tuples")
        if set(signatures) != set(relation.types):
            raise ValidationError("every relation type needs exactly one signature", "signatures")
        for rho, sig in signatures.items():
            for x, t in sig.items():
                if x not in var_set:
                    raise ValidationError(f"signature {rho!r} uses unknown variable {x!r}", "signatures")
                if t not in entity.types:
                    raise ValidationError(f"signature {rho!r} uses unknown entity type {t!r}", "signatures")
        object.__setattr__(self, "variables", tuple(sorted(variables)))
        object.__setattr__(self, "entity", entity)
        object.__setattr__(self, "relation", relation)
        object.__setattr__(self, "reference", dict(sorted(reference.items())))
        object.__setattr__(self, "records", _frozen_maps(records))
        object.__setattr__(self, "signatures", _frozen_maps(signatures))

    @property
    def tuples(self) -> tuple[str, ...]:
        return self.relation.instances

    @property
    def universe(self) -> tuple[str, ...]:
        return self.entity.instances

    def arity(self, r: str) -> frozenset[str]:
        return frozenset(self.records[r])

    def type_arity(self, rho: str) -> frozenset[str]:
        return frozenset(self.signatures[rho])


@dataclass(frozen=True)
class Violation:
    kind: str  # "arity" or "signature"
    tuple: str
    relation_type: str
    variables: tuple[str, ...]
    detail: str


def validate_structure(A: FolStructure) -> list[Violation]:
    out = []
    for r, rho in sorted(A.relation.incidence):
        missing = A.type_arity(rho) - A.arity(r)
        if missing:
            out.append(Violation("arity", r, rho, tuple(sorted(missing)),
                                 "tuple lacks variables required by the relation type"))
        for x in sorted(A.type_arity(rho) & A.arity(r)):
            v, t = A.records[r][x], A.signatures[rho][x]
            if not A.entity.holds(v, t):
                out.append(Violation("signature", r, rho, (x,), f"{v!r} is not of entity type {t!r}"))
    return out


def classify_tuple(A: FolStructure, r: str, rho: str) -> bool:
    """Does the record of r fit the signature of rho, whether or not r is asserted to be a rho?"""
    if r not in A.records:
        raise UnknownId(f"unknown tuple {r!r}")
    if rho not in A.signatures:
        raise UnknownId(f"unknown relation type {rho!r}")
    rec, sig = A.records[r], A.signatures[rho]
    return all(x in rec and A.entity.holds(rec[x], t) for x, t in sig.items())


@dataclass(frozen=True)
class Frame:
    name: str
    roles: dict[str, str]
    id: str | None = None

    @property
    def tuple_id(self) -> str:
        return self.id if self.id is not None else self.name


def frames_to_structure(frames: Iterable[Frame], entity_type: str = "Entity") -> FolStructure:
    """One tuple per frame over a single universal entity type.

    A relation type's arity is the set of roles shared by all frames of that name.
    """
    frames = list(frames)
    seen: set[str] = set()
    for fr in frames:
        if fr.tuple_id in seen:
            raise DuplicateFrameId(f"two frames share the id {fr.tuple_id!r}", "frames")
        seen.add(fr.tuple_id)
    roles = sorted({role for fr in frames for role in fr.roles})
    fillers = sorted({v for fr in frames for v in fr.roles.values()})
    names = sorted({fr.name for fr in frames})
    entity = Classification([entity_type], fillers, [(v, entity_type) for v in fillers])
    relation = Classification(names, [fr.tuple_id for fr in frames], [(fr.tuple_id, fr.name) for fr in frames])
    signatures = {}
    for name in names:
        shared = set.intersection(*(set(fr.roles) for fr in frames if fr.name == name))
        signatures[name] = {role: entity_type for role in shared}
    return FolStructure(
        roles, entity, relation,
        {role: entity_type for role in roles},
        {fr.tuple_id: fr.roles for fr in frames},
        signatures,
    )


# Datasets: a schema category and a set-valued functor on it.

@dataclass(frozen=True)
class DatasetState:
    schema: FiniteCategory
    rows: dict[str, tuple[str, ...]]
    maps: dict[str, dict[str, str]]  # non-identity morphisms only

    def __post_init__(self):
        problem = functoriality_problem(self.schema, self.rows, self.maps)
        if problem is not None:
            raise NonFunctorial(problem)

    def apply(self, m: str, row: str) -> str:
        s = self.schema
        if m == s.identities[s.src(m)]:
            return row
        return self.maps[m][row]


def is_identity(C: FiniteCategory, m: str) -> bool:
    return C.identities[C.src(m)] == m


def functoriality_problem(C: FiniteCategory, rows: Mapping[str, Iterable[str]],
                          maps: Mapping[str, Mapping[str, str]]) -> str | None:
    if set(rows) != set(C.objects):
        return "row sets must be given for exactly the schema's tables"
    row_sets = {a: set(rs) for a, rs in rows.items()}
    non_id = [m for m in C.morphisms if not is_identity(C, m)]
    if set(maps) != set(non_id):
        return "row maps must be given for exactly the non-identity columns"
    for m in non_id:
        s, t = C.morphisms[m]
        if set(maps[m]) != row_sets[s]:
            return f"column {m!r} is not total on the rows of {s!r}"
        for r, v in maps[m].items():
            if v not in row_sets[t]:
                return f"column {m!r} sends {r!r} outside the rows of {t!r}"

    def ap(m: str, r: str) -> str:
        return r if is_identity(C, m) else maps[m][r]

    for f, g in C.composable_pairs():
        h = C.table[(f, g)]
        for r in row_sets[C.src(f)]:
            if ap(h, r) != ap(g, ap(f, r)):
                return f"composite of {f!r} and {g!r} disagrees with {h!r} on row {r!r}"
    return None


def make_dataset(schema: FiniteCategory, rows: Mapping[str, Iterable[str]],
                 maps: Mapping[str, Mapping[str, str]]) -> DatasetState:
    return DatasetState(schema, {a: tuple(sorted(rows[a])) for a in sorted(rows)},
                        {m: dict(sorted(v.items())) for m, v in sorted(maps.items())})


def dataset_from_columns(tables: Iterable[str], columns: Mapping[str, tuple[str, str]],
                         rows: Mapping[str, Iterable[str]],
                         values: Mapping[str, Mapping[str, str]]) -> DatasetState:
    """Dataset over the schema freely generated by the given columns."""
    G = Graph(tables, columns)
    C = path_category(G)
    maps: dict[str, dict[str, str]] = {}
    for m, (s, _) in C.morphisms.items():
        if is_identity(C, m):
            continue
        edges = m.split(";")
        out = {}
        for r in rows[s]:
            v = r
            for e in edges:
                try:
                    v = values[e][v]
                except KeyError:
                    raise NonFunctorial(f"column {e!r} has no value for row {v!r}") from None
            out[r] = v
        maps[m] = out
    return make_dataset(C, rows, maps)


def indecomposable_columns(C: FiniteCategory) -> list[str]:
    """Non-identity morphisms that are not composites of two non-identity morphisms."""
    composites = {
        C.table[(f, g)] for f, g in C.composable_pairs()
        if not is_identity(C, f) and not is_identity(C, g)
    }
    return [m for m in C.morphisms if not is_identity(C, m) and m not in composites]


def _is_unified(A: FolStructure) -> bool:
    return A.entity == A.relation


def structure_to_dataset(A: FolStructure) -> DatasetState:
    """Tables are relation types, rows their tuples, columns the variables."""
    if not _is_unified(A):
        raise NotUnified("entity and relation classifications differ")
    row_type: dict[str, str] = {}
    for r in A.tuples:
        types = sorted(A.relation.tau(r))
        if len(types) != 1:
            raise AmbiguousRowType(f"tuple {r!r} has {len(types)} relation types; exactly one is needed")
        row_type[r] = types[0]
    for r, rho in row_type.items():
        if A.arity(r) != A.type_arity(rho):
            raise NotTrim(f"tuple {r!r} has a different arity from its type {rho!r}")
    columns: dict[str, tuple[str, str]] = {}
    for x in A.variables:
        owners = [rho for rho in A.signatures if x in A.signatures[rho]]
        if len(owners) != 1:
            raise AmbiguousColumn(f"variable {x!r} belongs to {len(owners)} tables; exactly one is needed")
        rho = owners[0]
        if A.signatures[rho][x] != A.reference[x]:
            raise AmbiguousColumn(f"variable {x!r} has signature type {A.signatures[rho][x]!r} "
                                  f"but refers to {A.reference[x]!r}")
        columns[x] = (rho, A.reference[x])
    rows = {rho: [r for r in A.tuples if row_type[r] == rho] for rho in A.relation.types}
    values = {x: {r: A.records[r][x] for r in rows[columns[x][0]]} for x in columns}
    return dataset_from_columns(A.relation.types, columns, rows, values)


def dataset_to_structure(F: DatasetState) -> FolStructure:
    """Unified, trim structure; identity and composite columns are left implicit."""
    C = F.schema
    owner: dict[str, str] = {}
    for a, rs in F.rows.items():
        for r in rs:
            if r in owner:
                raise AmbiguousRowType(f"row {r!r} appears in tables {owner[r]!r} and {a!r}")
            owner[r] = a
    cols = indecomposable_columns(C)
    for m in cols:
        if ";" in m or m.startswith(IDENTITY_PREFIX):
            raise ValidationError(f"column id {m!r} cannot serve as a variable name", "schema")
    cls = Classification(C.objects, sorted(owner), [(r, a) for r, a in owner.items()])
    return FolStructure(
        cols, cls, cls,
        {m: C.tgt(m) for m in cols},
        {r: {m: F.maps[m][r] for m in cols if C.src(m) == a} for r, a in owner.items()},
        {a: {m: C.tgt(m) for m in cols if C.src(m) == a} for a in C.objects},
    )


@dataclass(frozen=True)
class SchemaFunctor:
    """Functor between schemas plus a row map from the target's rows to the source's."""
    object_map: dict[str, str]
    morphism_map: dict[str, str]
    universe_map: dict[str, str] | None = field(default=None)


def functor_problem(H: SchemaFunctor, C: FiniteCategory, D: FiniteCategory) -> str | None:
    if set(H.object_map) != set(C.objects):
        return "object map must be total on the source schema"
    for a, b in H.object_map.items():
        if b not in D.objects:
            return f"object {a!r} sent outside the target schema"
    mm = dict(H.morphism_map)
    for a in C.objects:
        mm.setdefault(C.identities[a], D.identities[H.object_map[a]])
    if set(mm) != set(C.morphisms):
        return "morphism map must be total on the source schema's columns"
    for m, (s, t) in C.morphisms.items():
        n = mm[m]
        if n not in D.morphisms:
            return f"column {m!r} sent outside the target schema"
        if D.morphisms[n] != (H.object_map[s], H.object_map[t]):
            return f"column {m!r} is not sent compatibly with its tables"
    for a in C.objects:
        if mm[C.identities[a]] != D.identities[H.object_map[a]]:
            return f"identity of {a!r} is not preserved"
    for (f, g), h in C.table.items():
        if D.table[(mm[f], mm[g])] != mm[h]:
            return f"composite of {f!r} and {g!r} is not preserved"
    return None


def dataset_morphism_check(H: SchemaFunctor, F: DatasetState, G: DatasetState) -> bool:
    """For every table a of F: univ(h)^-1(rows_F(a)) == rows_G(H(a))."""
    problem = functor_problem(H, F.schema, G.schema)
    if problem is not None:
        raise IllFormedFunctor(problem)
    g_rows = sorted({r for rs in G.rows.values() for r in rs})
    f_rows = {r for rs in F.rows.values() for r in rs}
    if H.universe_map is None:
        h = {r: r for r in g_rows}
    else:
        h = dict(H.universe_map)
        if set(h) != set(g_rows):
            raise IllFormedFunctor("universe map must be total on the target dataset's rows")
        for r, v in h.items():
            if v not in f_rows:
                raise IllFormedFunctor(f"universe map sends {r!r} to an unknown row {v!r}")
    for a in F.schema.objects:
        ext_f = set(F.rows[a])
        pre = {r for r in g_rows if h[r] in ext_f}
        if pre != set(G.rows[H.object_map[a]]):
            return False
    return True
