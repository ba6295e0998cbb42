"""JSON formats for every domain value.

``to_json`` and ``from_json`` are inverse on each kind; ``parse_input`` reads
a file and validates it as the requested kind.
"""
from __future__ import annotations

import json
from pathlib import Path as FsPath
from typing import Any, Callable

from .cls_core import Classification, TypeMap, TypeSet
from .dgm_env import (
    Diagram,
    Equation,
    FiniteCategory,
    Graph,
    GraphMorphism,
    Path,
    make_category,
    make_path,
)
from .errors import ParseError, TruthkitError, ValidationError
from .fol_struc import (
    DatasetState,
    FolStructure,
    Frame,
    SchemaFunctor,
    Violation,
    dataset_from_columns,
    make_dataset,
)
from .theory_flow import Sequent, Theory
from .truth_core import Logic


def _obj(d: Any, field: str) -> dict:
    if not isinstance(d, dict):
        raise ValidationError("expected a JSON object", field)
    return d


def _list(d: dict, key: str, field: str) -> list:
    v = d.get(key, [])
    if not isinstance(v, list):
        raise ValidationError(f"{key!r} must be a list", f"{field}.{key}")
    return v


def _keys(d: dict, allowed: tuple[str, ...], field: str, required: tuple[str, ...] = ()) -> None:
    extra = sorted(set(d) - set(allowed))
    if extra:
        raise ValidationError(f"unexpected keys {extra}", field)
    for key in required:
        if key not in d:
            raise ValidationError(f"missing key {key!r}", f"{field}.{key}")


def _strs(values: list, field: str) -> list[str]:
    for v in values:
        if not isinstance(v, str):
            raise ValidationError(f"expected a string, got {v!r}", field)
    return values


def _unique(values: list, field: str) -> list:
    if len(set(values)) != len(values):
        raise ValidationError("duplicate entries", field)
    return values


# classifications, theories, logics

def classification_to_json(M: Classification) -> dict:
    return {
        "types": list(M.types),
        "instances": list(M.instances),
        "incidence": [list(p) for p in sorted(M.incidence)],
    }


def classification_from_json(d: Any, field: str = "classification") -> Classification:
    d = _obj(d, field)
    _keys(d, ("types", "instances", "incidence"), field, ("types",))
    pairs = []
    for i, p in enumerate(_list(d, "incidence", field)):
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(v, str) for v in p)):
            raise ValidationError("incidence entries are [instance, type] pairs", f"{field}.incidence[{i}]")
        pairs.append(tuple(p))
    _unique(pairs, f"{field}.incidence")
    try:
        return Classification(_strs(_list(d, "types", field), f"{field}.types"),
                              _strs(_list(d, "instances", field), f"{field}.instances"), pairs)
    except ValidationError as e:
        raise ValidationError(str(e), field) from None


def sequent_to_json(q: Sequent) -> dict:
    return {"lhs": sorted(q.lhs), "rhs": sorted(q.rhs)}


def sequent_from_json(d: Any, field: str = "sequent") -> Sequent:
    d = _obj(d, field)
    _keys(d, ("lhs", "rhs"), field)
    lhs = _unique(_strs(_list(d, "lhs", field), f"{field}.lhs"), f"{field}.lhs")
    rhs = _unique(_strs(_list(d, "rhs", field), f"{field}.rhs"), f"{field}.rhs")
    return Sequent(lhs, rhs)


def theory_to_json(T: Theory) -> dict:
    return {"types": list(T.types), "sequents": [sequent_to_json(q) for q in T.sorted_sequents()]}


def theory_from_json(d: Any, field: str = "theory") -> Theory:
    d = _obj(d, field)
    _keys(d, ("types", "sequents"), field, ("types",))
    seqs = [sequent_from_json(q, f"{field}.sequents[{i}]") for i, q in enumerate(_list(d, "sequents", field))]
    _unique(seqs, f"{field}.sequents")
    try:
        return Theory(_strs(_list(d, "types", field), f"{field}.types"), seqs)
    except ValidationError as e:
        raise ValidationError(str(e), field) from None


def logic_to_json(L: Logic) -> dict:
    return {
        "types": list(L.types),
        "classification": classification_to_json(L.structure),
        "theory": theory_to_json(L.theory),
    }


def logic_from_json(d: Any, field: str = "logic") -> Logic:
    d = _obj(d, field)
    M = classification_from_json(d.get("classification"), f"{field}.classification")
    T = theory_from_json(d.get("theory"), f"{field}.theory")
    if "types" in d and TypeSet(_strs(_list(d, "types", field), f"{field}.types")) != M.types:
        raise ValidationError("declared types differ from the classification's", f"{field}.types")
    try:
        return Logic(M, T)
    except TruthkitError as e:
        raise ValidationError(str(e), field) from None


def type_map_to_json(f: TypeMap) -> dict:
    return {"source": list(f.source), "target": list(f.target), "map": dict(sorted(f.mapping.items()))}


def type_map_from_json(d: Any, field: str = "map") -> TypeMap:
    d = _obj(d, field)
    m = _obj(d.get("map", {}), f"{field}.map")
    return TypeMap(_strs(_list(d, "source", field), f"{field}.source"),
                   _strs(_list(d, "target", field), f"{field}.target"), m)


# graphs, categories, diagrams

def graph_to_json(G: Graph) -> dict:
    return {"nodes": list(G.nodes),
            "edges": [{"id": e, "src": s, "tgt": t} for e, (s, t) in G.edges.items()]}


def graph_from_json(d: Any, field: str = "graph") -> Graph:
    d = _obj(d, field)
    edges = []
    for i, e in enumerate(_list(d, "edges", field)):
        e = _obj(e, f"{field}.edges[{i}]")
        try:
            edges.append((e["id"], e["src"], e["tgt"]))
        except KeyError as k:
            raise ValidationError(f"missing {k}", f"{field}.edges[{i}]") from None
    return Graph(_strs(_list(d, "nodes", field), f"{field}.nodes"), edges)


def path_to_json(p: Path) -> dict:
    return {"start": p.start, "edges": list(p.edges)}


def path_from_json(d: Any, G: Graph, field: str = "path") -> Path:
    if isinstance(d, list):
        return make_path(G, _strs(d, field))
    d = _obj(d, field)
    return make_path(G, _strs(_list(d, "edges", field), f"{field}.edges"), d.get("start"))


def equation_to_json(eq: Equation) -> dict:
    return {"lhs": path_to_json(eq.lhs), "rhs": path_to_json(eq.rhs)}


def equation_from_json(d: Any, G: Graph, field: str = "equation") -> Equation:
    d = _obj(d, field)
    return Equation(path_from_json(d.get("lhs"), G, f"{field}.lhs"),
                    path_from_json(d.get("rhs"), G, f"{field}.rhs"))


def equations_from_json(d: Any, G: Graph, field: str = "equations") -> list[Equation]:
    if isinstance(d, dict):
        d = d.get("equations", [])
    if not isinstance(d, list):
        raise ValidationError("expected a list of equations", field)
    return [equation_from_json(e, G, f"{field}[{i}]") for i, e in enumerate(d)]


def category_to_json(C: FiniteCategory) -> dict:
    return {
        "objects": list(C.objects),
        "morphisms": [{"id": m, "src": s, "tgt": t} for m, (s, t) in C.morphisms.items()],
        "identities": dict(sorted(C.identities.items())),
        "compose": [[f, g, h] for (f, g), h in sorted(C.table.items())],
    }


def category_from_json(d: Any, field: str = "category") -> FiniteCategory:
    d = _obj(d, field)
    morphs = {}
    for i, m in enumerate(_list(d, "morphisms", field)):
        m = _obj(m, f"{field}.morphisms[{i}]")
        if m.get("id") in morphs:
            raise ValidationError(f"duplicate morphism {m.get('id')!r}", f"{field}.morphisms")
        morphs[m.get("id")] = (m.get("src"), m.get("tgt"))
    table = {}
    for i, row in enumerate(_list(d, "compose", field)):
        if not (isinstance(row, list) and len(row) == 3):
            raise ValidationError("compose entries are [f, g, f;g] triples", f"{field}.compose[{i}]")
        table[(row[0], row[1])] = row[2]
    return make_category(_strs(_list(d, "objects", field), f"{field}.objects"), morphs,
                         _obj(d.get("identities", {}), f"{field}.identities"), table)


def diagram_to_json(D: Diagram) -> dict:
    return {
        "graph": graph_to_json(D.graph),
        "category": category_to_json(D.category),
        "nodes": dict(sorted(D.node_map.items())),
        "edges": dict(sorted(D.edge_map.items())),
    }


def diagram_from_json(d: Any, field: str = "diagram") -> Diagram:
    d = _obj(d, field)
    return Diagram(graph_from_json(d.get("graph"), f"{field}.graph"),
                   category_from_json(d.get("category"), f"{field}.category"),
                   dict(_obj(d.get("nodes", {}), f"{field}.nodes")),
                   dict(_obj(d.get("edges", {}), f"{field}.edges")))


def graph_morphism_to_json(H: GraphMorphism) -> dict:
    return {"source": graph_to_json(H.source), "target": graph_to_json(H.target),
            "nodes": dict(sorted(H.node_map.items())), "edges": dict(sorted(H.edge_map.items()))}


def graph_morphism_from_json(d: Any, field: str = "graph_morphism") -> GraphMorphism:
    d = _obj(d, field)
    return GraphMorphism(graph_from_json(d.get("source"), f"{field}.source"),
                         graph_from_json(d.get("target"), f"{field}.target"),
                         dict(_obj(d.get("nodes", {}), f"{field}.nodes")),
                         dict(_obj(d.get("edges", {}), f"{field}.edges")))


# FOL structures, frames, datasets

def structure_to_json(A: FolStructure) -> dict:
    return {
        "variables": list(A.variables),
        "entity_classification": classification_to_json(A.entity),
        "relation_classification": classification_to_json(A.relation),
        "reference": dict(A.reference),
        "signatures": {k: dict(v) for k, v in A.signatures.items()},
        "tuples": {k: dict(v) for k, v in A.records.items()},
    }


def structure_from_json(d: Any, field: str = "structure") -> FolStructure:
    d = _obj(d, field)
    return FolStructure(
        _strs(_list(d, "variables", field), f"{field}.variables"),
        classification_from_json(d.get("entity_classification"), f"{field}.entity_classification"),
        classification_from_json(d.get("relation_classification"), f"{field}.relation_classification"),
        _obj(d.get("reference", {}), f"{field}.reference"),
        {k: _obj(v, f"{field}.tuples.{k}") for k, v in _obj(d.get("tuples", {}), f"{field}.tuples").items()},
        {k: _obj(v, f"{field}.signatures.{k}")
         for k, v in _obj(d.get("signatures", {}), f"{field}.signatures").items()},
    )


def frame_to_json(fr: Frame) -> dict:
    out: dict = {"frame": fr.name, "roles": dict(sorted(fr.roles.items()))}
    if fr.id is not None:
        out["id"] = fr.id
    return out


def frames_from_json(d: Any, field: str = "frames") -> list[Frame]:
    if isinstance(d, dict) and "frame" in d:
        d = [d]
    elif isinstance(d, dict):
        d = d.get("frames", [])
    if not isinstance(d, list):
        raise ValidationError("expected a frame or a list of frames", field)
    out = []
    for i, fr in enumerate(d):
        fr = _obj(fr, f"{field}[{i}]")
        if not isinstance(fr.get("frame"), str):
            raise ValidationError("frame name must be a string", f"{field}[{i}].frame")
        out.append(Frame(fr["frame"], dict(_obj(fr.get("roles", {}), f"{field}[{i}].roles")), fr.get("id")))
    return out


def dataset_to_json(F: DatasetState) -> dict:
    return {
        "schema": category_to_json(F.schema),
        "rows": {a: list(rs) for a, rs in F.rows.items()},
        "maps": {m: dict(v) for m, v in F.maps.items()},
    }


def dataset_from_json(d: Any, field: str = "dataset") -> DatasetState:
    """Explicit form (schema + maps) or free form (tables + columns + values)."""
    d = _obj(d, field)
    rows = {k: _strs(v, f"{field}.rows.{k}") for k, v in _obj(d.get("rows", {}), f"{field}.rows").items()}
    if "schema" in d:
        return make_dataset(category_from_json(d["schema"], f"{field}.schema"), rows,
                            _obj(d.get("maps", {}), f"{field}.maps"))
    cols = {}
    for i, c in enumerate(_list(d, "columns", field)):
        c = _obj(c, f"{field}.columns[{i}]")
        cols[c.get("id")] = (c.get("src"), c.get("tgt"))
    tables = _strs(_list(d, "tables", field), f"{field}.tables")
    for t in tables:
        rows.setdefault(t, [])
    return dataset_from_columns(tables, cols, rows, _obj(d.get("values", {}), f"{field}.values"))


def functor_to_json(H: SchemaFunctor) -> dict:
    out: dict = {"objects": dict(H.object_map), "morphisms": dict(H.morphism_map)}
    if H.universe_map is not None:
        out["universe"] = dict(H.universe_map)
    return out


def functor_from_json(d: Any, field: str = "functor") -> SchemaFunctor:
    d = _obj(d, field)
    uni = d.get("universe")
    return SchemaFunctor(dict(_obj(d.get("objects", {}), f"{field}.objects")),
                         dict(_obj(d.get("morphisms", {}), f"{field}.morphisms")),
                         None if uni is None else dict(_obj(uni, f"{field}.universe")))


def violation_to_json(v: Violation) -> dict:
    return {"kind": v.kind, "tuple": v.tuple, "relation_type": v.relation_type,
            "variables": list(v.variables), "detail": v.detail}


_TO_JSON: list[tuple[type, Callable[[Any], Any]]] = [
    (Classification, classification_to_json),
    (Theory, theory_to_json),
    (Logic, logic_to_json),
    (Sequent, sequent_to_json),
    (TypeMap, type_map_to_json),
    (Graph, graph_to_json),
    (Path, path_to_json),
    (Equation, equation_to_json),
    (FiniteCategory, category_to_json),
    (Diagram, diagram_to_json),
    (GraphMorphism, graph_morphism_to_json),
    (FolStructure, structure_to_json),
    (Frame, frame_to_json),
    (DatasetState, dataset_to_json),
    (SchemaFunctor, functor_to_json),
    (Violation, violation_to_json),
]


def to_json(value: Any) -> Any:
    for cls, fn in _TO_JSON:
        if isinstance(value, cls):
            return fn(value)
    if isinstance(value, TypeSet):
        return list(value)
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(to_json(v) for v in value)
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    return value


KINDS: dict[str, Callable[[Any], Any]] = {
    "classification": classification_from_json,
    "theory": theory_from_json,
    "logic": logic_from_json,
    "map": type_map_from_json,
    "sequent": sequent_from_json,
    "graph": graph_from_json,
    "category": category_from_json,
    "diagram": diagram_from_json,
    "graph_morphism": graph_morphism_from_json,
    "structure": structure_from_json,
    "frames": frames_from_json,
    "dataset": dataset_from_json,
    "functor": functor_from_json,
}


def load_json(path: str) -> Any:
    try:
        text = FsPath(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def parse_value(data: Any, kind: str) -> Any:
    if kind not in KINDS:
        raise ValidationError(f"unknown input kind {kind!r}", "kind")
    try:
        return KINDS[kind](data)
    except ValidationError:
        raise
    except TruthkitError as e:
        raise ValidationError(f"{type(e).__name__}: {e}", kind) from None
    except (TypeError, AttributeError, KeyError) as e:
        raise ValidationError(f"malformed {kind}: {e}", kind) from None


def parse_input(path: str, kind: str) -> Any:
    return parse_value(load_json(path), kind)


def dumps(value: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(value, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
