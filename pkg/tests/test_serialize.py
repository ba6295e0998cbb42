import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import classifications, sequents, theories, type_maps, typesets
from truthkit import gen
from truthkit.dgm_env import canonical_diagram, path_category, quotient_category
from truthkit.errors import ParseError, ValidationError
from truthkit.fol_struc import Frame, SchemaFunctor, structure_to_dataset
from truthkit.serialize import dumps, load_json, parse_input, parse_value, to_json
from truthkit.truth_core import Logic


def round_trips(value, kind):
    text = dumps(to_json(value))
    assert parse_value(json.loads(text), kind) == value


@given(classifications())
def test_classification_round_trip(M):
    round_trips(M, "classification")


@given(st.data())
def test_theory_logic_sequent_map_round_trip(data):
    Y = data.draw(typesets())
    round_trips(data.draw(theories(Y)), "theory")
    round_trips(data.draw(sequents(Y)), "sequent")
    round_trips(Logic(data.draw(classifications(Y)), data.draw(theories(Y))), "logic")
    round_trips(data.draw(type_maps()), "map")


@given(st.integers(0, 10**6))
def test_dgm_values_round_trip(seed):
    rng = random.Random(seed)
    G = gen.dag(rng, 4, 4)
    round_trips(G, "graph")
    round_trips(path_category(G), "category")
    D = canonical_diagram(quotient_category(G, gen.equations(rng, G)))
    round_trips(D, "diagram")
    round_trips(D.category, "category")
    round_trips(gen.graph_morphism_into(rng, G), "graph_morphism")


@given(st.integers(0, 10**6))
def test_fol_values_round_trip(seed):
    A = gen.unified_structure(random.Random(seed))
    round_trips(A, "structure")
    round_trips(structure_to_dataset(A), "dataset")


def test_frames_and_functors_round_trip():
    frames = [Frame("send", {"agent": "Adam"}), Frame("send", {"agent": "Eve"}, id="s2")]
    assert parse_value(to_json(frames), "frames") == frames
    H = SchemaFunctor({"A": "B"}, {"f": "g"}, {"x": "y"})
    assert parse_value(to_json(H), "functor") == H


def test_classification_json_is_order_insensitive():
    a = {"types": ["q", "p"], "instances": ["2", "1"], "incidence": [["2", "q"], ["1", "p"]]}
    b = {"types": ["p", "q"], "instances": ["1", "2"], "incidence": [["1", "p"], ["2", "q"]]}
    assert parse_value(a, "classification").incidence == parse_value(b, "classification").incidence
    assert dumps(to_json(parse_value(a, "classification"))) == dumps(to_json(parse_value(b, "classification")))


def test_duplicates_are_rejected():
    with pytest.raises(ValidationError):
        parse_value({"types": ["p"], "instances": ["1"], "incidence": [["1", "p"], ["1", "p"]]}, "classification")
    with pytest.raises(ValidationError):
        parse_value({"types": ["p", "p"], "sequents": []}, "theory")


def test_validation_errors_carry_a_field():
    with pytest.raises(ValidationError) as info:
        parse_value({"types": ["p"], "instances": ["1"], "incidence": [["1", "z"]]}, "classification")
    assert info.value.field == "classification"
    with pytest.raises(ValidationError) as info:
        parse_value({"types": ["p"], "sequents": [{"lhs": [1]}]}, "theory")
    assert "sequents[0]" in info.value.field


def test_wrong_kind_is_a_validation_error():
    with pytest.raises(ValidationError):
        parse_value({}, "no-such-kind")
    with pytest.raises(ValidationError):
        parse_value({"nodes": ["A"], "edges": []}, "classification")


def test_parse_errors_report_line_and_column(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "types": [\n}')
    with pytest.raises(ParseError, match="line 3"):
        load_json(str(bad))
    with pytest.raises(ParseError):
        parse_input(str(tmp_path / "missing.json"), "theory")


def test_free_form_dataset():
    d = {"tables": ["T1", "T2"], "columns": [{"id": "c", "src": "T1", "tgt": "T2"}],
         "rows": {"T1": ["r1"], "T2": ["s1"]}, "values": {"c": {"r1": "s1"}}}
    F = parse_value(d, "dataset")
    assert F.maps == {"c": {"r1": "s1"}}
