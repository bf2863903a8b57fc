import json

import pytest
from hypothesis import given, strategies as st

from operadic import ModuleSpace, Field
from operadic.exact import ExactTensor
from operadic.serialize import (ParseError, coop_from_json, coop_to_json, dumps, load_coop,
                                load_tensor, tensor_from_json, tensor_to_json)

from conftest import coops, spaces


@given(data=st.data())
def test_coop_round_trip_is_byte_exact(data):
    f = data.draw(coops(data.draw(spaces(dims=(1, 2, 3))), min_degree=0))
    text = dumps(coop_to_json(f))
    g = coop_from_json(json.loads(text))
    assert g == f
    assert dumps(coop_to_json(g)) == text


def test_layout():
    obj = {"dimension": 2, "field": {"prime": 5}, "degree": 1,
           "coefficients": [{"in": 2, "out": [1], "value": "7"}]}
    f = coop_from_json(obj)
    assert f[(0, 1)] == Field.prime(5)(2)
    assert coop_to_json(f)["coefficients"] == [{"in": 2, "out": [1], "value": "2"}]


def test_tensor_round_trip(tmp_path):
    t = ExactTensor.from_scalars(Field.rational(), [[0, "1/2"], ["-3", 0]])
    path = tmp_path / "t.json"
    path.write_text(dumps(tensor_to_json(t, 2)))
    space, back = load_tensor(path, 2)
    assert back == t and space.dimension == 2


BAD = [
    ({"field": "rational", "degree": 1, "coefficients": []}, "dimension"),
    ({"dimension": 0, "field": "rational", "degree": 1, "coefficients": []}, "positive"),
    ({"dimension": 2, "field": {"prime": 4}, "degree": 1, "coefficients": []}, "prime"),
    ({"dimension": 2, "field": "rational", "degree": 1,
      "coefficients": [{"in": 3, "out": [1], "value": "1"}]}, r"coefficients\[0\].*outside"),
    ({"dimension": 2, "field": "rational", "degree": 2,
      "coefficients": [{"in": 1, "out": [1], "value": "1"}]}, "length 1, expected 2"),
    ({"dimension": 2, "field": "rational", "degree": 1,
      "coefficients": [{"in": 1, "out": [1], "value": 1}]}, "must be a string"),
    ({"dimension": 2, "field": "rational", "degree": 1,
      "coefficients": [{"in": 1, "out": [1], "value": "x"}]}, "cannot parse"),
    ({"dimension": 2, "field": "rational", "degree": 1,
      "coefficients": [{"in": 1, "out": [1], "value": "1"},
                       {"in": 1, "out": [1], "value": "2"}]}, r"coefficients\[1\].*duplicate"),
]


@pytest.mark.parametrize("obj,msg", BAD)
def test_parse_errors_name_the_location(obj, msg):
    with pytest.raises(ParseError, match=msg):
        coop_from_json(obj, "f.json")


def test_malformed_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dimension": 2,\n  "field": }')
    with pytest.raises(ParseError, match="line 2 column"):
        load_coop(p)
    with pytest.raises(ParseError):
        load_coop(tmp_path / "missing.json")


def test_tensor_rank_checked():
    obj = {"dimension": 2, "field": "rational", "entries": [{"idx": [1], "value": "1"}]}
    with pytest.raises(ParseError, match="expected 2 indices"):
        tensor_from_json(obj, 2)
