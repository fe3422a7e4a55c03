import json
from pathlib import Path

import pytest

from gl11bethe.errors import DegenerateWeight, ParseError
from gl11bethe.field import I, Field
from gl11bethe.model import ModelSpec, Weight, load_model, parse_model
from gl11bethe.named_models import NAMED, model_MB
from gl11bethe.tensor import build_tensor_module

MODELS = Path(__file__).resolve().parent.parent / "models"


def test_weight_properties():
    w = Weight(2, 1)
    assert w.size == 3 and w.is_polynomial() and not w.is_degenerate()
    assert w.lowered() == Weight(1, 2)
    assert Weight(1, -1).is_degenerate()


def test_field_autodetect():
    assert model_MB().field is Field.QI
    assert NAMED["MA"]().field is Field.Q


@pytest.mark.parametrize("name", sorted(NAMED))
def test_model_files_match_named_models(name):
    assert load_model(MODELS / f"{name}.json") == NAMED[name]()


def test_round_trip_through_json():
    m = ModelSpec.make([(1, "1/2"), ("i", 0)], [0, "1+i"], sector=1)
    assert parse_model(json.dumps(m.to_dict())) == m


@pytest.mark.parametrize(
    "data, token",
    [
        ({"field": "Q", "weights": [["1", "0"], ["x", "0"]], "points": ["0", "1"]}, "weights[1][0]"),
        ({"field": "Q", "weights": [["1", "0"]], "points": ["i"]}, "points[0]"),
        ({"field": "Q", "weights": [["1", "0"]], "points": ["0"], "extra": 1}, "unknown key"),
        ({"field": "Q", "weights": [["1", "0"]]}, "missing key 'points'"),
        ({"field": "Q", "weights": [["1"]], "points": ["0"]}, "weights[0]"),
        ({"field": "Q", "weights": [["1", "0"], ["1", "0"]], "points": ["0", "0"]}, "distinct"),
        ({"field": "Q", "weights": [["1", "0"]], "points": ["0"], "sector": 3}, "sector"),
    ],
)
def test_parse_errors_name_the_token(data, token):
    with pytest.raises(ParseError) as err:
        parse_model(data)
    assert token in str(err.value)


def test_invalid_json():
    with pytest.raises(ParseError, match="invalid JSON"):
        parse_model("{")


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_model(tmp_path / "nope.json")


def test_degenerate_weight_rejected():
    m = ModelSpec.make([(1, 0), (1, -1)], [0, 1])
    with pytest.raises(DegenerateWeight):
        build_tensor_module(m)


def test_gaussian_points():
    m = ModelSpec.make([(1, 0)] * 2, [I, -I])
    assert m.n == 2 and m.k == 2
