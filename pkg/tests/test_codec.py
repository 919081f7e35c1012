import json
from fractions import Fraction

import pytest

from lipfree.codec import (
    absnorm_from_obj,
    instance_from_obj,
    instance_to_obj,
    load_file,
    loads,
    molecule_from_obj,
    oracle_from_obj,
    oracle_to_obj,
    pp_from_obj,
    pp_to_obj,
    space_from_obj,
)
from lipfree.doh import doh_objective
from lipfree.errors import DegeneratePolygon, InputError, ParseError
from lipfree.gallery import F1


def test_malformed_json_reports_line(data_dir):
    with pytest.raises(ParseError) as exc:
        load_file(data_dir / "malformed.json")
    assert exc.value.line == 4


def test_bad_rational_reports_line():
    text = '{\n "points": ["0", "a"],\n "base": "0",\n "dist": [["0", "0.5"], ["0.5", "0"]]\n}'
    obj, ctx = loads(text)
    with pytest.raises(ParseError) as exc:
        space_from_obj(obj, ctx)
    assert exc.value.line == 4


def test_missing_field_and_file():
    with pytest.raises(ParseError):
        space_from_obj({"points": ["0"], "base": "0"})
    with pytest.raises(InputError):
        load_file("/nonexistent/space.json")


def test_molecule_references_space_file(data_dir):
    obj, ctx = load_file(data_dir / "mol_ud4.json")
    mol = molecule_from_obj(obj, ctx)
    assert len(mol.space.points) == 4 and mol["p1"] == 2


def test_norm_forms(data_dir):
    assert absnorm_from_obj("l1")(1, 1) == 2
    _, ctx = load_file(data_dir / "mol_ud4.json")
    assert absnorm_from_obj("polygon.json", ctx)(1, 1) == Fraction(3, 2)
    with pytest.raises(DegeneratePolygon):
        absnorm_from_obj({"vertices": [["0", "1"], ["1", "0"]]})


def test_oracle_round_trip():
    obj = {"kind": "sum", "norm": {"name": "oct", "vertices": [["1", "0"], ["2/3", "2/3"], ["0", "1"]]},
           "X": {"kind": "cube", "norm": "l1", "dim": 2},
           "Y": {"kind": "free", "space": {"points": ["0", "a"], "base": "0", "dist": [["0", "1"], ["1", "0"]]}}}
    o = oracle_from_obj(obj)
    assert oracle_to_obj(o) == obj
    with pytest.raises(ParseError):
        oracle_from_obj({"kind": "hilbert"})


def test_instance_round_trip(data_dir):
    obj, ctx = load_file(data_dir / "line_inst.json")
    inst = instance_from_obj(obj, ctx)
    again = instance_from_obj(instance_to_obj(inst))
    assert doh_objective(again) == doh_objective(inst)
    assert instance_to_obj(again) == instance_to_obj(inst)


def test_piecewise_round_trip():
    assert pp_from_obj(pp_to_obj(F1)) == F1
