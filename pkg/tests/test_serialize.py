"""The Document format: lossless round trips and strict rejection."""

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from opcalc.algebras import FreeAlgebra, check_algebra_laws
from opcalc.exactlin import GradedVectorSpace
from opcalc.operads import builtin_operad, check_operad_laws, quadratic_preset
from opcalc.serialize import (DocumentError, FORMAT_VERSION, build, emit_rational, loads, make_document,
                              parse_document, parse_rational, report_document)
from opcalc.symseq import trivial_sequence
from opcalc.triples import associated_triple, check_triple_laws


def fixtures():
    return [
        builtin_operad("com", 4), builtin_operad("assoc", 3), builtin_operad("lie", 4),
        builtin_operad("poisson(2)", 3), quadratic_preset("lie", 3),
        associated_triple(builtin_operad("lie", 3)),
        FreeAlgebra(builtin_operad("com", 3), GradedVectorSpace({1: 2}), 3),
        trivial_sequence(4),
    ]


@pytest.mark.parametrize("obj", fixtures(), ids=lambda o: type(o).__name__)
def test_store_load_is_identity(obj):
    text = make_document(obj).dumps()
    doc = loads(text)
    again = make_document(build(doc)).dumps()
    assert again == text


def test_loaded_objects_still_satisfy_laws():
    a = build(loads(make_document(builtin_operad("poisson(2)", 4)).dumps()))
    assert check_operad_laws(a) == []
    T = build(loads(make_document(associated_triple(builtin_operad("assoc", 3))).dumps()))
    assert check_triple_laws(T) == []
    C = build(loads(make_document(FreeAlgebra(builtin_operad("lie", 4), GradedVectorSpace({1: 2}), 4)).dumps()))
    assert check_algebra_laws(C) == []


@given(st.fractions(max_denominator=50))
def test_rational_roundtrip(x):
    assert parse_rational(emit_rational(x), "x") == x


@pytest.mark.parametrize("bad", ["2/4", "3/1", "-0", "1.5", "01", "1/0", "", "1/-2"])
def test_non_canonical_rationals_rejected(bad):
    with pytest.raises(DocumentError):
        parse_rational(bad, "x")


def _doc():
    return json.loads(make_document(builtin_operad("lie", 3)).dumps())


def test_non_reduced_rational_names_field():
    d = _doc()
    d["payload"]["components"][2]["generators"][0][0][0] = "2/4"
    with pytest.raises(DocumentError) as e:
        parse_document(d)
    assert e.value.path == "payload.components[2].generators[0][0][0]"


def test_version_mismatch():
    d = _doc()
    d["version"] = FORMAT_VERSION + 1
    with pytest.raises(DocumentError) as e:
        parse_document(d)
    assert e.value.path == "version"


@pytest.mark.parametrize("where", ["$", "payload", "payload.components[1]"])
def test_unknown_fields_rejected(where):
    d = _doc()
    target = {"$": d, "payload": d["payload"], "payload.components[1]": d["payload"]["components"][1]}[where]
    target["surplus"] = 1
    with pytest.raises(DocumentError) as e:
        parse_document(d)
    assert e.value.path.endswith("surplus")


def test_floats_rejected():
    text = make_document(builtin_operad("com", 2)).dumps().replace('"version": 1', '"version": 1.0')
    with pytest.raises(DocumentError):
        loads(text)


@pytest.mark.parametrize("const", ["NaN", "Infinity", "-Infinity"])
def test_nonfinite_constants_rejected(const):
    text = make_document(builtin_operad("com", 2)).dumps().replace('"version": 1', f'"version": {const}')
    with pytest.raises(DocumentError):
        loads(text)


def test_signature_keys_sorted():
    gamma = make_document(builtin_operad("assoc", 4)).payload["gamma"]
    keys = list(gamma)
    parse = lambda k: (int(k.split(";")[0]), tuple(int(x) for x in k.split(";")[1].split(",")))
    assert keys == sorted(keys, key=parse)


def test_report_documents():
    doc = report_document("demo", True, {"dims": {1: 2}, "value": Fraction(1, 3)})
    assert doc.payload["result"] == {"dims": {"1": 2}, "value": "1/3"}
    assert parse_document(json.loads(doc.dumps())).kind == "report"
