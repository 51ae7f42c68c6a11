import json

import pytest
from hypothesis import given

from rbla import fixtures as F, io
from rbla.classify import EquivalenceWitness
from rbla.core import FIXTURE_NAMES, fixture, rb
from rbla.exactla import Matrix
from rbla.generators import random_datum, random_valid_exder, random_rb_base

from conftest import rng_for, seeds
from malformed import corpus


def _round(kind, payload):
    text = io.dumps(io.envelope(kind, payload))
    k, p = io.loads(text)
    assert k == kind
    return text, p


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_lie_round_trip(name):
    L = fixture(name)
    text, p = _round("lie", io.lie_to_json(L))
    assert io.lie_from_json(p) == L


@given(seeds)
def test_datum_round_trip_is_exact(seed):
    rng = rng_for(seed)
    om = random_datum(rng)
    text, p = _round("datum", io.datum_to_json(om))
    back = io.datum_from_json(p)
    assert back == om
    assert io.dumps(io.envelope("datum", io.datum_to_json(back))) == text


@given(seeds)
def test_exder_round_trip(seed):
    rng = rng_for(seed)
    X = random_valid_exder(rng, random_rb_base(rng))   # may contain genuine fractions
    _, p = _round("exder", io.exder_to_json(X))
    assert io.exder_from_json(p) == X


def test_rationals_canonical():
    R = rb(fixture("aff1"), Matrix.from_rows([["2/4", 0], [0, "-3/1"]]), "-6/3")
    payload = io.rb_to_json(R)
    assert payload["weight"] == "-2"
    assert payload["operator"] == [["1/2", "0"], ["0", "-3"]]


def test_labels_and_unverified_flag():
    p = io.rb_to_json(rb(fixture("sl2")), unverified=True)
    assert p["lie"]["labels"] == ["h", "e", "f"] and p["unverified"] is True
    assert io.rb_from_json(p) == rb(fixture("sl2"))


def test_key_order_fixed():
    doc = json.loads(io.dumps(io.envelope("datum", io.datum_to_json(F.fixture_datum()))))
    assert list(doc) == ["schema_version", "kind", "payload"]
    assert list(doc["payload"]) == ["base", "vdim", "tril", "trir", "f", "braces", "p1", "p2"]


def test_witness_and_chain():
    w = EquivalenceWitness(Matrix.from_rows([[1], ["1/3"]]), Matrix.scalar(1, 2))
    _, p = _round("witness", io.witness_to_json(w))
    assert io.witness_from_json(p, 2, 1) == w
    _, p = _round("chain", io.chain_to_json(F.aff1_zero(), [F.exder_fixture()]))
    base, steps = io.chain_from_json(p)
    assert base == F.aff1_zero() and steps == [F.exder_fixture()]


def test_report_payload():
    from rbla.core import check_rb
    rep = check_rb(rb(fixture("aff1"), Matrix.identity(2)))
    p = io.report_to_json(rep, "rb_lie")
    assert p["subject"] == "rb_lie" and p["verdict"] == "fail"
    assert p["failures"][0] == {"condition": "rota_baxter", "indices": [0, 1],
                                "lhs": ["0", "1"], "rhs": ["0", "2"]}


@pytest.mark.parametrize("name", sorted(corpus()))
def test_malformed_rejected(tmp_path, name):
    path = tmp_path / name
    path.write_bytes(corpus()[name])
    with pytest.raises(io.FormatError):
        kind, payload = io.read(path)
        io.decode(kind, payload)
