"""Malformed documents; ``rbla check`` must exit 2 on each without a traceback."""

import json

from rbla import fixtures, io


def _doc(kind, payload, version="1"):
    return json.dumps({"schema_version": version, "kind": kind, "payload": payload})


def _rb_payload():
    return io.rb_to_json(fixtures.aff1_zero())


def corpus() -> dict:
    good = _rb_payload()
    cases = {
        "empty.json": b"",
        "truncated.json": _doc("rb_lie", good)[:60].encode(),
        "garbage.json": b"this is not json",
        "top_level_array.json": b"[1, 2, 3]",
        "no_version.json": json.dumps({"kind": "lie", "payload": {}}).encode(),
        "future_version.json": _doc("rb_lie", good, version="2").encode(),
        "unknown_kind.json": _doc("group", good).encode(),
        "report_kind.json": _doc("report", {"verdict": "pass", "failures": []}).encode(),
        "float_weight.json": _doc("rb_lie", {**good, "weight": 0.5}).encode(),
        "bool_entry.json": _doc("rb_lie", {**good, "operator": [[True, "0"], ["0", "0"]]}).encode(),
        "zero_denominator.json": _doc("rb_lie", {**good, "weight": "1/0"}).encode(),
        "bad_rational.json": _doc("rb_lie", {**good, "weight": "one"}).encode(),
        "short_bracket.json": _doc("lie", {"dim": 2, "bracket": [[["0", "0"]]]}).encode(),
        "negative_dim.json": _doc("lie", {"dim": -1, "bracket": []}).encode(),
        "string_dim.json": _doc("lie", {"dim": "2", "bracket": []}).encode(),
        "extra_field.json": _doc("rb_lie", {**good, "colour": "red"}).encode(),
        "label_count.json": _doc("lie", {"dim": 1, "bracket": [[["0"]]], "labels": ["a", "b"]}).encode(),
        "datum_shape.json": _doc("datum", {**io.datum_to_json(fixtures.fixture_datum()),
                                           "tril": [[["0"]]]}).encode(),
        "operator_shape.json": _doc("rb_lie", {**good, "operator": [["0", "0", "0"]]}).encode(),
        "not_utf8.json": b"\xff\xfe\x00garbage",
        "deep_nesting.json": b"[" * 100000 + b"]" * 100000,
        "payload_not_object.json": _doc("exder", [1, 2]).encode(),
    }
    return cases
