import json

import pytest

from rbla import io
from rbla.cli import demo_documents, main
from rbla.core import check_rb_lie
from rbla.exactla import Matrix

from malformed import corpus


@pytest.fixture
def demo(tmp_path):
    d = tmp_path / "demo"
    assert main(["demo", "-o", str(d)]) == 0
    return d


def _report(capsys):
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert doc["kind"] == "report"
    return doc["payload"]


def test_demo_writes_every_document(demo):
    names = sorted(p.name for p in demo.iterdir())
    assert names == sorted(demo_documents())
    for p in demo.iterdir():
        io.read(p)


def test_demo_is_deterministic(tmp_path, demo):
    other = tmp_path / "again"
    main(["demo", "-o", str(other)])
    for p in demo.iterdir():
        assert (other / p.name).read_bytes() == p.read_bytes()


def test_check_rb_examples(demo, capsys):
    assert main(["check", str(demo / "rb_aff1_zero.json")]) == 0
    assert _report(capsys)["verdict"] == "pass"
    assert main(["check", str(demo / "rb_aff1_identity.json")]) == 1
    f = _report(capsys)["failures"][0]
    assert f["condition"] == "rota_baxter" and f["indices"] == [0, 1]
    assert main(["check", str(demo / "rb_sl2_identity_minus1.json")]) == 0


def test_check_each_kind(demo, capsys):
    for name, code in [("lie_sl2.json", 0), ("datum_fixture.json", 0), ("datum_bad.json", 1),
                       ("exder_fixture.json", 0), ("chain_two_steps.json", 0)]:
        assert main(["check", str(demo / name)]) == code, name
    capsys.readouterr()


def test_check_datum_over_invalid_base(tmp_path, demo, capsys):
    kind, payload = io.read(demo / "datum_trivial.json")
    payload["base"] = io.rb_to_json(io.rb_from_json(payload["base"]).__class__(
        io.rb_from_json(payload["base"]).algebra, 0, Matrix.identity(2)))
    path = tmp_path / "d.json"
    io.write(path, "datum", payload)
    assert main(["check", str(path)]) == 1
    assert _report(capsys)["failures"][0]["condition"] == "base.rota_baxter"


def test_human_output(demo, capsys):
    assert main(["check", str(demo / "rb_aff1_identity.json"), "--human"]) == 1
    out = capsys.readouterr().out
    assert "rota_baxter" in out and "(e1, e2)" in out


def test_truncated_file(tmp_path, capsys):
    p = tmp_path / "t.json"
    p.write_text('{"schema_version": "1", "kind": "rb_')
    assert main(["check", str(p)]) == 2
    assert "invalid JSON" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["check", str(tmp_path / "nope.json")]) == 2
    assert capsys.readouterr().err.startswith("rbla:")


def test_unify_examples(tmp_path, demo, capsys):
    out = tmp_path / "u.json"
    assert main(["unify", str(demo / "datum_fixture.json"), "-o", str(out)]) == 0
    E = io.decode(*io.read(out))
    assert E.P((0, 0, 1)) == (1, 0, 0) and check_rb_lie(E).passed
    assert main(["unify", str(demo / "datum_trivial.json"), "-o", str(out)]) == 0
    assert io.decode(*io.read(out)) == io.decode(*io.read(demo / "ambient_direct_sum.json"))
    assert main(["unify", str(demo / "datum_bad.json"), "-o", str(out)]) == 1
    assert io.read(out)[1]["unverified"] is True
    capsys.readouterr()


def test_file_round_trip(tmp_path, demo, capsys):
    for name, sub in [("datum_fixture.json", "0,1"), ("datum_trivial.json", "0,1")]:
        u, back = tmp_path / "u.json", tmp_path / "back.json"
        assert main(["unify", str(demo / name), "-o", str(u)]) == 0
        assert main(["decompose", str(u), "--sub", sub, "-o", str(back)]) == 0
        assert back.read_bytes() == (demo / name).read_bytes()
    capsys.readouterr()


def test_decompose_examples(tmp_path, demo, capsys):
    out = tmp_path / "d.json"
    assert main(["decompose", str(demo / "ambient_direct_sum.json"), "--sub", "0,1", "-o", str(out)]) == 0
    assert out.read_bytes() == (demo / "datum_trivial.json").read_bytes()
    aff = tmp_path / "aff.json"
    kind, payload = io.read(demo / "rb_aff1_zero.json")
    io.write(aff, kind, payload)
    assert main(["decompose", str(aff), "--sub", "0", "-o", str(out)]) == 0
    assert io.read(out)[1]["tril"] == [[["-1"]]]
    capsys.readouterr()


def test_decompose_closure_violation(tmp_path, capsys):
    from rbla.core import heisenberg3, rb
    p = tmp_path / "h.json"
    io.write(p, "rb_lie", io.rb_to_json(rb(heisenberg3())))
    assert main(["decompose", str(p), "--sub", "0,1", "-o", str(tmp_path / "o.json")]) == 1
    assert "subalgebra" in capsys.readouterr().err
    assert main(["decompose", str(p), "--sub", "0,7", "-o", str(tmp_path / "o.json")]) == 2
    assert main(["decompose", str(p), "--sub", "a,b", "-o", str(tmp_path / "o.json")]) == 2


def test_exder_commands(tmp_path, demo, capsys):
    z, ad, shift = (str(demo / n) for n in ("exder_zero.json", "exder_ad_e1.json", "exder_g0_shift.json"))
    assert main(["exder", "equiv", z, z]) == 0
    w = json.loads(capsys.readouterr().out)
    assert w["kind"] == "witness" and w["payload"] == {"r": [["0"], ["0"]], "v": [["1"]]}
    assert main(["exder", "equiv", z, shift]) == 0
    assert capsys.readouterr().out == "not-equivalent\n"
    assert main(["exder", "partition", z, ad, shift]) == 0
    assert json.loads(capsys.readouterr().out) == {"classes": [[0, 1], [2]]}
    assert main(["exder", "partition", z, ad, shift, "--human"]) == 0
    assert capsys.readouterr().out == "class 0: 0, 1\nclass 1: 2\n"
    assert main(["exder", "check", str(demo / "exder_fixture.json")]) == 0
    out = tmp_path / "ext.json"
    assert main(["exder", "extend", str(demo / "exder_fixture.json"), "-o", str(out)]) == 0
    assert io.read(out)[1] == io.read(demo / "ambient_fixture.json")[1]
    assert main(["exder", "extend", str(demo / "chain_two_steps.json"), "-o", str(out)]) == 0
    assert io.read(out)[1]["lie"]["dim"] == 4
    capsys.readouterr()


def test_exder_base_mismatch(tmp_path, demo, capsys):
    from rbla.core import heisenberg3, rb
    from rbla.flag import ExtendedDerivation
    h = tmp_path / "h.json"
    io.write(h, "exder", io.exder_to_json(ExtendedDerivation.zero(rb(heisenberg3()))))
    assert main(["exder", "equiv", str(demo / "exder_zero.json"), str(h)]) == 1
    assert main(["exder", "partition", str(demo / "exder_zero.json"), str(h)]) == 1
    assert main(["exder", "equiv", str(demo / "exder_zero.json")]) == 2
    capsys.readouterr()


def test_transform_command(tmp_path, demo, capsys):
    out = tmp_path / "t.json"
    assert main(["transform", str(demo / "datum_fixture.json"), "--witness",
                 str(demo / "witness_example.json"), "-o", str(out)]) == 0
    assert main(["check", str(out)]) == 0
    capsys.readouterr()


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["unify", "x.json"]) == 2
    assert main(["--help"]) == 0
    capsys.readouterr()


@pytest.mark.parametrize("name", sorted(corpus()))
@pytest.mark.parametrize("command", ["check", "unify", "decompose"])
def test_malformed_exit_2(tmp_path, capsys, name, command):
    p = tmp_path / name
    p.write_bytes(corpus()[name])
    argv = {"check": ["check", str(p)],
            "unify": ["unify", str(p), "-o", str(tmp_path / "o.json")],
            "decompose": ["decompose", str(p), "--sub", "0", "-o", str(tmp_path / "o.json")]}[command]
    assert main(argv) == 2
    err = capsys.readouterr().err
    assert err.startswith("rbla:") and "Traceback" not in err and "internal error" not in err
