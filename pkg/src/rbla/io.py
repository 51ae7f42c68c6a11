"""JSON documents for algebras, data, witnesses, quadruples, chains and reports.

Every document is ``{"schema_version": "1", "kind": ..., "payload": ...}``.
Rationals are strings ``"p/q"`` (``"p"`` when integral), tensors nested
arrays indexed ``[k][i][j]``, matrices lists of rows.  Output is
deterministic: fixed key order, one line per innermost array.
"""

from __future__ import annotations

import json
from pathlib import Path

from .classify import EquivalenceWitness
from .core import LieAlgebra, RBLieAlgebra
from .errors import RBLAError
from .exactla import Matrix, Tensor3, render_rational, to_rational
from .extending import ExtendingDatum
from .flag import ExtendedDerivation
from .report import ConditionReport

SCHEMA_VERSION = "1"
KINDS = ("lie", "rb_lie", "datum", "witness", "exder", "chain", "report")


class FormatError(RBLAError, ValueError):
    """A document does not parse or does not match its schema."""


# -- scalars and grids -------------------------------------------------------

def _q(x):
    if isinstance(x, bool) or isinstance(x, float) or not isinstance(x, (int, str)):
        raise FormatError(f"expected a rational string, got {x!r}")
    try:
        return to_rational(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FormatError(f"bad rational {x!r}") from exc


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise FormatError(f"{what} must be a non-negative integer, got {x!r}")
    return x


def _list(x, what):
    if not isinstance(x, list):
        raise FormatError(f"{what} must be an array")
    return x


def _vec(x, n, what):
    x = _list(x, what)
    if len(x) != n:
        raise FormatError(f"{what} has length {len(x)}, expected {n}")
    return tuple(_q(v) for v in x)


def _matrix(x, rows, cols, what):
    x = _list(x, what)
    if len(x) != rows:
        raise FormatError(f"{what} has {len(x)} rows, expected {rows}")
    return Matrix(rows, cols, tuple(_vec(r, cols, f"{what} row") for r in x))


def _tensor(x, shape, what):
    do, dl, dr = shape
    x = _list(x, what)
    if len(x) != do:
        raise FormatError(f"{what} has {len(x)} planes, expected {do}")
    return Tensor3(do, dl, dr, tuple(_matrix(p, dl, dr, f"{what} plane").entries for p in x))


def _obj(x, what, required=(), optional=()):
    if not isinstance(x, dict):
        raise FormatError(f"{what} must be an object")
    missing = [k for k in required if k not in x]
    if missing:
        raise FormatError(f"{what} lacks {missing}")
    extra = [k for k in x if k not in required and k not in optional]
    if extra:
        raise FormatError(f"{what} has unknown fields {extra}")
    return x


def _qs(v):
    return [render_rational(x) for x in v]


def _mat_json(M: Matrix):
    return [_qs(r) for r in M.entries]


def _ten_json(T: Tensor3):
    return [[_qs(r) for r in p] for p in T.entries]


# -- payloads ----------------------------------------------------------------

def lie_to_json(L: LieAlgebra) -> dict:
    out = {"dim": L.dim, "bracket": _ten_json(L.bracket)}
    if L.labels is not None:
        out["labels"] = list(L.labels)
    return out


def lie_from_json(p) -> LieAlgebra:
    p = _obj(p, "lie", ("dim", "bracket"), ("labels",))
    n = _int(p["dim"], "dim")
    labels = p.get("labels")
    if labels is not None:
        labels = _list(labels, "labels")
        if len(labels) != n or not all(isinstance(s, str) for s in labels):
            raise FormatError("labels must be one string per basis vector")
        labels = tuple(labels)
    return LieAlgebra(n, _tensor(p["bracket"], (n, n, n), "bracket"), labels)


def rb_to_json(R: RBLieAlgebra, unverified: bool = False) -> dict:
    out = {"lie": lie_to_json(R.algebra), "weight": render_rational(R.weight),
           "operator": _mat_json(R.operator)}
    if unverified:
        out["unverified"] = True
    return out


def rb_from_json(p) -> RBLieAlgebra:
    p = _obj(p, "rb_lie", ("lie", "weight", "operator"), ("unverified",))
    L = lie_from_json(p["lie"])
    return RBLieAlgebra(L, _q(p["weight"]), _matrix(p["operator"], L.dim, L.dim, "operator"))


def datum_to_json(om: ExtendingDatum) -> dict:
    return {"base": rb_to_json(om.base), "vdim": om.vdim, "tril": _ten_json(om.tril),
            "trir": _ten_json(om.trir), "f": _ten_json(om.f), "braces": _ten_json(om.braces),
            "p1": _mat_json(om.P1), "p2": _mat_json(om.P2)}


def datum_from_json(p) -> ExtendingDatum:
    p = _obj(p, "datum", ("base", "vdim", "tril", "trir", "f", "braces", "p1", "p2"))
    base = rb_from_json(p["base"])
    n, m = base.dim, _int(p["vdim"], "vdim")
    return ExtendingDatum(
        base, m,
        _tensor(p["tril"], (m, m, n), "tril"), _tensor(p["trir"], (n, m, n), "trir"),
        _tensor(p["f"], (n, m, m), "f"), _tensor(p["braces"], (m, m, m), "braces"),
        _matrix(p["p1"], n, m, "p1"), _matrix(p["p2"], m, m, "p2"))


def witness_to_json(w: EquivalenceWitness) -> dict:
    return {"r": _mat_json(w.r), "v": _mat_json(w.v)}


def witness_from_json(p, n: int, m: int) -> EquivalenceWitness:
    p = _obj(p, "witness", ("r", "v"))
    return EquivalenceWitness(_matrix(p["r"], n, m, "r"), _matrix(p["v"], m, m, "v"))


def _quad_json(X: ExtendedDerivation) -> dict:
    return {"epsilon": _qs(X.epsilon), "d": _mat_json(X.D), "g0": _qs(X.g0),
            "k0": render_rational(X.k0)}


def _quad_from(p, base):
    n = base.dim
    return ExtendedDerivation(base, _vec(p["epsilon"], n, "epsilon"), _matrix(p["d"], n, n, "d"),
                              _vec(p["g0"], n, "g0"), _q(p["k0"]))


def exder_to_json(X: ExtendedDerivation) -> dict:
    return {"base": rb_to_json(X.base), **_quad_json(X)}


def exder_from_json(p) -> ExtendedDerivation:
    p = _obj(p, "exder", ("base", "epsilon", "d", "g0", "k0"))
    return _quad_from(p, rb_from_json(p["base"]))


def chain_to_json(base: RBLieAlgebra, steps) -> dict:
    return {"base": rb_to_json(base), "steps": [_quad_json(X) for X in steps]}


def chain_from_json(p):
    """Returns ``(base, steps)``; step ``i`` is typed against an abelian placeholder
    of the right dimension and rebased when the chain is built."""
    from .core import abelian, rb
    p = _obj(p, "chain", ("base", "steps"))
    base = rb_from_json(p["base"])
    steps = []
    for i, s in enumerate(_list(p["steps"], "steps")):
        s = _obj(s, f"step {i}", ("epsilon", "d", "g0", "k0"))
        placeholder = base if i == 0 else rb(abelian(base.dim + i), weight=base.weight)
        steps.append(_quad_from(s, placeholder))
    return base, steps


def report_to_json(report: ConditionReport, subject: str | None = None) -> dict:
    out = report.to_json()
    if subject is not None:
        out = {"subject": subject, **out}
    return out


# -- envelopes ---------------------------------------------------------------

def envelope(kind: str, payload) -> dict:
    if kind not in KINDS:
        raise FormatError(f"unknown kind {kind!r}")
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload}


def _render(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_render(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (list, dict)) for v in obj):
            return json.dumps(obj)
        items = [pad + "  " + _render(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def dumps(doc: dict) -> str:
    return _render(doc) + "\n"


def loads(text: str) -> tuple[str, object]:
    """Parse a document and return ``(kind, payload)`` without interpreting the payload."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    except RecursionError:
        raise FormatError("document nested too deeply") from None
    doc = _obj(doc, "document", ("schema_version", "kind", "payload"))
    if doc["schema_version"] != SCHEMA_VERSION:
        raise FormatError(f"unsupported schema_version {doc['schema_version']!r}")
    if doc["kind"] not in KINDS:
        raise FormatError(f"unknown kind {doc['kind']!r}")
    return doc["kind"], doc["payload"]


def read(path) -> tuple[str, object]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def write(path, kind: str, payload) -> None:
    Path(path).write_text(dumps(envelope(kind, payload)), encoding="utf-8")


_DECODERS = {"lie": lie_from_json, "rb_lie": rb_from_json, "datum": datum_from_json,
             "exder": exder_from_json, "chain": chain_from_json}


def decode(kind: str, payload):
    """Payload to library object; shape errors surface as FormatError."""
    from .errors import ShapeError
    if kind not in _DECODERS:
        raise FormatError(f"kind {kind!r} cannot be decoded on its own")
    try:
        return _DECODERS[kind](payload)
    except ShapeError as exc:
        raise FormatError(str(exc)) from exc


def read_as(path, *kinds):
    kind, payload = read(path)
    if kinds and kind not in kinds:
        raise FormatError(f"{path}: expected kind {' or '.join(kinds)}, got {kind}")
    return kind, decode(kind, payload)
