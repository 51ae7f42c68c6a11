"""``rbla`` command line.

Exit codes: 0 success (a "not-equivalent" decision included), 1 algebraic
failure, 2 malformed input or unusable files.  Documents go to stdout or to
``-o``; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures, io
from .classify import (DecompositionContext, EquivalenceWitness, check_witness_conditions,
                       decompose, transform_datum)
from .core import (FIXTURE_NAMES, check_lie, check_rb_lie, check_rb_morphism, fixture,
                   rb)
from .errors import (ClosureError, DecompositionError, InvalidInputError, InvalidWitnessError,
                     ShapeError)
from .exactla import Matrix, render_rational
from .extending import check_unified_axioms, unified_product, validate_datum
from .flag import (ExtendedDerivation, FlagStepError, build_flag_chain, check_extended_derivation,
                   decide_exder_equiv, flag_extend, partition_exders)
from .report import ConditionReport

OK, FAIL, BAD_INPUT = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would sys.exit(2) itself; route it through main instead
    def error(self, message):
        raise _Usage(message)


def _out(text: str) -> None:
    sys.stdout.write(text)


def _err(text: str) -> None:
    print(f"rbla: {text}", file=sys.stderr)


def _emit_report(rep: ConditionReport, subject: str, args, labels=None) -> int:
    if args.human:
        _out(f"{subject}: {rep.render(labels)}\n")
    else:
        _out(io.dumps(io.envelope("report", io.report_to_json(rep, subject))))
    return OK if rep.passed else FAIL


def _labels(L):
    return tuple(L.label(i) for i in range(L.dim))


def _base_report(R, exhaustive) -> ConditionReport:
    rep = ConditionReport(exhaustive=exhaustive)
    return rep.merge(check_rb_lie(R, exhaustive=exhaustive), prefix="base.")


def _write(path, kind, payload) -> None:
    try:
        io.write(path, kind, payload)
    except OSError as exc:
        raise io.FormatError(f"cannot write {path}: {exc}") from exc


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    kind, obj = io.read_as(args.file, "lie", "rb_lie", "datum", "exder", "chain")
    ex = args.exhaustive
    if kind == "lie":
        return _emit_report(check_lie(obj, exhaustive=ex), kind, args, _labels(obj))
    if kind == "rb_lie":
        return _emit_report(check_rb_lie(obj, exhaustive=ex), kind, args, _labels(obj.algebra))
    if kind == "chain":
        return _check_chain(obj, args)
    base = obj.base
    rep = _base_report(base, ex)
    if rep.passed:
        rep = (validate_datum(obj, exhaustive=ex) if kind == "datum"
               else check_extended_derivation(obj, exhaustive=ex))
    return _emit_report(rep, kind, args)


def _check_chain(obj, args) -> int:
    base, steps = obj
    rep = _base_report(base, args.exhaustive)
    if rep.passed:
        try:
            build_flag_chain(base, steps)
        except FlagStepError as exc:
            if exc.report is not None:
                rep.merge(exc.report, prefix=f"step{exc.step}.")
            else:
                rep.record(f"step{exc.step}.dimension", (exc.step,), (), ())
    return _emit_report(rep, "chain", args)


def cmd_unify(args) -> int:
    _, om = io.read_as(args.datum, "datum")
    U = unified_product(om)
    rep = check_unified_axioms(U, exhaustive=args.exhaustive)
    _write(args.output, "rb_lie", io.rb_to_json(U.product, unverified=not rep.passed))
    if not rep.passed:
        _err(f"product fails {', '.join(rep.conditions())}; written as unverified")
    return _emit_report(rep, "unify", args, _labels(U.product.algebra))


def _parse_indices(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip() != ""]
    except ValueError:
        raise io.FormatError(f"--sub expects comma-separated indices, got {text!r}") from None


def cmd_decompose(args) -> int:
    _, E = io.read_as(args.ambient, "rb_lie")
    try:
        ctx = DecompositionContext.from_split(E, _parse_indices(args.sub))
    except DecompositionError as exc:
        raise io.FormatError(str(exc)) from exc
    try:
        om = decompose(ctx)
    except ClosureError as exc:
        _err(f"not a Rota-Baxter subalgebra: {exc}")
        return FAIL
    _write(args.output, "datum", io.datum_to_json(om))
    rep = _base_report(om.base, args.exhaustive)
    if rep.passed:
        rep.merge(validate_datum(om, exhaustive=args.exhaustive))
    # the product of the recovered datum must map onto the ambient via (g, x) -> g + x
    P = unified_product(om).product
    rep.merge(check_rb_morphism(P, E, ctx.basis_matrix, exhaustive=args.exhaustive),
              prefix="roundtrip.")
    return _emit_report(rep, "decompose", args)


def cmd_transform(args) -> int:
    _, om = io.read_as(args.datum, "datum")
    kind, payload = io.read(args.witness)
    if kind != "witness":
        raise io.FormatError(f"{args.witness}: expected kind witness, got {kind}")
    try:
        w = io.witness_from_json(payload, om.n, om.vdim)
    except ShapeError as exc:
        raise io.FormatError(str(exc)) from exc
    try:
        om2 = transform_datum(om, w)
    except InvalidWitnessError as exc:
        _err(str(exc))
        return FAIL
    _write(args.output, "datum", io.datum_to_json(om2))
    rep = check_witness_conditions(om, om2, w, exhaustive=args.exhaustive)
    return _emit_report(rep, "transform", args)


def _load_exders(paths, args):
    items = [io.read_as(p, "exder")[1] for p in paths]
    if any(X.base != items[0].base for X in items[1:]):
        raise InvalidInputError("quadruples are over different Rota-Baxter algebras")
    for p, X in zip(paths, items):
        rep = _base_report(X.base, False)
        if rep.passed:
            rep = check_extended_derivation(X)
        if not rep.passed:
            raise InvalidInputError(f"{p} is not an extended derivation: {rep.conditions()}")
    return items


def cmd_exder(args) -> int:
    action, paths = args.action, args.files
    if action == "check":
        if len(paths) != 1:
            raise _Usage("exder check takes exactly one file")
        args.file = paths[0]
        return cmd_check(args)
    if action == "equiv":
        if len(paths) != 2:
            raise _Usage("exder equiv takes exactly two files")
        X, Y = _load_exders(paths, args)
        w = decide_exder_equiv(X, Y)
        if w is None:
            _out("not-equivalent\n")
        elif args.human:
            g1 = ", ".join(render_rational(x) for x in w.g1)
            _out(f"equivalent: g1 = ({g1}), k1 = {render_rational(w.k1)}\n")
        else:
            _out(io.dumps(io.envelope("witness", io.witness_to_json(w.to_equivalence_witness()))))
        return OK
    if action == "partition":
        if not paths:
            raise _Usage("exder partition needs at least one file")
        classes = partition_exders(_load_exders(paths, args))
        if args.human:
            for c, members in enumerate(classes):
                _out(f"class {c}: {', '.join(str(i) for i in members)}\n")
        else:
            _out(json.dumps({"classes": classes}) + "\n")
        return OK
    if action == "extend":
        if len(paths) != 1:
            raise _Usage("exder extend takes exactly one file")
        kind, obj = io.read_as(paths[0], "exder", "chain")
        base, steps = (obj.base, [obj]) if kind == "exder" else obj
        rep = _base_report(base, False)
        if not rep.passed:
            return _emit_report(rep, "extend", args)
        try:
            chain = build_flag_chain(base, steps)
        except FlagStepError as exc:
            _err(str(exc))
            return FAIL
        doc = io.dumps(io.envelope("rb_lie", io.rb_to_json(chain.algebras[-1])))
        if args.output:
            Path(args.output).write_text(doc, encoding="utf-8")
        else:
            _out(doc)
        return OK
    raise _Usage(f"unknown exder action {action!r}")


def demo_documents() -> dict:
    """File name to (kind, payload) for every shipped example."""
    docs = {}
    for name in FIXTURE_NAMES + ("abelian:3",):
        L = fixture(name)
        docs[f"lie_{name.replace(':', '')}.json"] = ("lie", io.lie_to_json(L))
    aff = fixtures.aff1_zero()
    docs["rb_aff1_zero.json"] = ("rb_lie", io.rb_to_json(aff))
    docs["rb_aff1_diag.json"] = ("rb_lie", io.rb_to_json(rb(aff.algebra, Matrix.diag([1, 0]))))
    docs["rb_aff1_identity.json"] = ("rb_lie", io.rb_to_json(rb(aff.algebra, Matrix.identity(2))))
    docs["rb_sl2_identity_minus1.json"] = ("rb_lie", io.rb_to_json(
        rb(fixture("sl2"), Matrix.identity(3), weight=-1)))
    docs["datum_fixture.json"] = ("datum", io.datum_to_json(fixtures.fixture_datum()))
    docs["datum_trivial.json"] = ("datum", io.datum_to_json(fixtures.trivial_datum()))
    docs["datum_bad.json"] = ("datum", io.datum_to_json(fixtures.bad_datum()))
    docs["ambient_fixture.json"] = ("rb_lie", io.rb_to_json(fixtures.fixture_product()))
    docs["ambient_direct_sum.json"] = ("rb_lie", io.rb_to_json(fixtures.direct_sum_ambient()))
    docs["witness_example.json"] = ("witness", io.witness_to_json(
        EquivalenceWitness(Matrix.from_rows([[1], [-1]]), Matrix.scalar(1, 2))))
    docs["exder_zero.json"] = ("exder", io.exder_to_json(fixtures.exder_zero()))
    docs["exder_ad_e1.json"] = ("exder", io.exder_to_json(fixtures.exder_ad_e1()))
    docs["exder_g0_shift.json"] = ("exder", io.exder_to_json(fixtures.exder_g0_shift()))
    docs["exder_fixture.json"] = ("exder", io.exder_to_json(fixtures.exder_fixture()))
    first = fixtures.exder_fixture()
    second = ExtendedDerivation.zero(flag_extend(aff, first))
    docs["chain_two_steps.json"] = ("chain", io.chain_to_json(aff, [first, second]))
    return docs


def cmd_demo(args) -> int:
    out = Path(args.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise io.FormatError(f"cannot create {out}: {exc}") from exc
    for name, (kind, payload) in demo_documents().items():
        _write(out / name, kind, payload)
        if args.human:
            _out(f"{out / name}\n")
    return OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--exhaustive", action="store_true", help="list every failing tuple")
    common.add_argument("--human", action="store_true", help="plain-text output")

    p = _Parser(prog="rbla", description="Rota-Baxter Lie algebras and their extending structures.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="validate a lie/rb_lie/datum/exder/chain file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("unify", parents=[common], help="build the unified product of a datum")
    s.add_argument("datum")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(fn=cmd_unify)

    s = sub.add_parser("decompose", parents=[common], help="read off a datum from an ambient algebra")
    s.add_argument("ambient")
    s.add_argument("--sub", required=True, help="0-based basis indices spanning the subalgebra")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(fn=cmd_decompose)

    s = sub.add_parser("transform", parents=[common], help="move a datum along a witness (r, v)")
    s.add_argument("datum")
    s.add_argument("--witness", required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(fn=cmd_transform)

    s = sub.add_parser("exder", parents=[common], help="extended derivations and flag extensions")
    s.add_argument("action", choices=("check", "equiv", "partition", "extend"))
    s.add_argument("files", nargs="*")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_exder)

    s = sub.add_parser("demo", parents=[common], help="write the built-in examples to a directory")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(fn=cmd_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except SystemExit as exc:        # --help
        return exc.code if isinstance(exc.code, int) else OK
    except _Usage as exc:
        _err(str(exc))
        return BAD_INPUT
    except (io.FormatError, ShapeError) as exc:
        _err(str(exc))
        return BAD_INPUT
    except InvalidInputError as exc:
        _err(str(exc))
        return FAIL
    except RecursionError:
        _err("input nested too deeply")
        return BAD_INPUT
    except Exception as exc:          # never a traceback on user input
        _err(f"internal error: {type(exc).__name__}: {exc}")
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
