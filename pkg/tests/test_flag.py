import pytest
from hypothesis import given

from rbla import fixtures as F
from rbla.core import abelian, aff1, check_rb_lie, check_rb_morphism, direct_sum, rb, restrict
from rbla.errors import InvalidInputError
from rbla.exactla import Matrix
from rbla.extending import ExtendingDatum, check_unified_axioms, unified_product, validate_datum
from rbla.flag import (ExDerWitness, ExtendedDerivation, FlagStepError, build_flag_chain,
                       check_extended_derivation, check_twisted_derivation, datum_from_exder,
                       decide_exder_equiv, exder_equations_hold, exder_from_datum, flag_extend,
                       partition_exders)
from rbla.generators import random_exder, random_rb_base, random_valid_exder

from conftest import rng_for, seeds


@pytest.mark.parametrize("beta,delta", [(0, 0), (3, -1), (1, 5)])
def test_aff1_twisted_derivations(beta, delta):
    L = aff1()
    D = Matrix.from_rows([[0, 0], [beta, delta]])       # D(e1) = beta e2, D(e2) = delta e2
    assert check_twisted_derivation(L, (0, 0), D).passed
    assert check_twisted_derivation(L, (0, 0), Matrix.zero(2, 2)).passed


@pytest.mark.parametrize("rows", [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[2, 0], [1, 1]]])
def test_aff1_non_derivations(rows):
    assert check_twisted_derivation(aff1(), (0, 0), Matrix.from_rows(rows)).conditions() == ["derivation"]


def test_character_must_kill_derived_algebra():
    assert check_twisted_derivation(aff1(), (0, 1), Matrix.zero(2, 2)).conditions() == ["epsilon"]


def test_extended_derivation_examples():
    assert check_extended_derivation(F.exder_zero()).passed
    assert check_extended_derivation(F.exder_fixture()).passed
    X = ExtendedDerivation(F.aff1_zero(), (1, 0), Matrix.zero(2, 2), (0, 0), 1)
    rep = check_extended_derivation(X)
    assert rep.conditions() == ["scalar"]
    assert rep.failures[0].lhs == (1,)


def test_datum_transfer_examples():
    assert datum_from_exder(F.exder_zero()) == F.trivial_datum()
    assert datum_from_exder(F.exder_fixture()) == F.fixture_datum()
    X = ExtendedDerivation(F.aff1_zero(), (0, 0), Matrix.zero(2, 2), (0, 0), 7)
    om = datum_from_exder(X)
    assert om.P2 == Matrix.scalar(1, 7)
    assert om.tril.is_zero() and om.trir.is_zero() and om.f.is_zero() and om.braces.is_zero()


@given(seeds)
def test_transfer_preserves_validity(seed):
    rng = rng_for(seed)
    base = random_rb_base(rng)
    X = random_exder(rng, base) if rng.random() < 0.5 else random_valid_exder(rng, base)
    om = datum_from_exder(X)
    assert exder_from_datum(om) == X
    assert check_extended_derivation(X).passed == validate_datum(om).passed


def test_exder_from_datum_rejects():
    with pytest.raises(InvalidInputError):
        exder_from_datum(ExtendingDatum.trivial(F.aff1_zero(), 2))


def test_decision_examples():
    Z = F.exder_zero()
    w = decide_exder_equiv(Z, Z)
    assert (w.g1, w.k1) == ((0, 0), 1)
    assert decide_exder_equiv(Z, F.exder_g0_shift()) is None
    assert decide_exder_equiv(F.exder_g0_shift(), Z) is None
    for c in (0, 1, -3):
        X = F.exder_ad_e1(g0=(0, c))
        Xp = ExtendedDerivation(F.aff1_zero(), (0, 0), Matrix.zero(2, 2), (0, c), 0)
        w = decide_exder_equiv(X, Xp)
        assert (w.g1, w.k1) == ((1, 0), 1)


def test_different_invariants_never_equivalent():
    X = ExtendedDerivation(F.aff1_zero(), (0, 0), Matrix.zero(2, 2), (0, 0), 1)
    assert decide_exder_equiv(F.exder_zero(), X) is None
    with pytest.raises(InvalidInputError):
        decide_exder_equiv(F.exder_zero(), ExtendedDerivation.zero(rb(abelian(2))))


def test_scaling_needs_k1_other_than_one():
    # over an abelian line with P = 0: D = 2 and D' = 1 differ by k1 = 2 only
    base = rb(abelian(1))
    X = ExtendedDerivation(base, (0,), Matrix.scalar(1, 2), (0,), 0)
    Y = ExtendedDerivation(base, (0,), Matrix.scalar(1, 1), (0,), 0)
    w = decide_exder_equiv(X, Y)
    assert w.k1 == 2 and exder_equations_hold(X, Y, w)
    assert decide_exder_equiv(X, ExtendedDerivation(base, (0,), Matrix.zero(1, 1), (0,), 0)) is None


@given(seeds)
def test_decision_reflexive_and_symmetric(seed):
    rng = rng_for(seed)
    base = random_rb_base(rng)
    X = random_valid_exder(rng, base)
    w = decide_exder_equiv(X, X)
    assert w is not None and exder_equations_hold(X, X, w)
    Y = random_valid_exder(rng, base) if rng.random() < 0.5 else _equivalent_copy(rng, X)
    forward, backward = decide_exder_equiv(X, Y), decide_exder_equiv(Y, X)
    assert (forward is None) == (backward is None)
    if forward is not None:
        assert forward.k1 != 0 and exder_equations_hold(X, Y, forward)
        assert exder_equations_hold(Y, X, forward.inverse())


def _equivalent_copy(rng, X):
    """A quadruple related to ``X`` by a random witness."""
    from rbla.classify import transform_datum
    w = ExDerWitness(tuple(rng.randint(-2, 2) for _ in range(X.base.dim)), rng.choice((1, -1, 2)))
    return exder_from_datum(transform_datum(datum_from_exder(X), w.to_equivalence_witness()))


@given(seeds)
def test_witness_gives_isomorphism_of_extensions(seed):
    rng = rng_for(seed)
    base = random_rb_base(rng)
    X = random_valid_exder(rng, base)
    Y = _equivalent_copy(rng, X)
    w = decide_exder_equiv(X, Y)
    assert w is not None
    from rbla.classify import psi_from_witness
    om = datum_from_exder(X)
    psi = psi_from_witness(om, w.to_equivalence_witness())
    assert check_rb_morphism(flag_extend(base, X), flag_extend(base, Y), psi).passed


def test_partition_example():
    items = [F.exder_zero(), F.exder_ad_e1(), F.exder_g0_shift()]
    assert partition_exders(items) == [[0, 1], [2]]
    assert partition_exders([]) == []


def test_flag_extend_examples():
    E = flag_extend(F.aff1_zero(), F.exder_zero())
    assert E == direct_sum(F.aff1_zero(), rb(abelian(1)))
    assert flag_extend(F.aff1_zero(), F.exder_fixture()) == F.fixture_product()
    bad = ExtendedDerivation(F.aff1_zero(), (1, 0), Matrix.zero(2, 2), (0, 0), 1)
    with pytest.raises(InvalidInputError):
        flag_extend(F.aff1_zero(), bad)


def test_chains():
    base = F.aff1_zero()
    chain = build_flag_chain(base, [F.exder_zero(), ExtendedDerivation.zero(rb(abelian(3)))])
    assert [A.dim for A in chain.algebras] == [2, 3, 4]
    assert all(check_rb_lie(A).passed for A in chain.algebras)
    assert restrict(chain.algebras[2], [(1, 0, 0, 0), (0, 1, 0, 0)]) == base
    with pytest.raises(FlagStepError) as info:
        build_flag_chain(base, [F.exder_zero(), ExtendedDerivation.zero(base)])
    assert info.value.step == 1
    bad = ExtendedDerivation(rb(abelian(3)), (0, 0, 0), Matrix.identity(3), (0, 0, 0), 0)
    # identity on the 3-dim extension of aff1 is not a derivation
    with pytest.raises(FlagStepError) as info:
        build_flag_chain(base, [F.exder_fixture(), bad])
    assert info.value.report.conditions()[0] == "derivation"


@given(seeds)
def test_random_chain_steps_stay_valid(seed):
    rng = rng_for(seed)
    base = random_rb_base(rng, names=("abelian:2", "aff1"))
    current, steps = base, []
    for _ in range(2):
        X = random_valid_exder(rng, current)
        steps.append(X)
        current = flag_extend(current, X)
        assert check_unified_axioms(unified_product(datum_from_exder(X))).passed
    assert build_flag_chain(base, steps).algebras[-1] == current
