from itertools import product

import pytest
from hypothesis import given

from rbla.core import (FIXTURE_NAMES, LinearAction, RBModule, abelian, adjoint_action, aff1,
                       change_basis, check_lie, check_module, check_rb, check_rb_lie,
                       check_rb_module, check_rb_morphism, direct_sum, fixture, heisenberg3,
                       lie_from_brackets, rb, restrict, sl2)
from rbla.errors import ClosureError, InvalidInputError
from rbla.exactla import Matrix, Tensor3
from rbla.generators import operator_candidates, random_invertible, random_rb_base

from conftest import rng_for, seeds


@pytest.mark.parametrize("name", FIXTURE_NAMES + ("abelian:1", "abelian:4"))
def test_fixtures_are_lie(name):
    assert check_lie(fixture(name)).passed


def test_sl2_brackets():
    L = sl2()
    assert L.br_basis(0, 1) == (0, 2, 0)
    assert L.br_basis(1, 2) == (1, 0, 0)
    assert L.label(0) == "h" and aff1().label(1) == "e2"


def test_non_alternating_bracket_reported():
    L = lie_from_brackets(2, {(0, 0): (0, 1)})
    rep = check_lie(L)
    assert rep.conditions()[0] == "antisymmetry"
    assert rep.failures[0].indices == (0, 0)


def test_jacobi_failure_reported():
    # [e1,e2] = e3, [e1,e3] = e1, [e2,e3] = 0: the Jacobiator of (e1,e2,e3) is e3
    L = lie_from_brackets(3, {(0, 1): (0, 0, 1), (1, 0): (0, 0, -1),
                              (0, 2): (1, 0, 0), (2, 0): (-1, 0, 0)})
    assert check_lie(L).conditions() == ["jacobi"]


def test_exhaustive_lists_every_failure():
    L = lie_from_brackets(2, {(0, 0): (1, 0), (1, 1): (0, 1)})
    assert len(check_lie(L, exhaustive=True).failures) > len(check_lie(L).failures)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
@pytest.mark.parametrize("lam", [-2, -1, 0, 1, 2])
def test_zero_and_minus_lambda_identity(name, lam):
    L = fixture(name)
    assert check_rb(rb(L, None, lam)).passed
    assert check_rb(rb(L, Matrix.scalar(L.dim, -lam), lam)).passed


def test_aff1_examples():
    assert check_rb(rb(aff1(), Matrix.diag([1, 0]))).passed
    rep = check_rb(rb(aff1(), Matrix.identity(2)))
    assert not rep.passed
    f = rep.failures[0]
    assert (f.condition, f.indices) == ("rota_baxter", (0, 1))
    assert check_rb(rb(sl2(), Matrix.identity(3), -1)).passed


def test_check_rb_requires_lie():
    with pytest.raises(InvalidInputError):
        check_rb(rb(lie_from_brackets(1, {(0, 0): (1,)})))
    assert not check_rb_lie(rb(lie_from_brackets(1, {(0, 0): (1,)}))).passed


def _aff1_rb_by_hand(a, b, c, d):
    """Expand [Pu, Pv] = P([Pu, v] + [u, Pv]) on all basis pairs of aff(1).

    Here P(e1) = a e1 + b e2 and P(e2) = c e1 + d e2; [u, v] = (u1 v2 - u2 v1) e2.
    """
    P = {0: (a, b), 1: (c, d)}

    def br(u, v):
        return (0, u[0] * v[1] - u[1] * v[0])

    def apply(u):
        return (u[0] * a + u[1] * c, u[0] * b + u[1] * d)

    basis = {0: (1, 0), 1: (0, 1)}
    for i in range(2):
        for j in range(2):
            lhs = br(P[i], P[j])
            s = tuple(x + y for x, y in zip(br(P[i], basis[j]), br(basis[i], P[j])))
            if lhs != apply(s):
                return False
    return True


def test_aff1_operator_classification_625():
    L = aff1()
    agree = 0
    for a, b, c, d in product(range(-2, 3), repeat=4):
        M = Matrix.from_rows([[a, c], [b, d]])      # columns are P(e1), P(e2)
        verdict = check_rb(rb(L, M)).passed
        poly = c * (a + d) == 0 and d * d == -b * c
        assert verdict == poly == _aff1_rb_by_hand(a, b, c, d), (a, b, c, d)
        agree += 1
    assert agree == 625


def test_morphism_examples():
    R = rb(aff1(), Matrix.diag([1, 0]))
    assert check_rb_morphism(R, R, Matrix.identity(2)).passed
    assert check_rb_morphism(R, rb(sl2()), Matrix.zero(3, 2)).passed
    rep = check_rb_morphism(R, rb(aff1()), Matrix.identity(2))
    assert rep.conditions() == ["operator"]
    with pytest.raises(InvalidInputError):
        check_rb_morphism(R, rb(aff1(), None, 1), Matrix.identity(2))


def test_module_examples():
    for name in FIXTURE_NAMES:
        L = fixture(name)
        assert check_module(adjoint_action(L)).passed
        assert check_module(adjoint_action(L, "right")).passed
    R = rb(aff1(), Matrix.diag([1, 0]))
    assert check_rb_module(RBModule(R, adjoint_action(R.algebra), R.operator)).passed
    bad = check_rb_module(RBModule(R, adjoint_action(R.algebra), Matrix.identity(2)))
    assert bad.conditions() == ["rb_module"]


def test_action_side_conversion():
    A = adjoint_action(sl2())
    assert A.to_right().to_left() == A
    g, v = (1, 2, 0), (0, 1, -1)
    assert A.to_right().act(g, v) == tuple(-x for x in A.act(g, v))


def test_non_module_detected():
    # e2 acting by 1 on k^1 while e1 acts by 0: [e1,e2] = e2 would have to act by 0
    T = Tensor3.from_entries([[[0], [1]]])
    assert check_module(LinearAction(aff1(), 1, T, "left")).passed is False


@given(seeds)
def test_change_basis_is_isomorphism(seed):
    rng = rng_for(seed)
    R = random_rb_base(rng)
    B = random_invertible(rng, R.dim, density=0.7)
    S = change_basis(R, B)
    assert check_rb_lie(S).passed
    assert check_rb_morphism(S, R, B).passed


def test_restrict():
    R = rb(heisenberg3())
    with pytest.raises(ClosureError):
        restrict(R, [(1, 0, 0), (0, 1, 0)])
    Z = restrict(R, [(0, 0, 1)])
    assert Z.dim == 1 and Z.algebra.bracket.is_zero()
    with pytest.raises(ClosureError):
        restrict(rb(aff1(), Matrix.diag([1, 0])), [(1, 1)])
    with pytest.raises(InvalidInputError):
        restrict(R, [(1, 0, 0), (2, 0, 0)])
    sub = restrict(R, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert sub == R


def test_direct_sum():
    lam = -1
    A = rb(sl2(), Matrix.identity(3), lam)
    B = rb(aff1(), operator_candidates("aff1", lam)[-1], lam)
    S = direct_sum(A, B)
    assert S.dim == 5 and check_rb_lie(S).passed
    assert S.br((0, 1, 0, 0, 0), (0, 0, 0, 0, 1)) == (0,) * 5
    with pytest.raises(InvalidInputError):
        direct_sum(A, rb(abelian(1)))
