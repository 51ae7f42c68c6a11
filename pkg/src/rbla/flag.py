"""Codimension-one extensions: twisted and extended derivations, their
equivalence decision, and iterated flag chains.

A one-dimensional extending datum through ``V = k x`` is the same thing as a
quadruple ``(eps, D, g0, k0)`` via ``x < g = eps(g) x``, ``x > g = D(g)``,
``P1(x) = g0``, ``P2(x) = k0 x`` and ``f = {,} = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classify import EquivalenceWitness
from .core import LieAlgebra, RBLieAlgebra, check_rb_lie, restrict
from .errors import InvalidInputError, ShapeError
from .exactla import (Matrix, Tensor3, solve_affine, to_rational, unit_vector, vadd,
                      vscale, vsum, zero_vector)
from .extending import ExtendingDatum, _require_rb_base, unified_product
from .report import ConditionReport


@dataclass(frozen=True)
class ExtendedDerivation:
    base: RBLieAlgebra
    epsilon: tuple   # row vector, eps(e_j)
    D: Matrix
    g0: tuple
    k0: Fraction

    def __post_init__(self):
        n = self.base.dim
        eps = tuple(to_rational(x) for x in self.epsilon)
        g0 = tuple(to_rational(x) for x in self.g0)
        if len(eps) != n or len(g0) != n:
            raise ShapeError(f"epsilon/g0 of lengths {len(eps)}/{len(g0)} for dimension {n}")
        if self.D.shape != (n, n):
            raise ShapeError(f"D of shape {self.D.shape} for dimension {n}")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "g0", g0)
        object.__setattr__(self, "k0", to_rational(self.k0))

    @classmethod
    def zero(cls, base: RBLieAlgebra) -> "ExtendedDerivation":
        n = base.dim
        return cls(base, zero_vector(n), Matrix.zero(n, n), zero_vector(n), 0)

    def eps(self, g: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.epsilon, g)), Fraction(0))


def check_twisted_derivation(L: LieAlgebra, epsilon: Sequence, D: Matrix,
                             exhaustive: bool = False) -> ConditionReport:
    """``eps([g,h]) = 0`` and ``D[g,h] = [Dg,h] + [g,Dh] + eps(g) Dh - eps(h) Dg`` on basis pairs."""
    n = L.dim
    eps = tuple(to_rational(x) for x in epsilon)
    if len(eps) != n or D.shape != (n, n):
        raise ShapeError("epsilon or D does not match the algebra dimension")
    report = ConditionReport(exhaustive=exhaustive)
    _twisted_into(L, eps, D, report)
    return report


def _twisted_into(L, eps, D, report):
    n = L.dim
    im = L.bracket.images

    def e(u):
        return sum((a * b for a, b in zip(eps, u)), Fraction(0))

    for i in range(n):
        for j in range(n):
            val = e(im[i][j])
            if val:
                report.record("epsilon", (i, j), (val,), (Fraction(0),))
                if not report.exhaustive:
                    break
        if not report.wants("epsilon"):
            break
    for i in range(n):
        for j in range(n):
            lhs, rhs = _derivation_sides(L, eps, D, i, j)
            if lhs != rhs:
                report.record("derivation", (i, j), lhs, rhs)
                if not report.exhaustive:
                    return


def _derivation_sides(L, eps, D, i, j):
    n = L.dim
    Dc = D.columns
    lhs = D.apply(L.bracket.images[i][j])
    rhs = vsum([L.br(Dc[i], unit_vector(n, j)), L.br(unit_vector(n, i), Dc[j]),
                vscale(eps[i], Dc[j]), vscale(-eps[j], Dc[i])], n)
    return lhs, rhs


def exder_residual(X: ExtendedDerivation) -> tuple:
    """All twisted-derivation and operator residuals, concatenated.

    For fixed ``eps`` and ``k0`` this is linear in ``(D, g0)``.
    """
    L, n = X.base.algebra, X.base.dim
    out = []
    for i in range(n):
        for j in range(n):
            lhs, rhs = _derivation_sides(L, X.epsilon, X.D, i, j)
            out.extend(a - b for a, b in zip(lhs, rhs))
    for i in range(n):
        out.extend(operator_residual(X, i))
    return tuple(out)


def check_extended_derivation(X: ExtendedDerivation, exhaustive: bool = False) -> ConditionReport:
    """Twisted-derivation conditions, the operator identity (id ``operator``) on each
    basis vector, and ``(k0^2 + lam k0) eps(e_i) = 0`` (id ``scalar``)."""
    _require_rb_base(X.base)
    n = X.base.dim
    lam, k0 = X.base.weight, X.k0
    report = ConditionReport(exhaustive=exhaustive)
    _twisted_into(X.base.algebra, X.epsilon, X.D, report)
    zero = zero_vector(n)
    for i in range(n):
        total = operator_residual(X, i)
        if any(total):
            report.record("operator", (i,), total, zero)
            if not exhaustive:
                break
    for i in range(n):
        val = (k0 * k0 + lam * k0) * X.epsilon[i]
        if val:
            report.record("scalar", (i,), (val,), (Fraction(0),))
            if not exhaustive:
                break
    return report


def operator_residual(X: ExtendedDerivation, i: int) -> tuple:
    """Left side minus right side of the operator identity at ``e_i``; zero iff it holds there."""
    B = X.base
    n = B.dim
    P, br, lam = B.P, B.br, B.weight
    D, g0, k0 = X.D, X.g0, X.k0
    g = unit_vector(n, i)
    Pg = P(g)
    eg = X.epsilon[i]
    return vsum([br(Pg, g0), vscale(-k0, D.apply(Pg)), P(D.apply(Pg)), vscale(X.eps(Pg), g0),
                 vscale(-1, P(br(g, g0))), P(vscale(k0, D.apply(g))), vscale(k0 * eg, g0),
                 vscale(lam, P(D.apply(g))), vscale(lam * eg, g0)], n)


def datum_from_exder(X: ExtendedDerivation) -> ExtendingDatum:
    n = X.base.dim
    tril = Tensor3(1, 1, n, (((tuple(X.epsilon)),),))
    trir = Tensor3(n, 1, n, tuple((tuple(X.D.row(k)),) for k in range(n)))
    return ExtendingDatum.build(X.base, 1, tril=tril, trir=trir,
                                P1=Matrix.from_columns([X.g0], n), P2=Matrix.scalar(1, X.k0))


def exder_from_datum(om: ExtendingDatum) -> ExtendedDerivation:
    if om.vdim != 1:
        raise InvalidInputError(f"need a one-dimensional complement, got {om.vdim}")
    if not om.f.is_zero() or not om.braces.is_zero():
        raise InvalidInputError("f and {,} must vanish on a one-dimensional space")
    n = om.n
    eps = om.tril.entries[0][0]
    D = Matrix(n, n, tuple(om.trir.entries[k][0] for k in range(n)))
    return ExtendedDerivation(om.base, eps, D, om.P1.column(0), om.P2[0, 0])


# -- equivalence -------------------------------------------------------------

@dataclass(frozen=True)
class ExDerWitness:
    """``(g1, k1)`` with ``D = k1 D' + [g1, -] - eps(-) g1`` and ``g0 = P g1 + k1 g0' - k0 g1``."""
    g1: tuple
    k1: Fraction

    def to_equivalence_witness(self) -> EquivalenceWitness:
        n = len(self.g1)
        return EquivalenceWitness(Matrix.from_columns([self.g1], n), Matrix.scalar(1, self.k1))

    def inverse(self) -> "ExDerWitness":
        return ExDerWitness(vscale(-1 / self.k1, self.g1), 1 / self.k1)


def exder_equations_hold(X: ExtendedDerivation, Xp: ExtendedDerivation, w: ExDerWitness) -> bool:
    """Direct substitution of a witness into both defining equations, with ``k1 != 0``."""
    if w.k1 == 0 or X.epsilon != Xp.epsilon or X.k0 != Xp.k0:
        return False
    B = X.base
    n = B.dim
    for j in range(n):
        g = unit_vector(n, j)
        rhs = vsum([vscale(w.k1, Xp.D.apply(g)), B.br(w.g1, g), vscale(-X.epsilon[j], w.g1)], n)
        if X.D.apply(g) != rhs:
            return False
    rhs = vsum([B.P(w.g1), vscale(w.k1, Xp.g0), vscale(-X.k0, w.g1)], n)
    return tuple(X.g0) == rhs


def decide_exder_equiv(X: ExtendedDerivation, Xp: ExtendedDerivation) -> ExDerWitness | None:
    """A witness ``(g1, k1)`` that ``X`` and ``Xp`` are equivalent, or None.

    Both equations are linear in ``(k1, g1)``; the affine solution set is
    computed exactly and ``k1 != 0`` is decided on it.  ``k1 = 1`` is chosen
    whenever the solution set allows it.
    """
    if X.base != Xp.base:
        raise InvalidInputError("extended derivations over different bases")
    if X.epsilon != Xp.epsilon or X.k0 != Xp.k0:
        return None
    B = X.base
    n = B.dim
    c = B.algebra.bracket.entries
    eps, k0 = X.epsilon, X.k0
    rows, rhs = [], []
    # unknowns z = (k1, g1_0, ..., g1_{n-1})
    for j in range(n):
        for k in range(n):
            row = [Xp.D[k, j]] + [c[k][i][j] - (eps[j] if i == k else 0) for i in range(n)]
            rows.append(row)
            rhs.append(X.D[k, j])
    P = B.operator
    for k in range(n):
        rows.append([Xp.g0[k]] + [P[k, i] - (k0 if i == k else 0) for i in range(n)])
        rhs.append(X.g0[k])
    sol = solve_affine(Matrix.from_rows(rows, n + 1), rhs)
    if sol.is_empty:
        return None
    p = sol.particular
    if p[0] == 1:
        z = p
    else:
        free = next((v for v in sol.nullspace_basis if v[0] != 0), None)
        if free is not None:
            z = vadd(p, vscale((1 - p[0]) / free[0], free))
        elif p[0] != 0:
            z = p
        else:
            return None
    w = ExDerWitness(tuple(z[1:]), z[0])
    if not exder_equations_hold(X, Xp, w):
        raise ArithmeticError("witness failed post-verification")
    return w


def partition_exders(items: Sequence[ExtendedDerivation]) -> list[list[int]]:
    """Equivalence classes as sorted index lists, ordered by smallest member."""
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if find(i) != find(j) and decide_exder_equiv(items[i], items[j]) is not None:
                a, b = sorted((find(i), find(j)))
                parent[b] = a
    groups: dict[int, list[int]] = {}
    for i in range(len(items)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


# -- flags -------------------------------------------------------------------

class FlagStepError(InvalidInputError):
    def __init__(self, step: int, report: ConditionReport | None, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step
        self.report = report


def flag_extend(base: RBLieAlgebra, X: ExtendedDerivation) -> RBLieAlgebra:
    """The ``dim + 1`` dimensional unified product determined by ``X``."""
    if X.base != base:
        raise InvalidInputError("extended derivation is over a different algebra")
    rep = check_extended_derivation(X)
    if not rep.passed:
        raise InvalidInputError(f"not an extended derivation: {rep.conditions()}")
    return unified_product(datum_from_exder(X)).product


@dataclass(frozen=True)
class FlagChain:
    steps: tuple
    algebras: tuple = field(default=())


def rebase(X: ExtendedDerivation, base: RBLieAlgebra) -> ExtendedDerivation:
    return ExtendedDerivation(base, X.epsilon, X.D, X.g0, X.k0)


def build_flag_chain(base: RBLieAlgebra, steps: Sequence[ExtendedDerivation]) -> FlagChain:
    """Extend ``base`` once per step, re-validating each step against the current algebra.

    Each step's own ``base`` field is ignored in favour of the running algebra
    (its dimension must match).
    """
    current = base
    algebras = [base]
    used = []
    for i, X in enumerate(steps):
        if X.base.dim != current.dim:
            raise FlagStepError(i, None, f"quadruple for dim {X.base.dim}, algebra has dim {current.dim}")
        X = rebase(X, current)
        rep = check_extended_derivation(X)
        if not rep.passed:
            raise FlagStepError(i, rep, f"failed condition {rep.conditions()[0]}")
        nxt = unified_product(datum_from_exder(X)).product
        sub = restrict(nxt, [unit_vector(nxt.dim, k) for k in range(current.dim)],
                       labels=current.algebra.labels)
        if sub != current or not check_rb_lie(nxt).passed:
            raise FlagStepError(i, None, "extension does not contain the previous algebra")
        used.append(X)
        algebras.append(nxt)
        current = nxt
    return FlagChain(tuple(used), tuple(algebras))
