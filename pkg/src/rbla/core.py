"""Lie algebras by structure constants, Rota-Baxter operators, morphisms, modules.

All checkers work exhaustively on basis elements; by multilinearity a pass
means the identity holds for all vectors.  Checkers return a
``ConditionReport`` rather than raising, so failing inputs can be inspected.
Indices in reports are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ClosureError, InvalidInputError, ShapeError
from .exactla import (Matrix, Tensor3, Vector, apply_bilinear, block_matrix, solve_affine,
                      to_rational, unit_vector, vscale, vsub, vsum, zero_vector)
from .report import ConditionReport


@dataclass(frozen=True)
class LieAlgebra:
    """A bracket on ``k^dim`` given by its structure constants.

    Neither antisymmetry nor Jacobi is enforced here: products built from
    arbitrary data must be representable so that ``check_lie`` can reject them.
    """
    dim: int
    bracket: Tensor3
    labels: tuple | None = None

    def __post_init__(self):
        if self.bracket.shape != (self.dim,) * 3:
            raise ShapeError(f"bracket of shape {self.bracket.shape} for dimension {self.dim}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.dim:
                raise ShapeError(f"{len(labels)} labels for dimension {self.dim}")
            object.__setattr__(self, "labels", labels)

    def br(self, u: Sequence, v: Sequence) -> Vector:
        return apply_bilinear(self.bracket, u, v)

    def br_basis(self, i: int, j: int) -> Vector:
        return self.bracket.images[i][j]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i + 1}"

    def is_abelian(self) -> bool:
        return self.bracket.is_zero()


@dataclass(frozen=True)
class RBLieAlgebra:
    algebra: LieAlgebra
    weight: Fraction
    operator: Matrix

    def __post_init__(self):
        object.__setattr__(self, "weight", to_rational(self.weight))
        n = self.algebra.dim
        if self.operator.shape != (n, n):
            raise ShapeError(f"operator of shape {self.operator.shape} on a {n}-dim algebra")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def br(self, u, v) -> Vector:
        return self.algebra.br(u, v)

    def P(self, u) -> Vector:
        return self.operator.apply(u)


def lie_from_brackets(dim: int, brackets: Mapping[tuple[int, int], Sequence],
                      labels=None) -> LieAlgebra:
    """Build a bracket from ``{(i, j): [e_i, e_j]}``, filling in ``[e_j, e_i]`` by antisymmetry."""
    images = {}
    for (i, j), img in brackets.items():
        img = tuple(to_rational(x) for x in img)
        images[(i, j)] = img
        images[(j, i)] = tuple(-x for x in img)
    zero = zero_vector(dim)
    T = Tensor3.from_function(dim, dim, dim, lambda i, j: images.get((i, j), zero))
    return LieAlgebra(dim, T, labels)


# -- fixtures ----------------------------------------------------------------

def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, Tensor3.zero(n, n, n))


def aff1() -> LieAlgebra:
    """Two-dimensional non-abelian algebra: [e1, e2] = e2."""
    return lie_from_brackets(2, {(0, 1): (0, 1)})


def heisenberg3() -> LieAlgebra:
    return lie_from_brackets(3, {(0, 1): (0, 0, 1)})


def sl2() -> LieAlgebra:
    """Basis (h, e, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return lie_from_brackets(3, {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)},
                             labels=("h", "e", "f"))


def fixture(name: str) -> LieAlgebra:
    """Look up a built-in algebra: ``abelian:n``, ``aff1``, ``heisenberg3``, ``sl2``."""
    if name.startswith("abelian:"):
        n = int(name.split(":", 1)[1])
        if n < 0:
            raise ValueError("negative dimension")
        return abelian(n)
    table = {"aff1": aff1, "heisenberg3": heisenberg3, "sl2": sl2}
    if name not in table:
        raise KeyError(f"unknown fixture {name!r}")
    return table[name]()


FIXTURE_NAMES = ("abelian:2", "aff1", "heisenberg3", "sl2")


def rb(algebra: LieAlgebra, operator=None, weight=0) -> RBLieAlgebra:
    """Convenience constructor; ``operator`` may be a Matrix or nested rows, default zero."""
    n = algebra.dim
    if operator is None:
        operator = Matrix.zero(n, n)
    elif not isinstance(operator, Matrix):
        operator = Matrix.from_rows(operator, n)
    return RBLieAlgebra(algebra, weight, operator)


# -- checkers ----------------------------------------------------------------

def _bracket_with_basis(T: Tensor3, u: Sequence, l: int) -> list:
    """``[u, e_l]`` for a bracket tensor ``T`` (as a mutable list)."""
    acc = [Fraction(0)] * T.dim_out
    images = T.images
    for k, uk in enumerate(u):
        if uk:
            for m, c in enumerate(images[k][l]):
                if c:
                    acc[m] += uk * c
    return acc


def is_antisymmetric(L: LieAlgebra) -> bool:
    im = L.bracket.images
    n = L.dim
    return all(all(a == -b for a, b in zip(im[i][j], im[j][i]))
               for i in range(n) for j in range(i, n))


def check_lie(L: LieAlgebra, exhaustive: bool = False) -> ConditionReport:
    """Antisymmetry on all basis pairs, then Jacobi on basis triples.

    When the bracket is antisymmetric the Jacobiator is alternating, so only
    strictly increasing triples are evaluated; otherwise all ordered triples.
    """
    report = ConditionReport(exhaustive=exhaustive)
    _lie_into(L, report)
    return report


def _lie_into(L: LieAlgebra, report: ConditionReport) -> None:
    n = L.dim
    im = L.bracket.images
    anti = True
    for i in range(n):
        for j in range(i, n):
            neg = tuple(-x for x in im[j][i])
            if im[i][j] != neg:
                anti = False
                report.record("antisymmetry", (i, j), im[i][j], neg)
                if not report.exhaustive:
                    break
        if not anti and not report.exhaustive:
            break
    T = L.bracket
    if anti:
        triples = ((i, j, l) for i in range(n) for j in range(i + 1, n) for l in range(j + 1, n))
    else:
        triples = ((i, j, l) for i in range(n) for j in range(n) for l in range(n))
    zero = zero_vector(n)
    for i, j, l in triples:
        a = _bracket_with_basis(T, im[i][j], l)
        b = _bracket_with_basis(T, im[j][l], i)
        c = _bracket_with_basis(T, im[l][i], j)
        total = tuple(x + y + z for x, y, z in zip(a, b, c))
        if any(total):
            report.record("jacobi", (i, j, l), total, zero)
            if not report.exhaustive:
                break


def _rb_into(R: RBLieAlgebra, report: ConditionReport) -> None:
    n = R.dim
    P = R.operator
    Pcols = P.columns
    lam = R.weight
    im = R.algebra.bracket.images
    T = R.algebra.bracket
    for i in range(n):
        for j in range(i + 1, n):
            lhs = R.br(Pcols[i], Pcols[j])
            inner = vsum([_neg(_bracket_with_basis(T, Pcols[j], i)),
                          _bracket_with_basis(T, Pcols[i], j),
                          vscale(lam, im[i][j])], n)
            rhs = P.apply(inner)
            if lhs != rhs:
                report.record("rota_baxter", (i, j), lhs, rhs)
                if not report.exhaustive:
                    return


def _neg(u) -> Vector:
    return tuple(-x for x in u)


def check_rb(R: RBLieAlgebra, exhaustive: bool = False) -> ConditionReport:
    """Weighted Rota-Baxter identity ``[Pg, Ph] = P([Pg, h] + [g, Ph] + lam [g, h])``.

    Raises InvalidInputError when the underlying bracket is not a Lie bracket.
    Since the identity is antisymmetric in ``(g, h)`` for a Lie bracket, pairs
    ``i < j`` cover every basis pair.
    """
    lie = check_lie(R.algebra)
    if not lie.passed:
        raise InvalidInputError(f"not a Lie algebra: {lie.conditions()}")
    report = ConditionReport(exhaustive=exhaustive)
    _rb_into(R, report)
    return report


def check_rb_lie(R: RBLieAlgebra, exhaustive: bool = False) -> ConditionReport:
    """Lie axioms and Rota-Baxter identity in one report, never raising on failure."""
    report = ConditionReport(exhaustive=exhaustive)
    _lie_into(R.algebra, report)
    if report.passed:
        _rb_into(R, report)
    return report


def check_rb_morphism(src: RBLieAlgebra, dst: RBLieAlgebra, F: Matrix,
                      exhaustive: bool = False) -> ConditionReport:
    """``F [a, b] = [F a, F b]`` on basis pairs and ``F P_src = P_dst F``."""
    if src.weight != dst.weight:
        raise InvalidInputError(f"weights differ: {src.weight} vs {dst.weight}")
    if F.shape != (dst.dim, src.dim):
        raise ShapeError(f"map of shape {F.shape} between dims {src.dim} -> {dst.dim}")
    report = ConditionReport(exhaustive=exhaustive)
    Fc = F.columns
    im = src.algebra.bracket.images
    for i in range(src.dim):
        for j in range(src.dim):
            lhs = F.apply(im[i][j])
            rhs = dst.br(Fc[i], Fc[j])
            if lhs != rhs:
                report.record("bracket", (i, j), lhs, rhs)
                if not exhaustive:
                    break
        if not report.wants("bracket"):
            break
    FP = F @ src.operator
    PF = dst.operator @ F
    for j in range(src.dim):
        if not report.compare("operator", (j,), FP.column(j), PF.column(j)) and not exhaustive:
            break
    return report


# -- modules -----------------------------------------------------------------

@dataclass(frozen=True)
class LinearAction:
    """An action of ``algebra`` on ``k^module_dim``.

    ``side == "left"``: tensor shape (m, n, m), ``c[k][i][j]`` = coords of ``e_i > v_j``.
    ``side == "right"``: tensor shape (m, m, n), ``c[k][i][j]`` = coords of ``v_i < e_j``.
    """
    algebra: LieAlgebra
    module_dim: int
    tensor: Tensor3
    side: str = "left"

    def __post_init__(self):
        n, m = self.algebra.dim, self.module_dim
        if self.side == "left":
            want = (m, n, m)
        elif self.side == "right":
            want = (m, m, n)
        else:
            raise ValueError(f"side must be 'left' or 'right', not {self.side!r}")
        if self.tensor.shape != want:
            raise ShapeError(f"{self.side} action tensor of shape {self.tensor.shape}, expected {want}")

    def act(self, g: Sequence, v: Sequence) -> Vector:
        """``g > v`` for a left action, ``v < g`` for a right action."""
        if self.side == "left":
            return apply_bilinear(self.tensor, g, v)
        return apply_bilinear(self.tensor, v, g)

    def to_left(self) -> "LinearAction":
        """Left action ``g > x := -(x < g)`` (identity on left actions)."""
        if self.side == "left":
            return self
        m, n = self.module_dim, self.algebra.dim
        t = self.tensor.entries
        T = Tensor3(m, n, m, tuple(tuple(tuple(-t[k][j][i] for j in range(m)) for i in range(n))
                                   for k in range(m)))
        return LinearAction(self.algebra, m, T, "left")

    def to_right(self) -> "LinearAction":
        if self.side == "right":
            return self
        m, n = self.module_dim, self.algebra.dim
        t = self.tensor.entries
        T = Tensor3(m, m, n, tuple(tuple(tuple(-t[k][j][i] for j in range(n)) for i in range(m))
                                   for k in range(m)))
        return LinearAction(self.algebra, m, T, "right")


def adjoint_action(L: LieAlgebra, side: str = "left") -> LinearAction:
    return LinearAction(L, L.dim, L.bracket, side)


@dataclass(frozen=True)
class RBModule:
    base: RBLieAlgebra
    action: LinearAction
    T: Matrix

    def __post_init__(self):
        if self.action.algebra != self.base.algebra:
            raise ShapeError("action is not over the base algebra")
        m = self.action.module_dim
        if self.T.shape != (m, m):
            raise ShapeError(f"T of shape {self.T.shape} on a {m}-dim module")

    @property
    def space_dim(self) -> int:
        return self.action.module_dim


def check_module(action: LinearAction, exhaustive: bool = False) -> ConditionReport:
    """Module law on all basis triples.

    left:  ``[g,h] > x = g > (h > x) - h > (g > x)``
    right: ``x < [g,h] = (x < g) < h - (x < h) < g``
    """
    report = ConditionReport(exhaustive=exhaustive)
    _module_into(action, report, "module")
    return report


def _module_into(action: LinearAction, report: ConditionReport, cid: str) -> None:
    n, m = action.algebra.dim, action.module_dim
    im = action.algebra.bracket.images
    for i in range(n):
        gi = unit_vector(n, i)
        for j in range(n):
            gj = unit_vector(n, j)
            gij = im[i][j]
            for l in range(m):
                x = unit_vector(m, l)
                if action.side == "left":
                    lhs = action.act(gij, x)
                    rhs = vsub(action.act(gi, action.act(gj, x)), action.act(gj, action.act(gi, x)))
                else:
                    lhs = action.act(gij, x)
                    rhs = vsub(action.act(gj, action.act(gi, x)), action.act(gi, action.act(gj, x)))
                if lhs != rhs:
                    report.record(cid, (i, j, l), lhs, rhs)
                    if not report.exhaustive:
                        return


def _rb_module_into(M: RBModule, report: ConditionReport, cid: str) -> None:
    n, m = M.base.dim, M.space_dim
    act = M.action.act
    P = M.base.operator
    lam = M.base.weight
    T = M.T
    for i in range(n):
        g = unit_vector(n, i)
        Pg = P.column(i)
        for l in range(m):
            v = unit_vector(m, l)
            Tv = T.column(l)
            # left:  P(g) > T(v) = T(P(g) > v + g > T(v) + lam g > v)
            # right: T(v) < P(g) = T(T(v) < g + v < P(g) + lam v < g)
            lhs = act(Pg, Tv)
            if M.action.side == "left":
                inner = vsum([act(Pg, v), act(g, Tv), vscale(lam, act(g, v))], m)
            else:
                inner = vsum([act(g, Tv), act(Pg, v), vscale(lam, act(g, v))], m)
            rhs = T.apply(inner)
            if lhs != rhs:
                report.record(cid, (i, l), lhs, rhs)
                if not report.exhaustive:
                    return


def check_rb_module(M: RBModule, exhaustive: bool = False) -> ConditionReport:
    """Module law plus the Rota-Baxter module compatibility with ``T``."""
    report = ConditionReport(exhaustive=exhaustive)
    _module_into(M.action, report, "module")
    _rb_module_into(M, report, "rb_module")
    return report


# -- subalgebras and changes of basis ----------------------------------------

def change_basis(R: RBLieAlgebra, B: Matrix, labels=None) -> RBLieAlgebra:
    """Transport ``R`` to the basis given by the columns of the invertible ``B``.

    Returns the structure for which ``B`` itself is an isomorphism onto ``R``.
    """
    n = R.dim
    if B.shape != (n, n):
        raise ShapeError(f"change of basis of shape {B.shape} for dim {n}")
    Binv = B.inverse()
    cols = B.columns
    T = Tensor3.from_function(n, n, n, lambda i, j: Binv.apply(R.br(cols[i], cols[j])))
    return RBLieAlgebra(LieAlgebra(n, T, labels), R.weight, Binv @ R.operator @ B)


def _coords_in(basis: Sequence[Sequence], target: Sequence, dim: int):
    if not basis:
        return () if not any(target) else None
    A = Matrix.from_columns(basis, dim)
    return solve_affine(A, target).particular


def restrict(R: RBLieAlgebra, basis: Sequence[Sequence], labels=None) -> RBLieAlgebra:
    """The Rota-Baxter subalgebra spanned by ``basis`` in those coordinates.

    Raises ClosureError if the span is not closed under bracket and operator,
    or ShapeError/DecompositionError-style InvalidInputError if dependent.
    """
    n = R.dim
    basis = [tuple(to_rational(x) for x in b) for b in basis]
    for b in basis:
        if len(b) != n:
            raise ShapeError(f"basis vector of length {len(b)} in dimension {n}")
    k = len(basis)
    if basis and Matrix.from_columns(basis, n).rank() != k:
        raise InvalidInputError("subalgebra basis is linearly dependent")
    images = {}
    for i in range(k):
        for j in range(k):
            c = _coords_in(basis, R.br(basis[i], basis[j]), n)
            if c is None:
                raise ClosureError(f"bracket of basis vectors {i}, {j} leaves the span")
            images[(i, j)] = c
    op_cols = []
    for i in range(k):
        c = _coords_in(basis, R.P(basis[i]), n)
        if c is None:
            raise ClosureError(f"operator image of basis vector {i} leaves the span")
        op_cols.append(c)
    T = Tensor3.from_function(k, k, k, lambda i, j: images[(i, j)])
    op = Matrix.from_columns(op_cols, k) if k else Matrix.zero(0, 0)
    return RBLieAlgebra(LieAlgebra(k, T, labels), R.weight, op)


def direct_sum(A: RBLieAlgebra, B: RBLieAlgebra) -> RBLieAlgebra:
    if A.weight != B.weight:
        raise InvalidInputError("weights differ")
    n, m = A.dim, B.dim
    N = n + m
    ai, bi = A.algebra.bracket.images, B.algebra.bracket.images

    def img(i, j):
        if i < n and j < n:
            return ai[i][j] + zero_vector(m)
        if i >= n and j >= n:
            return zero_vector(n) + bi[i - n][j - n]
        return zero_vector(N)

    labels = None
    if A.algebra.labels or B.algebra.labels:
        labels = tuple(A.algebra.label(i) for i in range(n)) + tuple(
            B.algebra.label(i) for i in range(m))
    op = block_matrix([[A.operator, Matrix.zero(n, m)], [Matrix.zero(m, n), B.operator]])
    return RBLieAlgebra(LieAlgebra(N, Tensor3.from_function(N, N, N, img), labels), A.weight, op)

