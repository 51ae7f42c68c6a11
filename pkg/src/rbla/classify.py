"""Decomposing an ambient algebra into an extending datum, and moving data along
stabilizing isomorphisms ``psi(g, x) = (g + r(x), v(x))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import RBLieAlgebra, change_basis, restrict
from .errors import (DecompositionError, InvalidInputError, InvalidProjectionError,
                     InvalidWitnessError, ShapeError)
from .exactla import Matrix, Tensor3, block_matrix, nullspace, to_rational, unit_vector, vsum
from .extending import ExtendingDatum, split_datum
from .report import ConditionReport


@dataclass(frozen=True)
class DecompositionContext:
    """``E = g + V`` with ``g`` spanned by ``sub_basis`` and ``V = ker(p)``.

    ``projection`` (shape ``n x N``) maps ambient coordinates to coordinates
    w.r.t. ``sub_basis``; it is derived from the two bases when omitted.
    """
    ambient: RBLieAlgebra
    sub_basis: tuple
    complement_basis: tuple
    projection: Matrix | None = None

    def __post_init__(self):
        N = self.ambient.dim
        sub = tuple(tuple(to_rational(x) for x in v) for v in self.sub_basis)
        comp = tuple(tuple(to_rational(x) for x in v) for v in self.complement_basis)
        object.__setattr__(self, "sub_basis", sub)
        object.__setattr__(self, "complement_basis", comp)
        for v in sub + comp:
            if len(v) != N:
                raise ShapeError(f"vector of length {len(v)} in a {N}-dim ambient space")
        if len(sub) + len(comp) != N or (N and Matrix.from_columns(sub + comp, N).rank() != N):
            raise DecompositionError("sub_basis and complement_basis do not form a basis")
        n = len(sub)
        derived = self.basis_matrix.inverse().block(0, n, 0, N) if N else Matrix.zero(n, 0)
        if self.projection is None:
            object.__setattr__(self, "projection", derived)
        else:
            p = self.projection
            if p.shape != (n, N):
                raise InvalidProjectionError(f"projection of shape {p.shape}, expected {(n, N)}")
            for i, s in enumerate(sub):
                if p.apply(s) != unit_vector(n, i):
                    raise InvalidProjectionError(f"p does not fix sub_basis vector {i}")
            for j, c in enumerate(comp):
                if any(p.apply(c)):
                    raise InvalidProjectionError(f"p does not kill complement vector {j}")

    @classmethod
    def from_split(cls, ambient: RBLieAlgebra, indices: Sequence[int]) -> "DecompositionContext":
        """``g`` spanned by the ambient basis vectors at ``indices``, ``V`` by the rest."""
        N = ambient.dim
        idx = list(indices)
        if len(set(idx)) != len(idx) or any(not 0 <= i < N for i in idx):
            raise DecompositionError(f"bad index list {idx} for dimension {N}")
        rest = [i for i in range(N) if i not in idx]
        return cls(ambient, tuple(unit_vector(N, i) for i in idx),
                   tuple(unit_vector(N, i) for i in rest))

    @classmethod
    def canonical(cls, ambient: RBLieAlgebra, n: int) -> "DecompositionContext":
        return cls.from_split(ambient, range(n))

    @classmethod
    def from_projection(cls, ambient: RBLieAlgebra, sub_basis, projection: Matrix):
        comp = nullspace(projection)
        return cls(ambient, tuple(sub_basis), comp, projection)

    @property
    def n(self) -> int:
        return len(self.sub_basis)

    @property
    def basis_matrix(self) -> Matrix:
        """Columns ``sub_basis`` then ``complement_basis``: the map ``(g, x) -> g + x``."""
        N = self.ambient.dim
        return Matrix.from_columns(self.sub_basis + self.complement_basis, N)

    @property
    def complement_projection(self) -> Matrix:
        """``pi: E -> V`` in complement-basis coordinates."""
        N = self.ambient.dim
        return self.basis_matrix.inverse().block(self.n, N, 0, N)

    def _permuted_labels(self):
        labels = self.ambient.algebra.labels
        if labels is None:
            return None
        order = []
        for v in self.sub_basis + self.complement_basis:
            nz = [i for i, x in enumerate(v) if x]
            if len(nz) != 1 or v[nz[0]] != 1:
                return None
            order.append(nz[0])
        return tuple(labels[i] for i in order)


def decompose(ctx: DecompositionContext) -> ExtendingDatum:
    """The datum with ``x > g = p[x,g]``, ``x < g = [x,g] - p[x,g]``, ``f = p[x,y]``,
    ``{x,y} = [x,y] - p[x,y]``, ``P1 = p P_E``, ``P2 = P_E - p P_E`` on ``V``.

    Raises ClosureError when ``sub_basis`` does not span a Rota-Baxter subalgebra.
    """
    restrict(ctx.ambient, ctx.sub_basis)   # closure check, raises ClosureError
    moved = change_basis(ctx.ambient, ctx.basis_matrix, labels=ctx._permuted_labels())
    return split_datum(moved, ctx.n)


def check_stabilizes(phi: Matrix, ctx: DecompositionContext, target: RBLieAlgebra | None = None,
                     strict: bool = True) -> bool:
    """``phi`` fixes every ``sub_basis`` vector.

    ``phi`` must intertwine the operators of ``ctx.ambient`` and ``target``
    (default: the ambient itself); with ``strict`` a violation raises.
    """
    _require_intertwining(phi, ctx, target, strict)
    return all(phi.apply(s) == s for s in ctx.sub_basis)


def check_costabilizes(phi: Matrix, ctx: DecompositionContext, target: RBLieAlgebra | None = None,
                       strict: bool = True) -> bool:
    """``pi o phi = pi`` with ``pi`` the projection of ``E`` onto ``V`` along ``g``."""
    _require_intertwining(phi, ctx, target, strict)
    pi = ctx.complement_projection
    return pi @ phi == pi


def _require_intertwining(phi, ctx, target, strict):
    N = ctx.ambient.dim
    if phi.shape != (N, N):
        raise ShapeError(f"map of shape {phi.shape} on a {N}-dim space")
    tgt = target if target is not None else ctx.ambient
    if tgt.dim != N:
        raise ShapeError("target has a different dimension")
    if strict and phi @ ctx.ambient.operator != tgt.operator @ phi:
        raise InvalidInputError("map does not commute with the Rota-Baxter operators")


# -- witnesses ---------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceWitness:
    r: Matrix   # V -> g
    v: Matrix   # V -> V

    def __post_init__(self):
        if self.v.rows != self.v.cols or self.r.cols != self.v.cols:
            raise ShapeError(f"witness shapes r{self.r.shape}, v{self.v.shape} do not fit")

    @classmethod
    def identity(cls, n: int, m: int) -> "EquivalenceWitness":
        return cls(Matrix.zero(n, m), Matrix.identity(m))

    def compose(self, after: "EquivalenceWitness") -> "EquivalenceWitness":
        """Witness of ``psi(after) o psi(self)``."""
        return EquivalenceWitness(self.r + after.r @ self.v, after.v @ self.v)

    def inverse(self) -> "EquivalenceWitness":
        if not self.v.is_invertible():
            raise InvalidWitnessError("v is not invertible")
        vi = self.v.inverse()
        return EquivalenceWitness(-(self.r @ vi), vi)


def psi_from_witness(om: ExtendingDatum, w: EquivalenceWitness) -> Matrix:
    """Block matrix ``[[I, r], [0, v]]`` in the ``(g, V)`` ordered basis."""
    n, m = om.n, om.vdim
    if w.r.shape != (n, m) or w.v.shape != (m, m):
        raise ShapeError(f"witness shapes r{w.r.shape}, v{w.v.shape} for n={n}, m={m}")
    return block_matrix([[Matrix.identity(n), w.r], [Matrix.zero(m, n), w.v]])


def witness_from_psi(psi: Matrix, n: int) -> EquivalenceWitness:
    N = psi.rows
    if psi.block(0, n, 0, n) != Matrix.identity(n) or not psi.block(n, N, 0, n).is_zero():
        raise InvalidWitnessError("matrix does not have the block form [[I, r], [0, v]]")
    return EquivalenceWitness(psi.block(0, n, n, N), psi.block(n, N, n, N))


def _neg(u):
    return tuple(-x for x in u)


def check_witness_conditions(om: ExtendingDatum, om2: ExtendingDatum, w: EquivalenceWitness,
                             exhaustive: bool = False) -> ConditionReport:
    """Conditions L1-L6 for ``psi_(r,v)`` to be a morphism between the two unified products."""
    if om.base != om2.base or om.vdim != om2.vdim:
        raise InvalidInputError("data are over different bases or spaces")
    n, m = om.n, om.vdim
    psi_from_witness(om, w)   # shape check
    B = om.base
    br, P = B.br, B.P
    r, v = w.r.apply, w.v.apply
    E = [unit_vector(n, i) for i in range(n)]
    X = [unit_vector(m, a) for a in range(m)]
    report = ConditionReport(exhaustive=exhaustive)

    def run(cid, tuples, fn):
        for idx in tuples:
            lhs, rhs = fn(*idx)
            if lhs != rhs:
                report.record(cid, idx, lhs, rhs)
                if not exhaustive:
                    return

    xg = [(a, i) for a in range(m) for i in range(n)]
    xy = [(a, b) for a in range(m) for b in range(m)]
    run("L1", xg, lambda a, i: (om2.tl(v(X[a]), E[i]), v(om.tl(X[a], E[i]))))
    run("L2", xg, lambda a, i: (
        r(om.tl(X[a], E[i])),
        vsum([br(r(X[a]), E[i]), _neg(om.tr(X[a], E[i])), om2.tr(v(X[a]), E[i])], n)))

    def l3(a, b):
        x, y = X[a], X[b]
        return v(om.bb(x, y)), vsum([om2.bb(v(x), v(y)), om2.tl(v(x), r(y)),
                                     _neg(om2.tl(v(y), r(x)))], m)

    def l4(a, b):
        x, y = X[a], X[b]
        return r(om.bb(x, y)), vsum([br(r(x), r(y)), om2.tr(v(x), r(y)), _neg(om2.tr(v(y), r(x))),
                                     om2.ff(v(x), v(y)), _neg(om.ff(x, y))], n)

    run("L3", xy, l3)
    run("L4", xy, l4)
    run("L5", [(a,) for a in range(m)], lambda a: (
        om.p1(X[a]), vsum([P(r(X[a])), om2.p1(v(X[a])), _neg(r(om.p2(X[a])))], n)))
    run("L6", [(a,) for a in range(m)], lambda a: (v(om.p2(X[a])), om2.p2(v(X[a]))))
    return report


def transform_datum(om: ExtendingDatum, w: EquivalenceWitness) -> ExtendingDatum:
    """The datum ``om'`` for which ``psi_(r,v): U(om) -> U(om')`` is an isomorphism.

    With ``u = v^{-1}``:
    ``x <' g = v(u x < g)``,
    ``x >' g = r(u x < g) + u x > g + [g, r u x]``,
    ``f'(x,y) = f(ux,uy) + r{ux,uy} + [rux,ruy] - r(ux < ruy) - ux > ruy + r(uy < rux) + uy > rux``,
    ``{x,y}' = v{ux,uy} - v(ux < ruy) + v(uy < rux)``,
    ``P1' = P1 u - P r u + r P2 u``, ``P2' = v P2 u``.
    """
    n, m = om.n, om.vdim
    psi_from_witness(om, w)
    if not w.v.is_invertible():
        raise InvalidWitnessError("v is not invertible")
    vinv = w.v.inverse()
    r, v = w.r.apply, w.v.apply
    B = om.base
    br = B.br
    U = vinv.columns   # U[a] = v^{-1}(x_a)
    E = [unit_vector(n, i) for i in range(n)]

    def tril(a, j):
        return v(om.tl(U[a], E[j]))

    def trir(a, j):
        u = U[a]
        return vsum([r(om.tl(u, E[j])), om.tr(u, E[j]), br(E[j], r(u))], n)

    def f(a, b):
        ux, uy = U[a], U[b]
        rx, ry = r(ux), r(uy)
        return vsum([om.ff(ux, uy), r(om.bb(ux, uy)), br(rx, ry), _neg(r(om.tl(ux, ry))),
                     _neg(om.tr(ux, ry)), r(om.tl(uy, rx)), om.tr(uy, rx)], n)

    def braces(a, b):
        ux, uy = U[a], U[b]
        return vsum([v(om.bb(ux, uy)), _neg(v(om.tl(ux, r(uy)))), v(om.tl(uy, r(ux)))], m)

    P1 = om.P1 @ vinv - B.operator @ w.r @ vinv + w.r @ om.P2 @ vinv
    P2 = w.v @ om.P2 @ vinv
    return ExtendingDatum(
        B, m,
        Tensor3.from_function(m, m, n, tril),
        Tensor3.from_function(n, m, n, trir),
        Tensor3.from_function(n, m, m, f),
        Tensor3.from_function(m, m, m, braces),
        P1, P2)


def cohomologous_transform(om: ExtendingDatum, r_map: Matrix) -> ExtendingDatum:
    """Update ``>``, ``f``, ``{,}`` and ``P1`` by ``r: V -> g``; ``<`` and ``P2`` are kept.

    ``x >' g = x > g + r(x < g) - [r x, g]``,
    ``f'(x,y) = f(x,y) + r{x,y} + [rx,ry] + y > rx - x > ry + r(y < rx) - r(x < ry)``,
    ``{x,y}' = {x,y} - x < ry + y < rx``, ``P1' = P1 - P r + r P2``.
    """
    n, m = om.n, om.vdim
    if r_map.shape != (n, m):
        raise ShapeError(f"r of shape {r_map.shape}, expected {(n, m)}")
    r = r_map.apply
    B = om.base
    br = B.br
    E = [unit_vector(n, i) for i in range(n)]
    X = [unit_vector(m, a) for a in range(m)]

    def trir(a, j):
        x, g = X[a], E[j]
        return vsum([om.tr(x, g), r(om.tl(x, g)), _neg(br(r(x), g))], n)

    def f(a, b):
        x, y = X[a], X[b]
        rx, ry = r(x), r(y)
        return vsum([om.ff(x, y), r(om.bb(x, y)), br(rx, ry), om.tr(y, rx), _neg(om.tr(x, ry)),
                     r(om.tl(y, rx)), _neg(r(om.tl(x, ry)))], n)

    def braces(a, b):
        x, y = X[a], X[b]
        return vsum([om.bb(x, y), _neg(om.tl(x, r(y))), om.tl(y, r(x))], m)

    P1 = om.P1 - B.operator @ r_map + r_map @ om.P2
    return ExtendingDatum(B, m, om.tril, Tensor3.from_function(n, m, n, trir),
                          Tensor3.from_function(n, m, m, f), Tensor3.from_function(m, m, m, braces),
                          P1, om.P2)


def product_context(om: ExtendingDatum, product: RBLieAlgebra | None = None) -> DecompositionContext:
    """Canonical ``g x V`` split of a unified product of ``om``."""
    if product is None:
        from .extending import unified_product
        product = unified_product(om).product
    return DecompositionContext.canonical(product, om.n)

