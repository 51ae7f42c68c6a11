"""Extending data, their compatibility conditions, and unified products.

An extending datum of a Rota-Baxter Lie algebra ``(g, P, lam)`` through
``V = k^m`` is the sextuple ``(tril, trir, f, braces, P1, P2)``:

====== ================ ================== ==========================
name   map              tensor shape       ``c[k][a][j]`` means
====== ================ ================== ==========================
tril   V x g -> V       (m, m, n)          ``x_a < e_j``
trir   V x g -> g       (n, m, n)          ``x_a > e_j``
f      V x V -> g       (n, m, m)          ``f(x_a, x_b)``
braces V x V -> V       (m, m, m)          ``{x_a, x_b}``
P1     V -> g           matrix n x m
P2     V -> V           matrix m x m
====== ================ ================== ==========================

The unified product lives on ``g x V`` with ordered basis
``(e_1..e_n, x_1..x_m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .core import (LieAlgebra, LinearAction, RBLieAlgebra, RBModule, _module_into,
                   _rb_module_into, change_basis, check_rb, check_rb_lie, restrict)
from .errors import DecompositionError, InvalidInputError, ShapeError
from .exactla import (Matrix, Tensor3, Vector, apply_bilinear, block_matrix, unit_vector,
                      vscale, vsum, zero_vector)
from .report import ConditionReport

CONDITIONS = tuple("abcdefghijk")

# basis-tuple roles for each condition, in the order indices are reported
CONDITION_ROLES = {
    "a": ("x", "y"), "b": ("x", "g", "h"), "c": ("x", "g", "h"), "d": ("x", "y", "g"),
    "e": ("x", "y", "g"), "f": ("x", "y", "z"), "g": ("x", "y", "z"), "h": ("g", "y"),
    "i": ("g", "y"), "j": ("x", "y"), "k": ("x", "y"),
}


@dataclass(frozen=True)
class ExtendingDatum:
    base: RBLieAlgebra
    vdim: int
    tril: Tensor3
    trir: Tensor3
    f: Tensor3
    braces: Tensor3
    P1: Matrix
    P2: Matrix

    def __post_init__(self):
        n, m = self.base.dim, self.vdim
        want = {"tril": (m, m, n), "trir": (n, m, n), "f": (n, m, m), "braces": (m, m, m)}
        for name, shape in want.items():
            if getattr(self, name).shape != shape:
                raise ShapeError(f"{name} has shape {getattr(self, name).shape}, expected {shape}")
        if self.P1.shape != (n, m):
            raise ShapeError(f"P1 has shape {self.P1.shape}, expected {(n, m)}")
        if self.P2.shape != (m, m):
            raise ShapeError(f"P2 has shape {self.P2.shape}, expected {(m, m)}")

    @classmethod
    def trivial(cls, base: RBLieAlgebra, vdim: int, P2: Matrix | None = None) -> "ExtendingDatum":
        return cls.build(base, vdim, P2=P2)

    @classmethod
    def build(cls, base: RBLieAlgebra, vdim: int, *, tril=None, trir=None, f=None, braces=None,
              P1=None, P2=None) -> "ExtendingDatum":
        """Like the constructor, with every missing map defaulting to zero."""
        n, m = base.dim, vdim
        return cls(
            base, m,
            tril if tril is not None else Tensor3.zero(m, m, n),
            trir if trir is not None else Tensor3.zero(n, m, n),
            f if f is not None else Tensor3.zero(n, m, m),
            braces if braces is not None else Tensor3.zero(m, m, m),
            P1 if P1 is not None else Matrix.zero(n, m),
            P2 if P2 is not None else Matrix.zero(m, m),
        )

    @property
    def n(self) -> int:
        return self.base.dim

    # the six maps on coordinate vectors
    def tl(self, x, g) -> Vector:
        return apply_bilinear(self.tril, x, g)

    def tr(self, x, g) -> Vector:
        return apply_bilinear(self.trir, x, g)

    def ff(self, x, y) -> Vector:
        return apply_bilinear(self.f, x, y)

    def bb(self, x, y) -> Vector:
        return apply_bilinear(self.braces, x, y)

    def p1(self, x) -> Vector:
        return self.P1.apply(x)

    def p2(self, x) -> Vector:
        return self.P2.apply(x)

    def maps(self) -> tuple:
        return (self.tril, self.trir, self.f, self.braces, self.P1, self.P2)


def _neg(u) -> Vector:
    return tuple(-x for x in u)


def _sum(n, *vs) -> Vector:
    return vsum(vs, n)


def _require_rb_base(base: RBLieAlgebra) -> None:
    try:
        rep = check_rb(base)
    except InvalidInputError:
        raise
    if not rep.passed:
        raise InvalidInputError("base is not a Rota-Baxter Lie algebra: "
                                f"{rep.conditions()}")


def validate_datum(om: ExtendingDatum, exhaustive: bool = False,
                   conditions: Sequence[str] = CONDITIONS) -> ConditionReport:
    """Check conditions (a)-(k) for ``om`` on all basis tuples.

    (a)-(g) are the Lie conditions, (h)-(k) the Rota-Baxter ones.  Condition
    (h) uses ``P([g, P1(y)])`` and ``P2(y) > P(g)``, which is what expanding the
    Rota-Baxter identity on ``((g, 0), (0, y))`` produces.
    """
    _require_rb_base(om.base)
    report = ConditionReport(exhaustive=exhaustive)
    _datum_into(om, report, set(conditions))
    return report


def _datum_into(om: ExtendingDatum, report: ConditionReport, wanted: set) -> None:
    n, m = om.n, om.vdim
    B = om.base
    lam = B.weight
    P = B.P
    br = B.br
    tl, tr, ff, bb, p1, p2 = om.tl, om.tr, om.ff, om.bb, om.p1, om.p2
    E = [unit_vector(n, i) for i in range(n)]
    X = [unit_vector(m, a) for a in range(m)]
    zg, zv = zero_vector(n), zero_vector(m)

    def run(cid, tuples, fn):
        if cid not in wanted:
            return
        for idx in tuples:
            lhs, rhs = fn(*idx)
            if lhs != rhs:
                report.record(cid, idx, lhs, rhs)
                if not report.exhaustive:
                    return

    pairs_v = [(a, b) for a in range(m) for b in range(m)]
    xgh = [(a, i, j) for a in range(m) for i in range(n) for j in range(n)]
    xyg = [(a, b, i) for a in range(m) for b in range(m) for i in range(n)]
    xyz = [(a, b, c) for a in range(m) for b in range(m) for c in range(m)]
    gy = [(i, b) for i in range(n) for b in range(m)]

    def cond_a(a, b):
        x, y = X[a], X[b]
        return ff(x, y) + bb(x, y), _neg(ff(y, x) + bb(y, x))

    run("a", [(a, b) for a in range(m) for b in range(a, m)], cond_a)

    def cond_b(a, i, j):
        x, g, h = X[a], E[i], E[j]
        return tl(x, br(g, h)), _sum(m, tl(tl(x, g), h), _neg(tl(tl(x, h), g)))

    run("b", xgh, cond_b)

    def cond_c(a, i, j):
        x, g, h = X[a], E[i], E[j]
        lhs = tr(x, br(g, h))
        rhs = _sum(n, br(tr(x, g), h), br(g, tr(x, h)), tr(tl(x, g), h), _neg(tr(tl(x, h), g)))
        return lhs, rhs

    run("c", xgh, cond_c)

    def cond_d(a, b, i):
        x, y, g = X[a], X[b], E[i]
        lhs = tl(bb(x, y), g)
        rhs = _sum(m, bb(x, tl(y, g)), bb(tl(x, g), y), tl(x, tr(y, g)), _neg(tl(y, tr(x, g))))
        return lhs, rhs

    run("d", xyg, cond_d)

    def cond_e(a, b, i):
        x, y, g = X[a], X[b], E[i]
        lhs = tr(bb(x, y), g)
        rhs = _sum(n, tr(x, tr(y, g)), _neg(tr(y, tr(x, g))), br(g, ff(x, y)),
                   ff(x, tl(y, g)), ff(tl(x, g), y))
        return lhs, rhs

    run("e", xyg, cond_e)

    def cond_f(a, b, c):
        x, y, z = X[a], X[b], X[c]
        lhs = _sum(n, ff(x, bb(y, z)), ff(y, bb(z, x)), ff(z, bb(x, y)),
                   tr(x, ff(y, z)), tr(y, ff(z, x)), tr(z, ff(x, y)))
        return lhs, zg

    run("f", xyz, cond_f)

    def cond_g(a, b, c):
        x, y, z = X[a], X[b], X[c]
        lhs = _sum(m, bb(x, bb(y, z)), bb(y, bb(z, x)), bb(z, bb(x, y)),
                   tl(x, ff(y, z)), tl(y, ff(z, x)), tl(z, ff(x, y)))
        return lhs, zv

    run("g", xyz, cond_g)

    def cond_h(i, b):
        g, y = E[i], X[b]
        Pg, P1y, P2y = P(g), p1(y), p2(y)
        lhs = _sum(n,
                   br(Pg, P1y), _neg(tr(P2y, Pg)), P(tr(y, Pg)), p1(tl(y, Pg)),
                   _neg(P(br(g, P1y))), P(tr(P2y, g)), p1(tl(P2y, g)),
                   vscale(lam, P(tr(y, g))), vscale(lam, p1(tl(y, g))))
        return lhs, zg

    run("h", gy, cond_h)

    def cond_i(i, b):
        g, y = E[i], X[b]
        Pg, P2y = P(g), p2(y)
        lhs = _sum(m, tl(P2y, Pg), _neg(p2(tl(y, Pg))), _neg(p2(tl(P2y, g))),
                   _neg(vscale(lam, p2(tl(y, g)))))
        return lhs, zv

    run("i", gy, cond_i)

    def cond_j(a, b):
        x, y = X[a], X[b]
        P1x, P1y, P2x, P2y = p1(x), p1(y), p2(x), p2(y)
        lhs = _sum(n,
                   br(P1x, P1y), tr(P2x, P1y), _neg(tr(P2y, P1x)), ff(P2x, P2y),
                   P(tr(y, P1x)), _neg(P(ff(P2x, y))), _neg(p1(bb(P2x, y))), p1(tl(y, P1x)),
                   _neg(P(tr(x, P1y))), _neg(P(ff(x, P2y))), _neg(p1(bb(x, P2y))),
                   _neg(p1(tl(x, P1y))),
                   _neg(vscale(lam, P(ff(x, y)))), _neg(vscale(lam, p1(bb(x, y)))))
        return lhs, zg

    run("j", pairs_v, cond_j)

    def cond_k(a, b):
        x, y = X[a], X[b]
        P1x, P1y, P2x, P2y = p1(x), p1(y), p2(x), p2(y)
        lhs = _sum(m,
                   bb(P2x, P2y), tl(P2x, P1y), _neg(tl(P2y, P1x)), _neg(p2(bb(P2x, y))),
                   p2(tl(y, P1x)), _neg(p2(bb(x, P2y))), _neg(p2(tl(x, P1y))),
                   _neg(vscale(lam, p2(bb(x, y)))))
        return lhs, zv

    run("k", pairs_v, cond_k)


# -- unified product ---------------------------------------------------------

@dataclass(frozen=True)
class UnifiedProduct:
    product: RBLieAlgebra
    embedding: Matrix   # g -> g x V
    projection: Matrix  # g x V -> V
    source: ExtendingDatum = field(repr=False)


def product_labels(om: ExtendingDatum):
    lab = om.base.algebra.labels
    if lab is None:
        return None
    return tuple(lab) + tuple(f"x{a + 1}" for a in range(om.vdim))


def unified_product(om: ExtendingDatum) -> UnifiedProduct:
    """Bracket and operator on ``g x V`` built from the datum.

    ``[(g,x),(h,y)] = ([g,h] + x>h - y>g + f(x,y), {x,y} + x<h - y<g)`` and
    ``P~(g,x) = (P g + P1 x, P2 x)``.  No validity is assumed.
    """
    n, m = om.n, om.vdim
    N = n + m
    gi = om.base.algebra.bracket.images
    tl_im, tr_im = om.tril.images, om.trir.images
    f_im, b_im = om.f.images, om.braces.images
    zv = zero_vector(m)

    def img(i, j):
        if i < n and j < n:
            return gi[i][j] + zv
        if i >= n and j < n:           # [x_a, e_j]
            a = i - n
            return tr_im[a][j] + tl_im[a][j]
        if i < n:                      # [e_i, x_b] = -[x_b, e_i]
            b = j - n
            return _neg(tr_im[b][i] + tl_im[b][i])
        return f_im[i - n][j - n] + b_im[i - n][j - n]

    T = Tensor3.from_function(N, N, N, img)
    op = block_matrix([[om.base.operator, om.P1], [Matrix.zero(m, n), om.P2]])
    product = RBLieAlgebra(LieAlgebra(N, T, product_labels(om)), om.base.weight, op)
    emb = block_matrix([[Matrix.identity(n)], [Matrix.zero(m, n)]])
    proj = block_matrix([[Matrix.zero(m, n), Matrix.identity(m)]])
    return UnifiedProduct(product, emb, proj, om)


def check_unified_axioms(U: UnifiedProduct, exhaustive: bool = False) -> ConditionReport:
    """Independent route: Lie axioms and Rota-Baxter identity on the built product."""
    return check_rb_lie(U.product, exhaustive=exhaustive)


def split_datum(E: RBLieAlgebra, n: int) -> ExtendingDatum:
    """Read off the datum of ``E`` w.r.t. the coordinate split ``k^n x k^(N-n)``.

    The first ``n`` coordinates must span a Rota-Baxter subalgebra (not checked
    here); the projection is the coordinate projection onto them.
    """
    N = E.dim
    m = N - n
    c = E.algebra.bracket.entries
    Pm = E.operator
    lab = E.algebra.labels
    base = RBLieAlgebra(
        LieAlgebra(n, Tensor3(n, n, n, tuple(tuple(tuple(c[k][i][j] for j in range(n))
                                                    for i in range(n)) for k in range(n))),
                   tuple(lab[:n]) if lab else None),
        E.weight, Pm.block(0, n, 0, n))

    def sub(k0, k1, i0, i1, j0, j1):
        return Tensor3(k1 - k0, i1 - i0, j1 - j0, tuple(
            tuple(tuple(c[k][i][j] for j in range(j0, j1)) for i in range(i0, i1))
            for k in range(k0, k1)))

    return ExtendingDatum(
        base, m,
        tril=sub(n, N, n, N, 0, n),
        trir=sub(0, n, n, N, 0, n),
        f=sub(0, n, n, N, n, N),
        braces=sub(n, N, n, N, n, N),
        P1=Pm.block(0, n, n, N),
        P2=Pm.block(n, N, n, N),
    )


# -- crossed products --------------------------------------------------------

@dataclass(frozen=True)
class CrossedSystem:
    """``(g, P)``, ``(V, {,}, P2)``, ``trir``, ``f``, ``P1`` with the right action trivial."""
    base: RBLieAlgebra
    valg: RBLieAlgebra
    trir: Tensor3
    f: Tensor3
    P1: Matrix

    def to_datum(self) -> ExtendingDatum:
        m = self.valg.dim
        return ExtendingDatum.build(self.base, m, trir=self.trir, f=self.f,
                                    braces=self.valg.algebra.bracket, P1=self.P1,
                                    P2=self.valg.operator)

    @classmethod
    def from_datum(cls, om: ExtendingDatum) -> "CrossedSystem":
        if not om.tril.is_zero():
            raise InvalidInputError("right action is not trivial")
        valg = RBLieAlgebra(LieAlgebra(om.vdim, om.braces), om.base.weight, om.P2)
        return cls(om.base, valg, om.trir, om.f, om.P1)


def check_crossed_system(S: CrossedSystem, exhaustive: bool = False) -> ConditionReport:
    """The crossed-system conditions: (a), (c), (e), (f), (h), (j) with ``<`` = 0.

    Both algebras must be Rota-Baxter Lie algebras; under that hypothesis the
    report coincides with ``validate_datum`` on the induced datum.
    """
    _require_rb_base(S.base)
    _require_rb_base(S.valg)
    if S.base.weight != S.valg.weight:
        raise InvalidInputError("weights differ")
    om = S.to_datum()   # only used for shapes and map evaluation
    n, m = om.n, om.vdim
    B = S.base
    br, P, lam = B.br, B.P, B.weight
    tr, ff, bb, p1, p2 = om.tr, om.ff, om.bb, om.p1, om.p2
    E = [unit_vector(n, i) for i in range(n)]
    X = [unit_vector(m, a) for a in range(m)]
    zg = zero_vector(n)
    report = ConditionReport(exhaustive=exhaustive)

    def run(cid, tuples, fn):
        for idx in tuples:
            lhs, rhs = fn(*idx)
            if lhs != rhs:
                report.record(cid, idx, lhs, rhs)
                if not exhaustive:
                    return

    run("a", [(a, b) for a in range(m) for b in range(a, m)],
        lambda a, b: (ff(X[a], X[b]) + bb(X[a], X[b]), _neg(ff(X[b], X[a]) + bb(X[b], X[a]))))
    run("c", [(a, i, j) for a in range(m) for i in range(n) for j in range(n)],
        lambda a, i, j: (tr(X[a], br(E[i], E[j])),
                         _sum(n, br(tr(X[a], E[i]), E[j]), br(E[i], tr(X[a], E[j])))))
    run("e", [(a, b, i) for a in range(m) for b in range(m) for i in range(n)],
        lambda a, b, i: (tr(bb(X[a], X[b]), E[i]),
                         _sum(n, tr(X[a], tr(X[b], E[i])), _neg(tr(X[b], tr(X[a], E[i]))),
                              br(E[i], ff(X[a], X[b])))))

    def cond_f(a, b, c):
        x, y, z = X[a], X[b], X[c]
        return _sum(n, ff(x, bb(y, z)), ff(y, bb(z, x)), ff(z, bb(x, y)),
                    tr(x, ff(y, z)), tr(y, ff(z, x)), tr(z, ff(x, y))), zg

    run("f", [(a, b, c) for a in range(m) for b in range(m) for c in range(m)], cond_f)

    def cond_h(i, b):
        g, y = E[i], X[b]
        Pg, P1y, P2y = P(g), p1(y), p2(y)
        return _sum(n, br(Pg, P1y), _neg(tr(P2y, Pg)), P(tr(y, Pg)), _neg(P(br(g, P1y))),
                    P(tr(P2y, g)), vscale(lam, P(tr(y, g)))), zg

    run("h", [(i, b) for i in range(n) for b in range(m)], cond_h)

    def cond_j(a, b):
        x, y = X[a], X[b]
        P1x, P1y, P2x, P2y = p1(x), p1(y), p2(x), p2(y)
        return _sum(n, br(P1x, P1y), tr(P2x, P1y), _neg(tr(P2y, P1x)), ff(P2x, P2y),
                    P(tr(y, P1x)), _neg(P(ff(P2x, y))), _neg(p1(bb(P2x, y))),
                    _neg(P(tr(x, P1y))), _neg(P(ff(x, P2y))), _neg(p1(bb(x, P2y))),
                    _neg(vscale(lam, P(ff(x, y)))), _neg(vscale(lam, p1(bb(x, y))))), zg

    run("j", [(a, b) for a in range(m) for b in range(m)], cond_j)
    # keep the same condition order as validate_datum
    order = {c: k for k, c in enumerate(CONDITIONS)}
    report.failures.sort(key=lambda fl: order[fl.condition])
    return report


def crossed_product(S: CrossedSystem) -> UnifiedProduct:
    rep = check_crossed_system(S)
    if not rep.passed:
        raise InvalidInputError(f"not a crossed system: {rep.conditions()}")
    return unified_product(S.to_datum())


# -- matched pairs and bicrossed products ------------------------------------

@dataclass(frozen=True)
class MatchedPair:
    """``left = (g, P)``, ``right = (V, {,}, P2)``; ``tril``/``trir`` laid out as in a datum."""
    left: RBLieAlgebra
    right: RBLieAlgebra
    tril: Tensor3
    trir: Tensor3

    def to_datum(self) -> ExtendingDatum:
        return ExtendingDatum.build(self.left, self.right.dim, tril=self.tril, trir=self.trir,
                                    braces=self.right.algebra.bracket, P2=self.right.operator)

    def left_module(self) -> RBModule:
        """``g`` as a left Rota-Baxter module over ``(V, P2)`` under ``>``, with ``T = P``."""
        act = LinearAction(self.right.algebra, self.left.dim, self.trir, "left")
        return RBModule(self.right, act, self.left.operator)

    def right_module(self) -> RBModule:
        """``V`` as a right Rota-Baxter module over ``(g, P)`` under ``<``, with ``T = P2``."""
        act = LinearAction(self.left.algebra, self.right.dim, self.tril, "right")
        return RBModule(self.left, act, self.right.operator)


def check_matched_pair(M: MatchedPair, exhaustive: bool = False) -> ConditionReport:
    """Module laws and Rota-Baxter module conditions for both actions, then the two
    mixed compatibilities (ids ``compat_left`` and ``compat_right``)."""
    _require_rb_base(M.left)
    _require_rb_base(M.right)
    if M.left.weight != M.right.weight:
        raise InvalidInputError("weights differ")
    report = ConditionReport(exhaustive=exhaustive)
    lm, rm = M.left_module(), M.right_module()
    _module_into(rm.action, report, "right_module")
    _rb_module_into(rm, report, "rb_right_module")
    _module_into(lm.action, report, "left_module")
    _rb_module_into(lm, report, "rb_left_module")
    om = M.to_datum()
    sub = ConditionReport(exhaustive=exhaustive)
    _datum_into(om, sub, {"c", "d"})
    for fl in sub.failures:
        report.record({"c": "compat_left", "d": "compat_right"}[fl.condition],
                      fl.indices, fl.lhs, fl.rhs)
    return report


def bicrossed_product(M: MatchedPair) -> UnifiedProduct:
    rep = check_matched_pair(M)
    if not rep.passed:
        raise InvalidInputError(f"not a matched pair: {rep.conditions()}")
    return unified_product(M.to_datum())


def _complement_check(g_basis, h_basis, dim):
    if len(g_basis) + len(h_basis) != dim:
        raise DecompositionError(
            f"{len(g_basis)} + {len(h_basis)} vectors cannot form a basis of a {dim}-dim space")
    vecs = list(g_basis) + list(h_basis)
    for v in vecs:
        if len(v) != dim:
            raise ShapeError(f"vector of length {len(v)} in a {dim}-dim space")
    B = Matrix.from_columns(vecs, dim) if vecs else Matrix.zero(0, 0)
    if B.rank() != dim:
        raise DecompositionError("the two families are not complementary")
    return B


def factorization_map(g_basis, h_basis) -> Matrix:
    """``(g, x) -> g + x`` as a matrix from ``g x h`` coordinates into the ambient space."""
    dim = len(g_basis) + len(h_basis)
    return _complement_check(g_basis, h_basis, dim)


def factorize(E: RBLieAlgebra, g_basis: Sequence[Sequence], h_basis: Sequence[Sequence]) -> MatchedPair:
    """Matched pair whose bicrossed product is ``E = g + h``.

    Both spans must be Rota-Baxter subalgebras (ClosureError otherwise) and
    complementary (DecompositionError otherwise).  For ``x`` in ``h`` and
    ``g`` in ``g``: ``x > g`` is the ``g``-part of ``[x, g]`` and ``x < g`` its
    ``h``-part.
    """
    B = _complement_check(g_basis, h_basis, E.dim)
    left = restrict(E, g_basis)
    right = restrict(E, h_basis)
    om = split_datum(change_basis(E, B), len(g_basis))
    return MatchedPair(left, right, om.tril, om.trir)


def with_maps(om: ExtendingDatum, **changes) -> ExtendingDatum:
    return replace(om, **changes)
