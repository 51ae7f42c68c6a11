"""Seeded random objects for property tests, acceptance runs and scripts.

Two families: unconstrained draws (entries in ``{-2..2}``, mostly invalid,
used to compare two independent verdicts) and constructed-valid draws, built
so that the relevant axioms hold by construction.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from typing import Sequence

from .classify import DecompositionContext, EquivalenceWitness, decompose, transform_datum
from .core import FIXTURE_NAMES, RBLieAlgebra, abelian, aff1, check_rb, direct_sum, fixture, rb
from .exactla import Matrix, Tensor3, nullspace, unit_vector, vscale, vsum, zero_vector
from .extending import ExtendingDatum, split_datum, unified_product
from .flag import ExtendedDerivation, datum_from_exder, exder_residual

ENTRIES = (-2, -1, 0, 1, 2)
WEIGHTS = (0, 1, -1)


def _entry(rng: random.Random, density: float = 1.0) -> int:
    return rng.choice(ENTRIES) if rng.random() < density else 0


def random_matrix(rng, rows, cols, density=1.0) -> Matrix:
    return Matrix(rows, cols, tuple(tuple(_entry(rng, density) for _ in range(cols))
                                    for _ in range(rows)))


def random_tensor(rng, shape, density=1.0) -> Tensor3:
    do, dl, dr = shape
    return Tensor3(do, dl, dr, tuple(tuple(tuple(_entry(rng, density) for _ in range(dr))
                                           for _ in range(dl)) for _ in range(do)))


def random_invertible(rng, n, density=1.0) -> Matrix:
    while True:
        M = random_matrix(rng, n, n, density)
        if M.is_invertible():
            return M


# -- bases -------------------------------------------------------------------

@lru_cache(maxsize=None)
def operator_candidates(name: str, weight: int) -> tuple:
    """``0``, ``-weight * id`` and every diagonal operator with entries in ``{-2..2}``
    that satisfies the Rota-Baxter identity on the named fixture."""
    L = fixture(name)
    n = L.dim
    out = [Matrix.zero(n, n)]
    if weight:
        out.append(Matrix.scalar(n, -weight))
    for d in product(ENTRIES, repeat=n):
        M = Matrix.diag(d)
        if M not in out and check_rb(rb(L, M, weight)).passed:
            out.append(M)
    return tuple(out)


def random_rb_base(rng, names: Sequence[str] = FIXTURE_NAMES, weights=WEIGHTS) -> RBLieAlgebra:
    name = rng.choice(list(names))
    lam = rng.choice(list(weights))
    return rb(fixture(name), rng.choice(operator_candidates(name, lam)), lam)


# -- unconstrained draws -----------------------------------------------------

def random_datum(rng, base: RBLieAlgebra | None = None, vdim: int | None = None,
                 density: float | None = None) -> ExtendingDatum:
    base = base if base is not None else random_rb_base(rng)
    m = vdim if vdim is not None else rng.choice((1, 2))
    d = density if density is not None else rng.choice((1.0, 0.5, 0.2, 0.05))
    n = base.dim
    return ExtendingDatum(base, m, random_tensor(rng, (m, m, n), d), random_tensor(rng, (n, m, n), d),
                          random_tensor(rng, (n, m, m), d), random_tensor(rng, (m, m, m), d),
                          random_matrix(rng, n, m, d), random_matrix(rng, m, m, d))


def random_exder(rng, base: RBLieAlgebra, density: float | None = None) -> ExtendedDerivation:
    d = density if density is not None else rng.choice((1.0, 0.5, 0.2, 0.05))
    n = base.dim
    return ExtendedDerivation(base, tuple(_entry(rng, d) for _ in range(n)),
                              random_matrix(rng, n, n, d), tuple(_entry(rng, d) for _ in range(n)),
                              _entry(rng, d))


def random_witness(rng, n: int, m: int, density: float = 1.0) -> EquivalenceWitness:
    return EquivalenceWitness(random_matrix(rng, n, m, density), random_invertible(rng, m))


# -- valid extended derivations ---------------------------------------------

def _combine(rng, basis, length):
    if not basis:
        return zero_vector(length)
    return vsum([vscale(rng.choice(ENTRIES), b) for b in basis], length)


def characters(base: RBLieAlgebra) -> list:
    """Basis of the functionals vanishing on ``[g, g]``."""
    n = base.dim
    c = base.algebra.bracket.entries
    rows = [[c[k][i][j] for k in range(n)] for i in range(n) for j in range(n)]
    return nullspace(Matrix.from_rows(rows, n)) if rows else []


def exder_solutions(base: RBLieAlgebra, epsilon, k0) -> list:
    """Basis of the ``(D, g0)`` (flattened: ``D`` row-major then ``g0``) making
    ``(epsilon, D, g0, k0)`` an extended derivation, scalar condition aside."""
    n = base.dim
    size = n * n + n
    cols = []
    for t in range(size):
        z = unit_vector(size, t)
        X = _unflatten(base, epsilon, z, k0)
        cols.append(exder_residual(X))
    if not cols or not cols[0]:
        return [unit_vector(size, t) for t in range(size)]
    A = Matrix.from_columns(cols, len(cols[0]))
    return nullspace(A)


def _unflatten(base, epsilon, z, k0) -> ExtendedDerivation:
    n = base.dim
    D = Matrix(n, n, tuple(tuple(z[i * n:(i + 1) * n]) for i in range(n)))
    return ExtendedDerivation(base, epsilon, D, tuple(z[n * n:]), k0)


def random_valid_exder(rng, base: RBLieAlgebra) -> ExtendedDerivation:
    n = base.dim
    chars = characters(base)
    eps = _combine(rng, chars, n) if chars and rng.random() < 0.5 else zero_vector(n)
    if any(eps):
        k0 = rng.choice(sorted({0, -base.weight}))
    else:
        k0 = rng.choice(ENTRIES)
    sols = exder_solutions(base, eps, k0)
    return _unflatten(base, eps, _combine(rng, sols, n * n + n), k0)


# -- constructed-valid data --------------------------------------------------

def valid_trivial(rng, base=None) -> ExtendingDatum:
    base = base if base is not None else random_rb_base(rng)
    m = rng.choice((1, 2))
    return ExtendingDatum.trivial(base, m, P2=random_matrix(rng, m, m))


def valid_from_exder(rng, base=None) -> ExtendingDatum:
    base = base if base is not None else random_rb_base(rng)
    return datum_from_exder(random_valid_exder(rng, base))


def valid_direct_sum(rng, base=None) -> ExtendingDatum:
    """Datum of ``base + h`` for a small Rota-Baxter algebra ``h`` of the same weight."""
    base = base if base is not None else random_rb_base(rng)
    lam = base.weight
    choices = [rb(abelian(1), random_matrix(rng, 1, 1), lam), rb(abelian(2), random_matrix(rng, 2, 2), lam)]
    choices.append(rb(aff1(), rng.choice(operator_candidates("aff1", lam)), lam))
    h = rng.choice(choices)
    return split_datum(direct_sum(base, h), base.dim)


def valid_transform(rng, om: ExtendingDatum | None = None) -> ExtendingDatum:
    om = om if om is not None else _valid_seed(rng)
    return transform_datum(om, random_witness(rng, om.n, om.vdim))


def valid_decomposition(rng, om: ExtendingDatum | None = None) -> ExtendingDatum:
    """Re-decompose a unified product along a skew complement ``span(x + r(x))``."""
    om = om if om is not None else _valid_seed(rng)
    n, m = om.n, om.vdim
    E = unified_product(om).product
    r = random_matrix(rng, n, m)
    comp = [tuple(r.column(a)) + tuple(unit_vector(m, a)) for a in range(m)]
    ctx = DecompositionContext(E, tuple(unit_vector(n + m, i) for i in range(n)), tuple(comp))
    return decompose(ctx)


_SEEDS = (valid_trivial, valid_from_exder, valid_direct_sum)
VALID_KINDS = ("trivial", "exder", "direct_sum", "transform", "decomposition")


def _valid_seed(rng) -> ExtendingDatum:
    return rng.choice(_SEEDS)(rng)


def valid_datum(rng, kind: str | None = None) -> ExtendingDatum:
    kind = kind if kind is not None else rng.choice(VALID_KINDS)
    table = {"trivial": valid_trivial, "exder": valid_from_exder, "direct_sum": valid_direct_sum,
             "transform": valid_transform, "decomposition": valid_decomposition}
    return table[kind](rng)
