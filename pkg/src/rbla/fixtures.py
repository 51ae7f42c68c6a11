"""Named example objects: the small data that tests, scripts and ``rbla demo`` share."""

from __future__ import annotations

from .core import RBLieAlgebra, abelian, aff1, direct_sum, rb
from .exactla import Matrix, Tensor3
from .extending import ExtendingDatum, unified_product
from .flag import ExtendedDerivation


def aff1_zero() -> RBLieAlgebra:
    return rb(aff1())


def fixture_datum() -> ExtendingDatum:
    """Over (aff1, P=0, weight 0) with V = k x: ``x > e1 = e2`` and ``P1(x) = e1``.

    Its product is 3-dimensional with ``[e1, x] = -e2`` and ``P~(x) = e1``.
    """
    base = aff1_zero()
    trir = Tensor3.from_entries([[[0, 0]], [[1, 0]]])
    return ExtendingDatum.build(base, 1, trir=trir, P1=Matrix.from_rows([[1], [0]]))


def trivial_datum() -> ExtendingDatum:
    return ExtendingDatum.trivial(aff1_zero(), 1)


def bad_datum() -> ExtendingDatum:
    """Two-dimensional V with ``{x1, x1} = x1``: not alternating, so it fails (a)."""
    braces = Tensor3.from_entries([[[1, 0], [0, 0]], [[0, 0], [0, 0]]])
    return ExtendingDatum.build(aff1_zero(), 2, braces=braces)


def direct_sum_ambient() -> RBLieAlgebra:
    """aff1 plus a one-dimensional abelian summand, zero operators."""
    return direct_sum(aff1_zero(), rb(abelian(1)))


def fixture_product() -> RBLieAlgebra:
    return unified_product(fixture_datum()).product


def exder_zero() -> ExtendedDerivation:
    return ExtendedDerivation.zero(aff1_zero())


def exder_ad_e1(g0=(0, 0)) -> ExtendedDerivation:
    """``D = ad_{e1}``, i.e. ``e2 -> e2``, other entries zero."""
    return ExtendedDerivation(aff1_zero(), (0, 0), Matrix.from_rows([[0, 0], [0, 1]]), g0, 0)


def exder_g0_shift() -> ExtendedDerivation:
    """``(0, 0, e2, 0)``: not equivalent to the zero quadruple."""
    return ExtendedDerivation(aff1_zero(), (0, 0), Matrix.zero(2, 2), (0, 1), 0)


def exder_fixture() -> ExtendedDerivation:
    """The quadruple of ``fixture_datum``: ``D(e1) = e2``, ``g0 = e1``."""
    return ExtendedDerivation(aff1_zero(), (0, 0), Matrix.from_rows([[0, 0], [1, 0]]), (1, 0), 0)
