"""Exact rational linear algebra: vectors, matrices, order-3 tensors, affine solving.

Everything here is over ``fractions.Fraction``.  Values are immutable; all
functions are pure.  Vectors are plain tuples of ``Fraction``.

Conventions
-----------
* ``Matrix`` entries are row-major and columns are images of basis vectors:
  ``M[i, j]`` is the ``e_i`` coefficient of ``M(e_j)``.
* ``Tensor3`` stores a bilinear map ``B: U x W -> Y`` as ``c[k][i][j]`` with
  ``B(u_i, w_j) = sum_k c[k][i][j] y_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import ShapeError

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction.

    Floats are rejected: they would silently import rounding error.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def render_rational(q: Fraction) -> str:
    """Canonical text form: ``"p"`` when the denominator is 1, else ``"p/q"``."""
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- vectors -----------------------------------------------------------------

def vector(values: Iterable) -> Vector:
    return tuple(to_rational(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(_ONE if k == i else _ZERO for k in range(n))


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vscale(a, u: Sequence) -> Vector:
    a = to_rational(a)
    return tuple(a * x for x in u)


def vsum(vectors: Iterable[Sequence], n: int) -> Vector:
    acc = [_ZERO] * n
    for v in vectors:
        if len(v) != n:
            raise ShapeError(f"expected length {n}, got {len(v)}")
        for k, x in enumerate(v):
            if x:
                acc[k] += x
    return tuple(acc)


def is_zero(u: Sequence) -> bool:
    return not any(u)


# -- matrices ----------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative matrix dimension")
        grid = tuple(tuple(to_rational(x) for x in row) for row in self.entries)
        if len(grid) != self.rows or any(len(row) != self.cols for row in grid):
            raise ShapeError(f"entries do not form a {self.rows}x{self.cols} grid")
        object.__setattr__(self, "entries", grid)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeError("column count required for a matrix without rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        for c in columns:
            if len(c) != rows:
                raise ShapeError(f"column of length {len(c)} in a matrix with {rows} rows")
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((_ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.scalar(n, 1)

    @classmethod
    def scalar(cls, n: int, a) -> "Matrix":
        a = to_rational(a)
        return cls(n, n, tuple(tuple(a if i == j else _ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    @cached_property
    def columns(self) -> tuple:
        return tuple(self.column(j) for j in range(self.cols))

    def apply(self, u: Sequence) -> Vector:
        return coordinate_linear_map(self, u)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.shape} with {other.shape}")
        ocols = other.columns
        return Matrix.from_columns([self.apply(c) for c in ocols], self.rows) if ocols else Matrix.zero(self.rows, 0)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vadd(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vsub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, a) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(vscale(a, r) for r in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.columns))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(r1 - r0, c1 - c0, tuple(row[c0:c1] for row in self.entries[r0:r1]))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def rank(self) -> int:
        return len(_rref(self.entries, self.cols)[1])

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeError(f"cannot invert a {self.rows}x{self.cols} matrix")
        n = self.rows
        aug = [list(row) + list(unit_vector(n, i)) for i, row in enumerate(self.entries)]
        red, pivots = _rref(aug, n)
        if len(pivots) != n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix(n, n, tuple(tuple(r[n:]) for r in red))

    def _same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def tolist(self) -> list:
        return [list(r) for r in self.entries]


def block_matrix(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a matrix from a grid of blocks with compatible shapes."""
    rows = []
    for brow in blocks:
        h = brow[0].rows
        if any(b.rows != h for b in brow):
            raise ShapeError("blocks in one block-row have different heights")
        for i in range(h):
            rows.append(tuple(x for b in brow for x in b.entries[i]))
    widths = [sum(b.cols for b in brow) for brow in blocks]
    if len(set(widths)) > 1:
        raise ShapeError("block-rows have different widths")
    return Matrix(len(rows), widths[0] if widths else 0, tuple(rows))


def coordinate_linear_map(M: Matrix, u: Sequence) -> Vector:
    """Exact matrix-vector product ``M u``."""
    if len(u) != M.cols:
        raise ShapeError(f"vector of length {len(u)} for a matrix with {M.cols} columns")
    acc = [_ZERO] * M.rows
    for j, uj in enumerate(u):
        if uj:
            for i, row in enumerate(M.entries):
                if row[j]:
                    acc[i] += row[j] * uj
    return tuple(acc)


# -- tensors -----------------------------------------------------------------

@dataclass(frozen=True)
class Tensor3:
    dim_out: int
    dim_left: int
    dim_right: int
    entries: tuple  # c[k][i][j]

    def __post_init__(self):
        grid = tuple(tuple(tuple(to_rational(x) for x in row) for row in plane)
                     for plane in self.entries)
        ok = len(grid) == self.dim_out and all(
            len(plane) == self.dim_left and all(len(row) == self.dim_right for row in plane)
            for plane in grid)
        if not ok:
            raise ShapeError(
                f"entries do not have shape {self.dim_out}x{self.dim_left}x{self.dim_right}")
        object.__setattr__(self, "entries", grid)

    @classmethod
    def zero(cls, dim_out: int, dim_left: int, dim_right: int) -> "Tensor3":
        plane = tuple((_ZERO,) * dim_right for _ in range(dim_left))
        return cls(dim_out, dim_left, dim_right, (plane,) * dim_out)

    @classmethod
    def from_function(cls, dim_out: int, dim_left: int, dim_right: int,
                      fn: Callable[[int, int], Sequence]) -> "Tensor3":
        """Build from ``fn(i, j)`` = coordinates of the image of ``(b_i, b'_j)``."""
        images = [[fn(i, j) for j in range(dim_right)] for i in range(dim_left)]
        for row in images:
            for img in row:
                if len(img) != dim_out:
                    raise ShapeError(f"image of length {len(img)}, expected {dim_out}")
        return cls(dim_out, dim_left, dim_right, tuple(
            tuple(tuple(images[i][j][k] for j in range(dim_right)) for i in range(dim_left))
            for k in range(dim_out)))

    @classmethod
    def from_entries(cls, nested: Sequence) -> "Tensor3":
        do = len(nested)
        dl = len(nested[0]) if do else 0
        dr = len(nested[0][0]) if dl else 0
        return cls(do, dl, dr, nested)

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.dim_out, self.dim_left, self.dim_right)

    @cached_property
    def images(self) -> tuple:
        """``images[i][j]`` is the output vector for the basis pair ``(i, j)``."""
        return tuple(tuple(tuple(self.entries[k][i][j] for k in range(self.dim_out))
                           for j in range(self.dim_right)) for i in range(self.dim_left))

    def image(self, i: int, j: int) -> Vector:
        return self.images[i][j]

    def apply(self, u: Sequence, v: Sequence) -> Vector:
        return apply_bilinear(self, u, v)

    def is_zero(self) -> bool:
        return not any(any(any(r) for r in plane) for plane in self.entries)

    def scale(self, a) -> "Tensor3":
        a = to_rational(a)
        return Tensor3(*self.shape, tuple(tuple(tuple(a * x for x in r) for r in p)
                                          for p in self.entries))

    def __add__(self, other: "Tensor3") -> "Tensor3":
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return Tensor3(*self.shape, tuple(
            tuple(vadd(r, s) for r, s in zip(p, q)) for p, q in zip(self.entries, other.entries)))

    def tolist(self) -> list:
        return [[list(r) for r in plane] for plane in self.entries]


def apply_bilinear(T: Tensor3, u: Sequence, v: Sequence) -> Vector:
    """``out_k = sum_{i,j} c[k][i][j] u_i v_j``, exactly."""
    if len(u) != T.dim_left or len(v) != T.dim_right:
        raise ShapeError(
            f"arguments of lengths ({len(u)}, {len(v)}) for a tensor of shape {T.shape}")
    acc = [_ZERO] * T.dim_out
    images = T.images
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = images[i]
        for j, vj in enumerate(v):
            if not vj:
                continue
            w = ui * vj
            for k, c in enumerate(row[j]):
                if c:
                    acc[k] += c * w
    return tuple(acc)


# -- linear systems ----------------------------------------------------------

def _rref(rows, ncols: int):
    """Reduced row echelon form over the first ``ncols`` columns.

    Pivots on the first nonzero entry found scanning columns left to right and
    rows top to bottom.  Extra (augmented) columns are carried along.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


@dataclass(frozen=True)
class AffineSolutionSet:
    """Solutions of ``A x = b``: ``particular + span(nullspace_basis)``.

    ``particular`` is ``None`` when the system is inconsistent; the nullspace
    basis of ``A`` is reported either way.
    """
    particular: Vector | None
    nullspace_basis: tuple

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    def point(self, coefficients: Sequence) -> Vector:
        if self.particular is None:
            raise ValueError("empty solution set")
        return vsum([self.particular] + [vscale(c, n) for c, n in zip(coefficients, self.nullspace_basis)],
                    len(self.particular))


def nullspace(A: Matrix) -> tuple:
    red, pivots = _rref(A.entries, A.cols)
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for fc in free:
        x = [_ZERO] * A.cols
        x[fc] = _ONE
        for r, pc in enumerate(pivots):
            x[pc] = -red[r][fc]
        basis.append(tuple(x))
    return tuple(basis)


def solve_affine(A: Matrix, b: Sequence) -> AffineSolutionSet:
    """Solve ``A x = b`` by Gauss-Jordan elimination with exact zero tests."""
    if len(b) != A.rows:
        raise ShapeError(f"right-hand side of length {len(b)} for {A.rows} equations")
    b = vector(b)
    aug = [list(row) + [bi] for row, bi in zip(A.entries, b)]
    red, pivots = _rref(aug, A.cols)
    rank = len(pivots)
    if any(red[i][A.cols] != 0 for i in range(rank, A.rows)):
        return AffineSolutionSet(None, nullspace(A))
    x = [_ZERO] * A.cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][A.cols]
    return AffineSolutionSet(tuple(x), nullspace(A))


def solve_linear_combination(columns: Sequence[Sequence], target: Sequence) -> Vector | None:
    """Coefficients expressing ``target`` in the span of ``columns``, or None."""
    n = len(target)
    A = Matrix.from_columns(columns, n) if columns else Matrix.zero(n, 0)
    sol = solve_affine(A, target)
    return sol.particular
