"""Exact dense rational linear algebra.

Everything the cohomology machinery needs reduces to the primitives here:
rank, right null space, particular solutions, and quotient-space data, all
over arbitrary-precision rationals with no rounding anywhere.

Row reduction is delegated to a kernel module chosen at import time: the
compiled extension ``_rref_c`` when it is built, otherwise the pure-Python
twin ``_rref_py``. Set ``NLIECOH_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, SubspaceViolation

if os.environ.get("NLIECOH_PURE"):
    from . import _rref_py as _kernel
else:
    try:
        from . import _rref_c as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _rref_py as _kernel

Vector = tuple[Fraction, ...]


def kernel_backend() -> str:
    """Name of the row-reduction backend in use ('c' or 'python')."""
    return _kernel.BACKEND


def frac(x) -> Fraction:
    """Coerce ints, strings like '-3/4', or Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot treat {x!r} as an exact rational")


def vector(entries: Iterable) -> Vector:
    return tuple(frac(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Vector) -> bool:
    return all(a == 0 for a in v)


class Matrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence]):
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        tup = tuple(tuple(frac(x) for x in row) for row in data)
        if len(tup) != rows or any(len(r) != cols for r in tup):
            raise DimensionMismatch(
                f"matrix data does not fill {rows}x{cols}"
            )
        object.__setattr__(self, "data", tup)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return cls(rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(
            n, n, [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        cols = [vector(c) for c in columns]
        nrows = len(cols[0]) if cols else 0
        return cls(nrows, len(cols), [[c[i] for c in cols] for i in range(nrows)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, list(zip(*self.data))) if self.data else Matrix(self.cols, 0, [[] for _ in range(self.cols)])

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.data)

    def mul_vector(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector length {len(v)} != cols {self.cols}")
        v = vector(v)
        out = []
        for r in self.data:
            acc = Fraction(0)
            for a, b in zip(r, v):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        zero = Fraction(0)
        out = [[zero] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.data):
            oi = out[i]
            for k, a in enumerate(row):
                if a:
                    brow = other.data[k]
                    for j, b in enumerate(brow):
                        if b:
                            oi[j] += a * b
        return Matrix(self.rows, other.cols, out)

    def add(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return Matrix(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
        )

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix(self.rows, self.cols, [[c * x for x in r] for r in self.data])

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        reduced, pivots = _kernel.rref([list(r) for r in self.data])
        return Matrix(self.rows, self.cols, reduced), tuple(pivots)


def rank(m: Matrix) -> int:
    """Exact rank via row reduction."""
    _, pivots = _kernel.rref([list(r) for r in m.data])
    return len(pivots)


def kernel_basis(m: Matrix) -> list[Vector]:
    """A basis of the right null space, one vector per free column.

    Every returned v satisfies m.mul_vector(v) == 0 exactly, and the list
    has length cols - rank.  Basis order follows ascending free column.
    """
    reduced, pivots = _kernel.rref([list(r) for r in m.data])
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][f]
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> Optional[Vector]:
    """Some x with m x = b, or None when b is outside the column space."""
    if len(b) != m.rows:
        raise DimensionMismatch(f"rhs length {len(b)} != rows {m.rows}")
    b = vector(b)
    aug = [list(r) + [bv] for r, bv in zip(m.data, b)]
    if not aug:
        return zero_vector(m.cols) if all(x == 0 for x in b) else None
    reduced, pivots = _kernel.rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][m.cols]
    return tuple(x)


class RowSpace:
    """Incremental echelon accumulator for span membership and rank."""

    def __init__(self, vectors: Iterable[Sequence] = ()):  # rows
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, v: Sequence) -> list[Fraction]:
        w = [frac(x) for x in v]
        for pc, row in zip(self._pivots, self._rows):
            c = w[pc]
            if c:
                for j in range(pc, len(w)):
                    if row[j]:
                        w[j] -= c * row[j]
        return w

    def contains(self, v: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Insert v; returns True when it enlarged the span."""
        w = self.reduce(v)
        pc = next((j for j, x in enumerate(w) if x != 0), None)
        if pc is None:
            return False
        inv = Fraction(1) / w[pc]
        w = [x * inv for x in w]
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] < pc:
            pos += 1
        self._pivots.insert(pos, pc)
        self._rows.insert(pos, w)
        return True


def quotient_data(
    z_basis: Sequence[Sequence], b_basis: Sequence[Sequence]
) -> tuple[int, list[Vector]]:
    """Dimension and representatives of span(z_basis)/span(b_basis).

    Raises SubspaceViolation when some b vector lies outside span(z_basis),
    which signals a broken complex upstream.  Representatives are drawn from
    z_basis itself, so they are genuine cocycles when z_basis is.
    """
    zspace = RowSpace(z_basis)
    for b in b_basis:
        if not zspace.contains(b):
            raise SubspaceViolation(
                "coboundary vector outside the cocycle span"
            )
    acc = RowSpace(b_basis)
    rank_b = acc.rank
    reps: list[Vector] = []
    for z in z_basis:
        if acc.add(z):
            reps.append(vector(z))
    dim = zspace.rank - rank_b
    assert dim == len(reps)
    return dim, reps
