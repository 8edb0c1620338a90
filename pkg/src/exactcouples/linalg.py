"""Exact linear algebra over the rationals.

Everything in this package ultimately reduces to matrix arithmetic over Q.
Matrices are immutable, entries are :class:`fractions.Fraction` (arbitrary
precision, always canonical), and there is no floating point anywhere.

Subspaces are stored in reduced column echelon form, so two equal subspaces
have literally identical representations and subobject comparisons are
syntactic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def rat(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a canonical Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def rat_str(x: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Matrix:
    """Immutable rational matrix, row-major."""

    __slots__ = ("rows", "cols", "data", "_rref")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable]):
        self.rows = rows
        self.cols = cols
        self.data = tuple(tuple(rat(x) for x in row) for row in data)
        if len(self.data) != rows or any(len(r) != cols for r in self.data):
            raise ValueError("matrix shape mismatch")
        self._rref = None

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "Matrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, data)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Sequence]) -> "Matrix":
        cols = len(columns)
        return cls(rows, cols, [[columns[j][i] for j in range(cols)] for i in range(rows)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(rat_str(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return Matrix(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [[-x for x in row] for row in self.data])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        ot = other.transpose().data
        return Matrix(
            self.rows,
            other.cols,
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.data],
        )

    def scale(self, c) -> "Matrix":
        c = rat(c)
        return Matrix(self.rows, self.cols, [[c * x for x in row] for row in self.data])

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, zip(*self.data)) if self.rows else Matrix(
            self.cols, 0, [[] for _ in range(self.cols)]
        )

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def take_columns(self, js: Sequence[int]) -> "Matrix":
        return Matrix(self.rows, len(js), [[row[j] for j in js] for row in self.data])

    def take_rows(self, ins: Sequence[int]) -> "Matrix":
        return Matrix(len(ins), self.cols, [self.data[i] for i in ins])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix(
            self.rows,
            self.cols + other.cols,
            [r1 + r2 for r1, r2 in zip(self.data, other.data)],
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix(self.rows + other.rows, self.cols, self.data + other.data)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    # -- echelon machinery ------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot column indices.

        Pivot choice is "first nonzero"; over Q there is nothing to gain
        from pivoting heuristics and the form is unique anyway.
        """
        if self._rref is not None:
            return self._rref
        m = [list(row) for row in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            pr = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            piv = m[r][c]
            if piv != 1:
                m[r] = [x / piv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        self._rref = (Matrix(self.rows, self.cols, m), tuple(pivots))
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "Matrix":
        """Columns form a basis of {x : self * x = 0}."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        cols = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            for i, pc in enumerate(pivots):
                v[pc] = -red.data[i][fc]
            cols.append(v)
        return Matrix.from_columns(self.cols, cols)

    def is_injective(self) -> bool:
        return self.rank() == self.cols

    def is_surjective(self) -> bool:
        return self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        aug = self.hstack(Matrix.identity(self.rows))
        red, pivots = aug.rref()
        if len(pivots) != self.rows or any(p >= self.rows for p in pivots):
            raise ValueError("matrix is singular")
        return red.take_columns(range(self.rows, 2 * self.rows))


@dataclass(frozen=True)
class SolveResult:
    """A particular solution together with the homogeneous solution space."""

    particular: Matrix
    nullspace: Matrix

    @property
    def unique(self) -> bool:
        return self.nullspace.cols == 0


def solve(a: Matrix, b: Matrix):
    """Solve a * X = b columnwise.

    Returns a :class:`SolveResult` or None when the system is inconsistent
    (b's column space exceeds a's).
    """
    if a.rows != b.rows:
        raise ValueError("row mismatch in solve")
    red, pivots = a.hstack(b).rref()
    if any(p >= a.cols for p in pivots):
        return None
    cols = []
    for j in range(b.cols):
        v = [Fraction(0)] * a.cols
        for i, pc in enumerate(pivots):
            v[pc] = red.data[i][a.cols + j]
        cols.append(v)
    return SolveResult(Matrix.from_columns(a.cols, cols), a.nullspace())


def solve_unique(a: Matrix, b: Matrix) -> Matrix:
    """Solve a * X = b when a has full column rank; raises otherwise."""
    res = solve(a, b)
    if res is None:
        raise ValueError("inconsistent system")
    if not res.unique:
        raise ValueError("solution not unique")
    return res.particular


def solve_right(a: Matrix, b: Matrix):
    """Solve X * a = b (a has full row rank for uniqueness)."""
    res = solve(a.transpose(), b.transpose())
    if res is None:
        return None
    return SolveResult(res.particular.transpose(), res.nullspace)


class Subspace:
    """Subspace of Q^ambient with a canonical reduced-column-echelon basis."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: int, basis: Matrix):
        # canonicalize: reduce the transposed generators, drop zero rows
        red, pivots = basis.transpose().rref()
        keep = red.take_rows(range(len(pivots)))
        self.ambient = ambient
        self.basis = keep.transpose()
        if self.basis.rows != ambient:
            raise ValueError("basis/ambient mismatch")

    @classmethod
    def from_columns(cls, ambient: int, columns: Matrix) -> "Subspace":
        return cls(ambient, columns)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, Matrix.zero(ambient, 0))

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, Matrix.identity(ambient))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient})"

    def contains_vector(self, v: Matrix) -> bool:
        return solve(self.basis, v) is not None

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return solve(self.basis, other.basis) is not None

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient, self.basis.hstack(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        ns = self.basis.hstack(-other.basis).nullspace()
        return Subspace(self.ambient, self.basis * ns.take_rows(range(self.dim)))

    def map_by(self, m: Matrix) -> "Subspace":
        """Image of this subspace under the linear map m."""
        if m.cols != self.ambient:
            raise ValueError("map/ambient mismatch")
        return Subspace(m.rows, m * self.basis)

    def preimage_by(self, m: Matrix) -> "Subspace":
        """Preimage {x : m x in self} under the linear map m."""
        if m.rows != self.ambient:
            raise ValueError("map/ambient mismatch")
        ns = m.hstack(-self.basis).nullspace()
        return Subspace(m.cols, ns.take_rows(range(m.cols)))

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")


def subspace_algebra(u: Subspace, v: Subspace) -> dict:
    """Combined comparison record for two subspaces of the same ambient."""
    return {
        "equal": u == v,
        "sum": u.sum(v),
        "intersection": u.intersection(v),
        "contains": u.contains(v),
    }


def column_space(m: Matrix) -> Subspace:
    return Subspace(m.rows, m)


def nullspace_basis(m: Matrix) -> Subspace:
    return Subspace(m.cols, m.nullspace())


def complement_columns(sub: Matrix, within: Matrix | None = None) -> list[int]:
    """Greedy pivot completion of the columns of `sub` to a basis.

    Returns indices of columns of `within` (default: identity) that complete
    sub's column space to the full space spanned by `within`'s columns.
    Deterministic: columns are tried in order.
    """
    amb = sub.rows
    if within is None:
        within = Matrix.identity(amb)
    current = sub
    r = current.rank()
    chosen = []
    for j in range(within.cols):
        cand = current.hstack(within.take_columns([j]))
        if cand.rank() > r:
            chosen.append(j)
            current = cand
            r += 1
    return chosen
