"""The abelian backend: finite-dimensional vector spaces over Q.

Objects are coordinate spaces Q^n, morphisms are arbitrary rational
matrices.  Every morphism is strict here, which makes this model the
degenerate oracle: left and right constructions must always agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .category import Backend, Morphism, Square
from .linalg import Matrix, column_space, complement_columns, solve_unique


@dataclass(frozen=True)
class VectObject:
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("negative dimension")


def quotient_projection(inclusion: Matrix) -> Matrix:
    """Projection Q^n -> Q^q onto a deterministic complement of a subspace.

    The complement is spanned by greedily chosen standard basis vectors, so
    cokernel objects stay plain coordinate spaces.
    """
    n = inclusion.rows
    sub = column_space(inclusion).basis
    comp = complement_columns(sub)
    basis = sub.hstack(Matrix.identity(n).take_columns(comp))
    # write v = sub*a + comp*b; the projection sends v to b
    inv = basis.inverse()
    return inv.take_rows(range(sub.cols, n))


class VectBackend(Backend):
    name = "vect"
    abelian = True
    quasiabelian = True

    def dim(self, obj) -> int:
        return obj.dim

    def objects_equal(self, a, b) -> bool:
        return a.dim == b.dim

    def zero_object(self):
        return VectObject(0)

    def object(self, dim: int) -> VectObject:
        return VectObject(dim)

    def matrix_witness(self, source, target, matrix: Matrix):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            return "shape mismatch"
        return None

    def kernel(self, f: Morphism) -> Morphism:
        basis = f.matrix.nullspace()
        return Morphism(self, VectObject(basis.cols), f.source, basis)

    def cokernel(self, f: Morphism) -> Morphism:
        proj = quotient_projection(f.matrix)
        return Morphism(self, f.target, VectObject(proj.rows), proj)

    def pullback(self, f: Morphism, g: Morphism) -> Square:
        if not self.objects_equal(f.target, g.target):
            raise ValueError("pullback needs a common target")
        nx, ny = f.source.dim, g.source.dim
        basis = f.matrix.hstack(-g.matrix).nullspace()
        obj = VectObject(basis.cols)
        p1 = Morphism(self, obj, f.source, basis.take_rows(range(nx)))
        p2 = Morphism(self, obj, g.source, basis.take_rows(range(nx, nx + ny)))
        return Square("pullback", obj, p1, p2, f, g)

    def pushout(self, f: Morphism, g: Morphism) -> Square:
        if not self.objects_equal(f.source, g.source):
            raise ValueError("pushout needs a common source")
        ny, nz = f.target.dim, g.target.dim
        glue = f.matrix.vstack(-g.matrix)  # Y (+) Z modulo the image of this
        proj = quotient_projection(glue)
        obj = VectObject(proj.rows)
        i1 = Morphism(self, f.target, obj, proj.take_columns(range(ny)))
        i2 = Morphism(self, g.target, obj, proj.take_columns(range(ny, ny + nz)))
        return Square("pushout", obj, i1, i2, f, g)

    def random_object(self, rng: random.Random, max_dim: int = 4):
        return VectObject(rng.randint(0, max_dim))

    def random_morphism(self, rng: random.Random, source, target) -> Morphism:
        data = [
            [rng.randint(-2, 2) for _ in range(source.dim)] for _ in range(target.dim)
        ]
        return Morphism(self, source, target, Matrix(target.dim, source.dim, data))


#: shared instance; the backend is stateless
VECT = VectBackend()


def direct_sum_matrix(blocks: list[Matrix]) -> Matrix:
    """Block-diagonal direct sum, first block first."""
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    ro = co = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[ro + i][co + j] = b.data[i][j]
        ro += b.rows
        co += b.cols
    return Matrix(rows, cols, out)


def block_matrix(grid: list[list[Matrix]]) -> Matrix:
    """Assemble a matrix from a grid of compatible blocks."""
    out = None
    for grid_row in grid:
        row = grid_row[0]
        for b in grid_row[1:]:
            row = row.hstack(b)
        out = row if out is None else out.vstack(row)
    if out is None:
        raise ValueError("empty block grid")
    return out


def express_in_basis(basis: Matrix, vectors: Matrix) -> Matrix:
    """Coordinates of `vectors` with respect to the columns of `basis`."""
    return solve_unique(basis, vectors)
