"""The quasiabelian backend: finitely-filtered vector spaces over Q.

An object is a coordinate space together with a finite decreasing chain of
subspaces (exhaustive at the top, zero at the bottom).  Morphisms are
matrices that respect the chains.  Strictness is a genuine constraint
here: the canonical Coim -> Im comparison is always bijective on
underlying spaces but its inverse may fail to respect the filtration
(the classical "shift" bimorphism).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .category import Backend, Morphism, Square
from .errors import MorphismError
from .linalg import Matrix, Subspace, column_space, solve_unique
from .vect import direct_sum_matrix, quotient_projection


@dataclass(frozen=True)
class FiltObject:
    dim: int
    steps: tuple[Subspace, ...]

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("negative dimension")
        if len(self.steps) < 2:
            raise ValueError("filtration needs at least F0 and a final zero step")
        if self.steps[0] != Subspace.full(self.dim):
            raise ValueError("filtration must be exhaustive (F0 = everything)")
        if self.steps[-1] != Subspace.zero(self.dim):
            raise ValueError("filtration must be separated (last step = 0)")
        for a, b in zip(self.steps, self.steps[1:]):
            if not a.contains(b):
                raise ValueError("filtration steps must be decreasing")

    def step(self, p: int) -> Subspace:
        """Step p, padded by repetition: full below 0, zero beyond the end."""
        if p < 0:
            return self.steps[0]
        if p >= len(self.steps):
            return self.steps[-1]
        return self.steps[p]

    @property
    def length(self) -> int:
        return len(self.steps)


def trivial_object(dim: int) -> FiltObject:
    return FiltObject(dim, (Subspace.full(dim), Subspace.zero(dim)))


def filt_object(dim: int, steps) -> FiltObject:
    return FiltObject(dim, tuple(steps))


class FiltBackend(Backend):
    name = "filt"
    abelian = False
    quasiabelian = True

    def dim(self, obj) -> int:
        return obj.dim

    def objects_equal(self, a, b) -> bool:
        if a.dim != b.dim:
            return False
        depth = max(a.length, b.length)
        return all(a.step(p) == b.step(p) for p in range(depth))

    def zero_object(self):
        return trivial_object(0)

    def matrix_witness(self, source, target, matrix: Matrix):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            return "shape mismatch"
        depth = max(source.length, target.length)
        for p in range(1, depth):
            if not target.step(p).contains(source.step(p).map_by(matrix)):
                return f"filtration violated at level {p}"
        return None

    def kernel(self, f: Morphism) -> Morphism:
        basis = f.matrix.nullspace()
        kdim = basis.cols
        ker = column_space(basis) if kdim else Subspace.zero(f.source.dim)
        steps = []
        for p in range(f.source.length):
            cap = ker.intersection(f.source.step(p))
            coords = solve_unique(basis, cap.basis) if kdim else Matrix.zero(0, 0)
            steps.append(Subspace(kdim, coords))
        obj = FiltObject(kdim, tuple(steps))
        return Morphism(self, obj, f.source, basis)

    def cokernel(self, f: Morphism) -> Morphism:
        proj = quotient_projection(f.matrix)
        steps = tuple(f.target.step(p).map_by(proj) for p in range(f.target.length))
        obj = FiltObject(proj.rows, steps)
        return Morphism(self, f.target, obj, proj)

    def pullback(self, f: Morphism, g: Morphism) -> Square:
        if not self.objects_equal(f.target, g.target):
            raise ValueError("pullback needs a common target")
        X, Y = f.source, g.source
        basis = f.matrix.hstack(-g.matrix).nullspace()
        pdim = basis.cols
        span = column_space(basis) if pdim else Subspace.zero(X.dim + Y.dim)
        depth = max(X.length, Y.length)
        steps = []
        for p in range(depth):
            prod = Subspace(
                X.dim + Y.dim,
                direct_sum_matrix([X.step(p).basis, Y.step(p).basis]),
            )
            cap = span.intersection(prod)
            coords = solve_unique(basis, cap.basis) if pdim else Matrix.zero(0, 0)
            steps.append(Subspace(pdim, coords))
        obj = FiltObject(pdim, tuple(steps))
        p1 = Morphism(self, obj, X, basis.take_rows(range(X.dim)))
        p2 = Morphism(self, obj, Y, basis.take_rows(range(X.dim, X.dim + Y.dim)))
        return Square("pullback", obj, p1, p2, f, g)

    def pushout(self, f: Morphism, g: Morphism) -> Square:
        if not self.objects_equal(f.source, g.source):
            raise ValueError("pushout needs a common source")
        Y, Z = f.target, g.target
        glue = f.matrix.vstack(-g.matrix)
        proj = quotient_projection(glue)
        depth = max(Y.length, Z.length)
        steps = []
        for p in range(depth):
            prod = Subspace(
                Y.dim + Z.dim,
                direct_sum_matrix([Y.step(p).basis, Z.step(p).basis]),
            )
            steps.append(prod.map_by(proj))
        obj = FiltObject(proj.rows, tuple(steps))
        i1 = Morphism(self, Y, obj, proj.take_columns(range(Y.dim)))
        i2 = Morphism(self, Z, obj, proj.take_columns(range(Y.dim, Y.dim + Z.dim)))
        return Square("pushout", obj, i1, i2, f, g)

    def random_object(self, rng: random.Random, max_dim: int = 4):
        dim = rng.randint(0, max_dim)
        if dim == 0:
            return trivial_object(0)
        levels = rng.randint(1, 3)
        steps = [Subspace.full(dim)]
        for _ in range(levels - 1):
            prev = steps[-1]
            want = rng.randint(0, prev.dim)
            cols = Matrix(
                prev.dim, want, [[rng.randint(-2, 2) for _ in range(want)] for _ in range(prev.dim)]
            )
            steps.append(Subspace(dim, prev.basis * cols))
        steps.append(Subspace.zero(dim))
        return FiltObject(dim, tuple(steps))

    def random_morphism(self, rng: random.Random, source, target) -> Morphism:
        """Random filtration-respecting matrix.

        The respecting matrices form a linear subspace of matrix space; we
        compute a basis of it from the containment constraints and draw
        random integer coordinates, so there is no rejection blowup.
        """
        basis = hom_space_basis(source, target)
        tr, sc = target.dim, source.dim
        if not basis:
            return self.zero(source, target)
        for _ in range(8):
            coeffs = [rng.randint(-2, 2) for _ in basis]
            entries = [Matrix.zero(tr, sc)] + [b.scale(c) for b, c in zip(basis, coeffs)]
            m = entries[0]
            for e in entries[1:]:
                m = m + e
            if not m.is_zero():
                return Morphism(self, source, target, m)
        return self.zero(source, target)


def hom_space_basis(source: FiltObject, target: FiltObject) -> list[Matrix]:
    """Basis of the space of filtration-respecting matrices source -> target."""
    tr, sc = target.dim, source.dim
    if tr == 0 or sc == 0:
        return []
    rows = []
    depth = max(source.length, target.length)
    for p in range(1, depth):
        ann = target.step(p).basis.transpose().nullspace().transpose()  # rows kill F_p(tgt)
        if ann.rows == 0:
            continue
        for v in source.step(p).basis.columns():
            for r in range(ann.rows):
                row = [0] * (tr * sc)
                for i in range(tr):
                    ci = ann.data[r][i]
                    if ci == 0:
                        continue
                    for j in range(sc):
                        row[i * sc + j] = ci * v[j]
                rows.append(row)
    if not rows:
        constraint = Matrix.zero(0, tr * sc)
    else:
        constraint = Matrix(len(rows), tr * sc, rows)
    null = constraint.nullspace()
    out = []
    for jcol in range(null.cols):
        col = null.column(jcol)
        out.append(Matrix(tr, sc, [[col[i * sc + j] for j in range(sc)] for i in range(tr)]))
    return out


def is_strict_filt(f: Morphism) -> tuple[bool, int | None]:
    """Fast strictness test: f(F_p) = im f (cap) F_p(target) for all p.

    Returns (verdict, failing level or None).  Must agree with the generic
    solver-based test; the cross-check lives in the test suite.
    """
    im = column_space(f.matrix)
    depth = max(f.source.length, f.target.length)
    for p in range(1, depth):
        pushed = f.source.step(p).map_by(f.matrix)
        cut = im.intersection(f.target.step(p))
        if pushed != cut:
            return False, p
    return True, None


#: shared instance; the backend is stateless
FILT = FiltBackend()


def shift_fixture() -> Morphism:
    """The canonical non-strict bimorphism.

    Underlying identity of Q, source filtered trivially, target with an
    extra full step: monic, epic, kernel and cokernel both zero, yet not
    an isomorphism in the filtered category.
    """
    src = trivial_object(1)
    tgt = FiltObject(1, (Subspace.full(1), Subspace.full(1), Subspace.zero(1)))
    return FILT.morphism(src, tgt, Matrix.identity(1))


def check_morphism(source: FiltObject, target: FiltObject, matrix: Matrix) -> Morphism:
    """Construct a filtered morphism, raising with the failing level."""
    witness = FILT.matrix_witness(source, target, matrix)
    if witness is not None:
        raise MorphismError(witness)
    return Morphism(FILT, source, target, matrix)
