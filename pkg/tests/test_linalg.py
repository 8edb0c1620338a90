"""Exact rational linear algebra: rref, nullspace, solve, subspaces."""

import random
from fractions import Fraction

import pytest

from exactcouples.linalg import (
    Matrix,
    Subspace,
    column_space,
    nullspace_basis,
    rat,
    rat_str,
    solve,
    solve_right,
    solve_unique,
    subspace_algebra,
)


def random_matrix(rng, rows, cols, lo=-3, hi=3):
    return Matrix(rows, cols, [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def test_rat_parsing_and_formatting():
    assert rat("2/4") == Fraction(1, 2)
    assert rat("-3") == Fraction(-3)
    assert rat_str(Fraction(1, 2)) == "1/2"
    assert rat_str(Fraction(4, 2)) == "2"
    assert rat_str(Fraction(-1, 3)) == "-1/3"


def test_rref_example():
    m = Matrix(2, 2, [[1, 2], [2, 4]])
    red, pivots = m.rref()
    assert red == Matrix(2, 2, [[1, 2], [0, 0]])
    assert pivots == (0,)
    assert m.rank() == 1


def test_rref_is_idempotent():
    rng = random.Random(1)
    for _ in range(50):
        m = random_matrix(rng, rng.randint(0, 5), rng.randint(0, 5))
        red, _ = m.rref()
        again, _ = red.rref()
        assert again == red


def test_nullspace_example():
    n = Matrix(1, 2, [[1, 2]]).nullspace()
    assert n.cols == 1
    assert n.column(0) == (Fraction(-2), Fraction(1))


def test_rank_nullity():
    rng = random.Random(2)
    for _ in range(60):
        m = random_matrix(rng, rng.randint(0, 5), rng.randint(0, 5))
        n = m.nullspace()
        assert m.rank() + n.cols == m.cols
        if n.cols:
            assert (m * n).is_zero()
        assert n.rank() == n.cols  # basis really is independent


def test_solve_consistent_and_inconsistent():
    a = Matrix(2, 2, [[1, 0], [1, 0]])
    good = solve(a, Matrix(2, 1, [[3], [3]]))
    assert good is not None
    assert a * good.particular == Matrix(2, 1, [[3], [3]])
    assert good.nullspace.cols == 1
    assert not good.unique
    assert solve(a, Matrix(2, 1, [[3], [4]])) is None


def test_solve_properties():
    rng = random.Random(3)
    for _ in range(60):
        a = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        x = random_matrix(rng, a.cols, 2)
        res = solve(a, a * x)
        assert res is not None
        assert a * res.particular == a * x
        assert res.unique == (a.nullspace().cols == 0)


def test_solve_unique_raises_when_ambiguous():
    a = Matrix(1, 2, [[1, 1]])
    with pytest.raises(ValueError):
        solve_unique(a, Matrix(1, 1, [[1]]))


def test_solve_right_transposed():
    rng = random.Random(4)
    for _ in range(40):
        a = random_matrix(rng, 3, rng.randint(1, 4))
        x = random_matrix(rng, 2, 3)
        res = solve_right(a, x * a)
        assert res is not None
        assert res.particular * a == x * a


def test_subspace_canonical_form_makes_equality_syntactic():
    u = Subspace(2, Matrix.from_columns(2, [[1, 1], [1, -1]]))
    v = Subspace(2, Matrix.from_columns(2, [[1, 0], [0, 1]]))
    assert u == v
    assert u.basis == v.basis


def test_subspace_algebra_example():
    u = Subspace(3, Matrix.from_columns(3, [[1, 0, 0], [0, 1, 0]]))
    v = Subspace(3, Matrix.from_columns(3, [[0, 1, 0], [0, 0, 1]]))
    rel = subspace_algebra(u, v)
    assert not rel["equal"]
    assert rel["sum"].dim == 3
    assert rel["intersection"].dim == 1
    assert rel["intersection"].contains_vector(Matrix(3, 1, [[0], [1], [0]]))


def test_dimension_formula():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 5)
        u = column_space(random_matrix(rng, n, rng.randint(0, n)))
        v = column_space(random_matrix(rng, n, rng.randint(0, n)))
        s = u.sum(v)
        i = u.intersection(v)
        assert s.dim + i.dim == u.dim + v.dim
        assert s.contains(u) and s.contains(v)
        assert u.contains(i) and v.contains(i)


def test_preimage_and_image_adjunction():
    rng = random.Random(6)
    for _ in range(40):
        m = random_matrix(rng, 3, 4)
        v = column_space(random_matrix(rng, 3, rng.randint(0, 3)))
        pre = v.preimage_by(m)
        # m(pre) lands in v, and pre contains ker m
        assert v.contains(pre.map_by(m))
        assert pre.contains(nullspace_basis(m))


def test_inverse():
    rng = random.Random(7)
    found = 0
    while found < 20:
        m = random_matrix(rng, 3, 3)
        if m.rank() < 3:
            continue
        found += 1
        assert m * m.inverse() == Matrix.identity(3)
        assert m.inverse() * m == Matrix.identity(3)
