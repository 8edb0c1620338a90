"""The abelian vector-space backend."""

import random

from exactcouples.category import image, is_strict, mediate_pullback, mediate_pushout
from exactcouples.linalg import Matrix, column_space
from exactcouples.vect import VECT, VectObject, block_matrix, direct_sum_matrix

Q1 = VectObject(1)
Q2 = VectObject(2)


def test_kernel_cokernel_of_zero_and_identity():
    z = VECT.zero(Q2, Q2)
    assert VECT.kernel(z).matrix == Matrix.identity(2)
    assert VECT.cokernel(z).matrix == Matrix.identity(2)
    i = VECT.identity(Q2)
    assert VECT.kernel(i).matrix.cols == 0
    assert VECT.cokernel(i).matrix.rows == 0


def test_kernel_cokernel_nilpotent():
    f = VECT.morphism(Q2, Q2, Matrix(2, 2, [[0, 1], [0, 0]]))
    k = VECT.kernel(f)
    assert column_space(k.matrix) == column_space(Matrix(2, 1, [[1], [0]]))
    c = VECT.cokernel(f)
    assert c.matrix.rows == 1
    assert (c @ f).is_zero()
    # the quotient kills exactly the image span{e1}
    assert c.matrix * Matrix(2, 1, [[1], [0]]) == Matrix.zero(1, 1)


def test_pullback_of_identities_is_diagonal():
    i = VECT.identity(Q1)
    sq = VECT.pullback(i, i)
    assert VECT.dim(sq.obj) == 1
    assert sq.f @ sq.first == sq.g @ sq.second


def test_pullback_against_zero():
    rng = random.Random(11)
    for _ in range(20):
        x, y, z = (rng.randint(0, 4) for _ in range(3))
        f = VECT.random_morphism(rng, VectObject(x), VectObject(z))
        g = VECT.zero(VectObject(y), VectObject(z))
        sq = VECT.pullback(f, g)
        assert VECT.dim(sq.obj) == f.matrix.nullspace().cols + y


def test_pushout_of_identities():
    i = VECT.identity(Q1)
    sq = VECT.pushout(i, i)
    assert VECT.dim(sq.obj) == 1
    assert sq.first @ sq.f == sq.second @ sq.g


def test_every_morphism_is_strict():
    rng = random.Random(12)
    for _ in range(200):
        src = VECT.random_object(rng)
        tgt = VECT.random_object(rng)
        f = VECT.random_morphism(rng, src, tgt)
        st = is_strict(f)
        assert st.strict
        assert st.inverse is not None


def test_rank_nullity_against_kernel_image():
    rng = random.Random(13)
    for _ in range(60):
        src = VECT.random_object(rng)
        tgt = VECT.random_object(rng)
        f = VECT.random_morphism(rng, src, tgt)
        k = VECT.kernel(f)
        im = image(f)
        assert k.matrix.cols + im.matrix.cols == VECT.dim(src)
        assert im.matrix.cols == f.matrix.rank()


def test_mediation_on_random_commuting_cones():
    rng = random.Random(14)
    for _ in range(30):
        x, y, z, w = (rng.randint(1, 3) for _ in range(4))
        f = VECT.random_morphism(rng, VectObject(x), VectObject(z))
        g = VECT.random_morphism(rng, VectObject(y), VectObject(z))
        sq = VECT.pullback(f, g)
        h = VECT.random_morphism(rng, VectObject(w), sq.obj)
        m = mediate_pullback(sq, sq.first @ h, sq.second @ h)
        assert m == h
        po = VECT.pushout(
            VECT.random_morphism(rng, VectObject(x), VectObject(y)),
            VECT.random_morphism(rng, VectObject(x), VectObject(z)),
        )
        h2 = VECT.random_morphism(rng, po.obj, VectObject(w))
        m2 = mediate_pushout(po, h2 @ po.first, h2 @ po.second)
        assert m2 == h2


def test_block_helpers():
    a = Matrix.identity(2)
    b = Matrix(1, 1, [[3]])
    d = direct_sum_matrix([a, b])
    assert d.rows == 3 and d.cols == 3
    assert d.data[2][2] == 3 and d.data[0][2] == 0
    g = block_matrix([[a, Matrix.zero(2, 1)], [Matrix.zero(1, 2), b]])
    assert g == d
