"""Couple generation from filtered complexes, decorations, lemma suites."""

import random

import pytest

from exactcouples.couple import validate_couple
from exactcouples.errors import DecorationError
from exactcouples.generators import (
    FilteredComplex,
    decorate,
    decorate_with,
    double_couple,
    lemma_suite,
    massey_couple,
    massey_fixture,
    random_filtered_complex,
    random_massey_couple,
)
from exactcouples.linalg import Matrix, Subspace
from exactcouples.vect import VECT


def test_random_filtered_complex_invariants():
    rng = random.Random(51)
    for _ in range(10):
        fc = random_filtered_complex(rng, n_degrees=3, max_dim=4, n_levels=3)
        for n in range(1, len(fc.dims)):
            d = fc.differential(n)
            dd = fc.differential(n - 1) * d if n >= 1 else None
            if n >= 2:
                assert (fc.differential(n - 1) * d).is_zero()


def test_massey_couple_is_exact():
    rng = random.Random(52)
    for _ in range(8):
        fc = random_filtered_complex(rng, n_degrees=3, max_dim=3, n_levels=3)
        c, layout = massey_couple(fc, rng)
        validate_couple(c.alpha, c.beta, c.gamma)


def test_massey_trivial_filtration_doubles():
    """With the trivial one-step filtration every graded piece is the whole
    complex, so E carries two copies of the homology (the graded block and
    the stabilization block) while D carries one."""
    rng = random.Random(53)
    dims = (2, 3, 2)
    diffs = (None, Matrix.zero(2, 3), Matrix.zero(3, 2))
    steps = (
        tuple(Subspace.full(d) for d in dims),
        tuple(Subspace.zero(d) for d in dims),
    )
    fc = FilteredComplex(dims, diffs, steps)
    c, layout = massey_couple(fc, rng)
    assert VECT.dim(c.E) == 2 * VECT.dim(c.D)
    validate_couple(c.alpha, c.beta, c.gamma)


def test_massey_fixture_is_deterministic_and_small():
    fc1 = massey_fixture()
    fc2 = massey_fixture()
    assert fc1.dims == fc2.dims
    assert sum(fc1.dims) <= 12
    for n in range(1, len(fc1.dims)):
        assert fc1.differential(n) == fc2.differential(n)


def test_decorate_trivial_and_fixture():
    rng = random.Random(54)
    c, _ = random_massey_couple(rng, n_degrees=2, max_dim=2, n_levels=2)
    t = decorate(c, "trivial")
    validate_couple(t.alpha, t.beta, t.gamma)
    f = decorate(double_couple(c), "fixture")
    validate_couple(f.alpha, f.beta, f.gamma)
    assert f.backend.name == "filt"


def test_decorate_rejects_adversarial_filtration():
    """A filtration not preserved by the couple is rejected with the
    morphism named; one that is preserved but breaks strictness is
    rejected with the failing level."""
    rng = random.Random(55)
    c, _ = random_massey_couple(rng, n_degrees=2, max_dim=2, n_levels=2)
    dD = VECT.dim(c.D)
    dE = VECT.dim(c.E)
    # give D an extra full step but leave E trivial: beta must now map
    # F1(D) = D into F1(E) = 0, impossible unless beta = 0
    d_steps = (Subspace.full(dD), Subspace.full(dD), Subspace.zero(dD))
    e_steps = (Subspace.full(dE), Subspace.zero(dE), Subspace.zero(dE))
    if not c.beta.matrix.is_zero():
        with pytest.raises(DecorationError) as exc:
            decorate_with(c, d_steps, e_steps)
        assert exc.value.morphism_name == "beta"


def test_decorate_fixture_needs_even_dims():
    rng = random.Random(56)
    while True:
        c, _ = random_massey_couple(rng, n_degrees=2, max_dim=2, n_levels=2)
        if VECT.dim(c.D) % 2 or VECT.dim(c.E) % 2:
            break
    with pytest.raises(DecorationError):
        decorate(c, "fixture")


@pytest.mark.parametrize("which", ["first", "second", "pushout_strict"])
def test_lemma_suites_small(which):
    rep = lemma_suite(which, trials=40, seed=7)
    assert rep.ok
    assert rep.failures == []
    assert rep.trials == 40
