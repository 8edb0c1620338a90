import random

import pytest

from exactcouples.generators import (
    decorate,
    double_couple,
    random_massey_couple,
)

# Shared pools of randomly generated couples.  Generation dominates the
# suite's runtime, so the acceptance criteria draw from these session
# fixtures instead of regenerating.


@pytest.fixture(scope="session")
def vect_pool():
    rng = random.Random(20240)
    return [
        random_massey_couple(rng, n_degrees=3, max_dim=3, n_levels=3)[0]
        for _ in range(200)
    ]


@pytest.fixture(scope="session")
def filt_pool():
    rng = random.Random(20241)
    pool = []
    for i in range(50):
        c, _ = random_massey_couple(rng, n_degrees=2, max_dim=2, n_levels=2)
        if i % 2:
            pool.append(decorate(c, "trivial"))
        else:
            pool.append(decorate(double_couple(c), "fixture"))
    return pool
