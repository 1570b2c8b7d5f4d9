import numpy as np
import pytest

from fgext.verify import random_bona_fide_cm, random_bipartite_cm


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_cm_factory(rng):
    def make(n, lam_max=1.0):
        return random_bona_fide_cm(rng, n, lam_max)

    return make


@pytest.fixture
def random_bipartite_factory(rng):
    def make(n_a, n_b, lam_max=1.0):
        return random_bipartite_cm(rng, n_a, n_b, lam_max)

    return make


def random_antisymmetric(rng, dim, scale=1.0):
    raw = scale * rng.standard_normal((dim, dim))
    return (raw - raw.T) / 2.0
