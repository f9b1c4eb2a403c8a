import numpy as np
import pytest

from thermocat import ProbDist

SEED = 12345


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def random_dist(rng, dim, full_rank=True):
    """Dirichlet draw; full_rank floors components away from zero."""
    w = rng.dirichlet(np.ones(dim))
    if full_rank:
        w = (w + 1e-3) / (1.0 + dim * 1e-3)
    return ProbDist(tuple(w / w.sum()))


def random_column_stochastic(rng, dim_out, dim_in):
    cols = rng.dirichlet(np.ones(dim_out), size=dim_in)  # one row per column
    return cols.T
