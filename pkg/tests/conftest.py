import numpy as np
import pytest

from pglogit import sample_pg, sample_pg_vector


@pytest.fixture(scope="session", autouse=True)
def warm_pg_kernels():
    """Trigger JIT compilation of the sampling kernels once, up front.

    The compiled kernels are disk-cached, but a cold cache would otherwise
    charge compilation time to whichever timed test runs first.
    """
    rng = np.random.default_rng(0)
    sample_pg_vector(np.array([1.0, 3.0]), np.array([0.0, 2.0]), rng)
    sample_pg(2.5, 1.0, rng)
