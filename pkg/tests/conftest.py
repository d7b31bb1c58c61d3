import numpy as np
import pytest

from paritysearch import backends


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    # JIT-compile the numba kernels once so timed tests measure algorithm cost
    backends.warm_up()


@pytest.fixture(params=backends.available_backends())
def backend(request):
    with backends.use_backend(request.param):
        yield request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_state(n, rng):
    """Random unit vector as a SubsystemState."""
    from paritysearch import SubsystemState

    amps = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return SubsystemState(amps / np.linalg.norm(amps))
