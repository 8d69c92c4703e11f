import pytest
from hypothesis import HealthCheck, settings

# fixed-seed, reproducible property tests
settings.register_profile(
    "quiverforge",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("quiverforge")

from quiverforge import a2_quiver, jordan_quiver, kronecker_quiver, make_field


@pytest.fixture(scope="session")
def jordan():
    return jordan_quiver()


@pytest.fixture(scope="session")
def kron2():
    return kronecker_quiver(2)


@pytest.fixture(scope="session")
def a2():
    return a2_quiver()


@pytest.fixture(scope="session")
def f2():
    return make_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 2)
