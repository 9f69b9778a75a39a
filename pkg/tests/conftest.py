import pytest
from hypothesis import HealthCheck, settings

from twotemp.species import resolve_species

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def n2():
    return resolve_species("n2")


@pytest.fixture(scope="session")
def o2():
    return resolve_species("o2")


@pytest.fixture(scope="session")
def ch4():
    return resolve_species("ch4")
