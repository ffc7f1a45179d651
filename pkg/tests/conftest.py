import hypothesis
import pytest

from bosejump import make_context
from bosejump.dispersion import cached_table

hypothesis.settings.register_profile("default", deadline=None, max_examples=25)
hypothesis.settings.load_profile("default")


@pytest.fixture(scope="session")
def bose1():
    return make_context(-1.0, "bose")


@pytest.fixture(scope="session")
def fermi1():
    return make_context(-1.0, "fermi")


@pytest.fixture(scope="session")
def classical():
    return make_context(-1.0, "classical")


@pytest.fixture(scope="session")
def bose1_table(bose1):
    return cached_table(bose1)
