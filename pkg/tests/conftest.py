import pytest

from gustsurf import simdb


@pytest.fixture(scope="session")
def wing():
    return simdb.reference_model()


@pytest.fixture
def ref_point():
    return dict(mass=200e3, tas=200.0, altitude=1000.0, cgx=27.0, gust_h=60.0, fg=0.9)


@pytest.fixture(scope="session")
def small_db(wing):
    return simdb.generate_database(wing, n=240, seed=7)
