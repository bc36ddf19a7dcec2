import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "polyk",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("polyk")


@pytest.fixture(scope="session")
def small_corpus():
    from polyk.corpus import small_corpus

    return small_corpus()


@pytest.fixture(scope="session")
def pipelines(small_corpus):
    from polyk.pipeline import run_pipeline

    return {p.name: run_pipeline(p) for p in small_corpus}
