import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "engine",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("engine")

EXTENDED = os.environ.get("LIENILQ_EXTENDED") == "1"


@pytest.fixture(scope="session")
def store():
    """One shared component store per test session; heavy bases are reused."""
    from lienilq.lcs import ComponentStore
    return ComponentStore()
