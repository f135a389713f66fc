import random

import pytest
from hypothesis import HealthCheck, settings

# exact cyclotomic arithmetic has long per-example tails; wall-clock
# deadlines just make these tests flaky on slow runners
settings.register_profile(
    "gha",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("gha")


@pytest.fixture
def rng():
    return random.Random(20250819)
