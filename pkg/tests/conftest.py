import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "det", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("det")


@pytest.fixture(scope="session")
def series300():
    """Exact reference series to n = 300, shared across the whole run."""
    from heattrace.verify import series_300

    return series_300
