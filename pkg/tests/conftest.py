import pytest
from hypothesis import HealthCheck, settings

# every property runs 200 randomised trials
settings.register_profile("legmoments", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("legmoments")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs for more than a few seconds")
