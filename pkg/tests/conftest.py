import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("CHARTESTS_CACHE_DIR", str(d))
    return d


class _Reports(dict):
    """Efficiency reports computed once per session, keyed by (test, family)."""

    def get(self, test, family):
        from chartests.bahadur import local_efficiency
        key = (test, family)
        if key not in self:
            self[key] = local_efficiency(test, family)
        return self[key]


@pytest.fixture(scope="session")
def efficiency_reports():
    return _Reports()
