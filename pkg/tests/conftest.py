import os

import pytest
from hypothesis import HealthCheck, settings

from dqm.algebra import get_field

settings.register_profile(
    "dqm",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dqm"))


@pytest.fixture(params=[2, 3], ids=lambda q: f"q{q}")
def F23(request):
    return get_field(request.param)


@pytest.fixture(params=[(2, 1), (3, 1), (5, 1), (2, 2)], ids=lambda pe: f"q{pe[0] ** pe[1]}")
def Fany(request):
    return get_field(*request.param)


@pytest.fixture(autouse=True)
def _no_disk_cache(monkeypatch, tmp_path):
    # tests never touch the user's cache unless they ask for it
    monkeypatch.setenv("DQM_CACHE_DIR", str(tmp_path / "cache"))
