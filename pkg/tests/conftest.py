import os

import pytest
from hypothesis import HealthCheck, settings

from feedsim.agents import load_fixture_profiles, new_agent
from feedsim.content import build_fixture_pool

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def profiles():
    return {a.agent_id: a for a in load_fixture_profiles()}


@pytest.fixture
def pool():
    return build_fixture_pool()


def make_agent(agent_id="X1", pa=4.0, interests=("art",), **overrides):
    desc = {
        "id": agent_id, "nickname": f"nick{agent_id}", "bio": "", "interests": list(interests),
        "o": 4, "c": 4, "e": 4, "a": 4, "n": 4, "cs": 4, "om": 4,
        "pa": pa, "sc": 4.0, "er": 4.0, "T": 0.5,
    }
    desc.update(overrides)
    return new_agent(desc)
