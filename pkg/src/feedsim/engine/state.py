"""Simulation state, run results and population/pool setup from a RunConfig."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..agents import AgentPrompt, generate_population, load_agents, load_fixture_profiles
from ..config import RunConfig
from ..content import ContentPool, build_fixture_pool, load_pool
from ..decision.outcome import REACTION_CODES
from ..recommender import ScenarioKind

# Per-agent counter columns: the seven table reactions, then comments, shares, friend requests.
COUNT_COLUMNS = ("Haha", "Like", "Wow", "Care", "Love", "Sad", "Angry", "Comments", "Shares", "FriendRequests")
COL_COMMENTS, COL_SHARES, COL_REQUESTS = 7, 8, 9


@dataclass
class SimulationState:
    """Mutable world state between days.

    ``agents`` is keyed by id and iterated in ``order`` (ascending id).
    ``consumed`` holds, per agent, the imposed posts it has already seen.
    """

    day: int
    seed: int
    scenario: ScenarioKind
    agents: dict[str, AgentPrompt]
    pool: ContentPool
    consumed: dict[str, set[str]]
    transcript: list = field(default_factory=list)
    keep_transcript: bool = True

    @property
    def order(self) -> list[str]:
        return sorted(self.agents)

    def friends_symmetric(self) -> bool:
        for aid, agent in self.agents.items():
            if aid in agent.friends:
                return False
            for f in agent.friends:
                if aid not in self.agents[f].friends:
                    return False
        return True


@dataclass
class RunResult:
    config: RunConfig
    agent_ids: list[str]
    agents: list[AgentPrompt]
    polarization: np.ndarray  # (days + 1, n): row 0 is the initial state
    engagement: np.ndarray
    impact: np.ndarray  # (days, n); NaN on idle agent-days
    counts: np.ndarray  # (n, len(COUNT_COLUMNS))
    transcript: list | None = None
    transcript_path: str | None = None
    engine: str = "reference"
    wall_seconds: float = 0.0
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def days(self) -> int:
        return self.impact.shape[0]


def load_population(config: RunConfig) -> list[AgentPrompt]:
    pop = config.population
    if pop.source == "fixture":
        agents = load_fixture_profiles()
    elif pop.source == "generated":
        agents = generate_population(pop.n, config.seed if pop.seed is None else pop.seed)
    else:
        agents = load_agents(pop.path)
    if pop.source != "generated" and pop.n is not None:
        agents = sorted(agents, key=lambda a: a.agent_id)[: pop.n]
    return agents


def load_content(config: RunConfig) -> ContentPool:
    return build_fixture_pool() if config.content_path is None else load_pool(config.content_path)


def initial_state(config: RunConfig, agents: list[AgentPrompt] | None = None, pool: ContentPool | None = None) -> SimulationState:
    """Day-1 state: scores reset to the configured initial values, friendships kept as given."""
    agents = load_population(config) if agents is None else agents
    pool = load_content(config) if pool is None else pool
    start = {
        a.agent_id: dataclasses.replace(
            a, polarization=config.initial_polarization, engagement=config.initial_engagement
        )
        for a in agents
    }
    return SimulationState(
        day=1,
        seed=config.seed,
        scenario=config.scenario,
        agents=start,
        pool=pool,
        consumed={aid: set() for aid in start},
        keep_transcript=config.record_transcript,
    )


def header_for(config: RunConfig, state: SimulationState, engine: str) -> dict[str, Any]:
    return {
        "scenario": config.scenario.value,
        "seed": config.seed,
        "days": config.days,
        "alpha": config.alpha,
        "beta": config.beta,
        "engine": engine,
        "backend": config.backend,
        "agents": [
            {"agent_id": aid, "T": a.activity, "P_s": a.polarization, "E_s": a.engagement}
            for aid, a in sorted(state.agents.items())
        ],
    }


def reaction_column(kind) -> int:
    return REACTION_CODES[kind] - 1
