"""Three named profiles, one 30-post session per recommender setup."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from ..agents import AgentPrompt, load_fixture_profiles
from ..content import ContentPool, SourceKind, build_fixture_pool
from ..decision.backends import DecisionBackend, DecisionContext, DeterministicBackend
from ..dynamics import update_engagement, update_polarization
from ..errors import UnknownProfile
from ..metrics import ReactionTally, Report, render_report, tally
from ..recommender import DEFAULT_WEIGHTS, AffinityWeights, ScenarioKind, impact, select
from .transcript import Interaction

PROFILES = ("PROFILE_1", "PROFILE_21", "PROFILE_22")
SESSION_POSTS = 30
SESSION_DAY = 0


@dataclass
class Replication:
    seed: int
    tallies: dict[ScenarioKind, list[ReactionTally]]
    transcripts: dict[ScenarioKind, list[Interaction]]
    headers: dict[ScenarioKind, dict]

    def report(self) -> Report:
        return render_report(t for ts in self.tallies.values() for t in ts)

    def totals(self) -> dict[ScenarioKind, tuple[int, int, int]]:
        out = {}
        for kind, ts in self.tallies.items():
            out[kind] = (
                sum(t.total_reactions for t in ts),
                sum(t.total_positive for t in ts),
                sum(t.total_negative for t in ts),
            )
        return out


def replicate_experiment(
    backend: DecisionBackend | None = None,
    seed: int = 42,
    profiles: tuple[str, ...] = PROFILES,
    scenarios: tuple[ScenarioKind, ...] = tuple(ScenarioKind),
    agents: list[AgentPrompt] | None = None,
    pool: ContentPool | None = None,
    k: int = SESSION_POSTS,
    alpha: float = 0.9,
    beta: float = 0.9,
    balance_ratio: float = 0.5,
    weights: AffinityWeights = DEFAULT_WEIGHTS,
) -> Replication:
    """Run each profile through one session per scenario and tally the reactions.

    The whole imposed pool is the candidate set, so each scenario sees the
    same 150 posts and differs only in which 30 the recommender picks.
    """
    backend = backend or DeterministicBackend()
    by_id = {a.agent_id: a for a in (agents if agents is not None else load_fixture_profiles())}
    missing = [p for p in profiles if p not in by_id]
    if missing:
        raise UnknownProfile(f"engine: profiles {missing} not in the agent fixture")
    pool = pool if pool is not None else build_fixture_pool()
    candidates = pool.imposed_posts()

    tallies, transcripts, headers = {}, {}, {}
    for kind in scenarios:
        context = DecisionContext(SESSION_DAY, kind, seed)
        records: list[Interaction] = []
        header_agents = []
        for pid in sorted(profiles):
            agent = dataclasses.replace(by_id[pid], polarization=0.0, engagement=0.0)
            selected = select(kind, agent, candidates, k, balance_ratio, weights)
            outcomes = backend.decide_many([(agent, post) for post in selected], context)
            F = impact(kind, agent, selected, weights)
            P = update_polarization(agent.polarization, alpha, F)
            E = update_engagement(agent.engagement, beta, agent.activity, F)
            header_agents.append({"agent_id": pid, "T": agent.activity, "P_s": agent.polarization, "E_s": agent.engagement})
            for post, outcome in sorted(zip(selected, outcomes), key=lambda t: t[0].post_id):
                records.append(Interaction(SESSION_DAY, pid, post.post_id, SourceKind.IMPOSED.value, outcome, F, P, E))
        transcripts[kind] = records
        headers[kind] = {
            "scenario": kind.value, "seed": seed, "days": 1, "alpha": alpha, "beta": beta,
            "engine": "replicate", "backend": backend.name, "agents": header_agents,
        }
        tallies[kind] = [tally(records, pid, kind) for pid in profiles]
    return Replication(seed, tallies, transcripts, headers)
