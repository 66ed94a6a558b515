"""Object-level day loop; works with every decision backend."""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass

from ..agents import AgentPrompt, DynamicTraits, posts_per_day
from ..config import RunConfig
from ..content import Comment, Post, add_agent_post, sourced_candidates
from ..decision.backends import DecisionBackend, DecisionContext, SessionSummary
from ..decision.outcome import InteractionOutcome
from ..dynamics import drift_dynamic_traits, update_engagement, update_polarization
from ..errors import EmptyPool, FeedsimError
from ..recommender import impact, select
from ..rng import Stream, key_of
from .state import COL_COMMENTS, COL_REQUESTS, COL_SHARES, SimulationState, reaction_column
from .transcript import Interaction

log = logging.getLogger(__name__)

SOURCE_IMPOSED = "Imposed"


@dataclass
class AgentDay:
    """Everything one agent does on one day, applied only at day close."""

    agent_id: str
    active: bool
    selected: list[Post]
    sources: list[str]
    outcomes: list[InteractionOutcome]
    F: float
    polarization: float
    engagement: float
    traits: DynamicTraits
    requests: list[str]
    posts_today: bool


def wants_to_post(agent: AgentPrompt, day: int, seed: int) -> bool:
    """Own post with probability (extraversion / 7) * T."""
    u = Stream.root(seed, "post").child(key_of(agent.agent_id), day).uniform(0)
    return u < (agent.static.extraversion / 7.0) * agent.activity


def own_post_text(agent: AgentPrompt, day: int) -> str:
    topics = sorted(agent.interests)[:2]
    return f"{agent.nickname}, day {day}: some thoughts on {' and '.join(topics)}."


def plan_agent_day(state: SimulationState, config: RunConfig, agent: AgentPrompt, backend: DecisionBackend) -> AgentDay:
    day = state.day
    posts_today = wants_to_post(agent, day, config.seed)
    try:
        sourced = sourced_candidates(state.pool, agent, day, config.seed, config.feed, state.consumed[agent.agent_id])
    except EmptyPool:
        log.debug("%s idle on day %d: empty pool", agent.agent_id, day)
        return AgentDay(agent.agent_id, False, [], [], [], float("nan"), agent.polarization,
                        agent.engagement, agent.dynamic, [], posts_today)

    candidates = [post for post, _ in sourced]
    source_of = {post.post_id: src.value for post, src in sourced}
    k = min(posts_per_day(agent, config.min_posts, config.max_posts), len(candidates))
    selected = select(config.scenario, agent, candidates, k, config.balance_ratio, config.weights)
    context = DecisionContext(day, config.scenario, config.seed)
    outcomes = backend.decide_many([(agent, post) for post in selected], context)

    F = impact(config.scenario, agent, selected, config.weights)
    p_next = update_polarization(agent.polarization, config.alpha, F)
    e_next = update_engagement(agent.engagement, config.beta, agent.activity, F)

    negative = sum(o.reaction.is_negative for o in outcomes)
    positive = sum(o.reaction.is_positive for o in outcomes)
    requests = [post.author_id for post, o in zip(selected, outcomes) if o.friend_requested]
    traits = drift_dynamic_traits(agent, selected, config.dynamics, negative, positive, len(requests))
    summary = SessionSummary(
        consumed=len(selected),
        reactions=sum(o.engaged for o in outcomes),
        positive=positive,
        negative=negative,
        comments=sum(o.comment_text is not None for o in outcomes),
        shares=sum(o.shared for o in outcomes),
        friend_requests=len(requests),
    )
    reported = backend.report_trait_deltas(agent, summary)
    if reported is not None:
        traits = reported
    return AgentDay(agent.agent_id, True, selected, [source_of[p.post_id] for p in selected], outcomes,
                    F, p_next, e_next, traits, requests, posts_today)


def run_day(state: SimulationState, config: RunConfig, backend: DecisionBackend, counts=None) -> list[Interaction]:
    """Advance ``state`` by one day and return the day's interaction records.

    Agents read the day-start snapshot; every mutation is applied at close
    in ascending agent order. A backend error leaves ``state`` untouched.
    """
    order = state.order
    plans: list[AgentDay] = []
    for aid in order:
        try:
            plans.append(plan_agent_day(state, config, state.agents[aid], backend))
        except FeedsimError as exc:
            exc.args = (f"day {state.day}, agent {aid}: {exc}",)
            raise
    return _close_day(state, config, plans, counts)


def _close_day(state: SimulationState, config: RunConfig, plans: list[AgentDay], counts) -> list[Interaction]:
    day = state.day
    index = {aid: i for i, aid in enumerate(state.order)}
    records: list[Interaction] = []
    friends = {aid: set(a.friends) for aid, a in state.agents.items()}

    for plan in plans:
        agent = state.agents[plan.agent_id]
        state.agents[plan.agent_id] = dataclasses.replace(
            agent, polarization=plan.polarization, engagement=plan.engagement, dynamic=plan.traits
        )
        seen = state.consumed[plan.agent_id]
        row = None if counts is None else counts[index[plan.agent_id]]
        for post, src, outcome in zip(plan.selected, plan.sources, plan.outcomes):
            if src == SOURCE_IMPOSED:
                seen.add(post.post_id)
            if row is not None and outcome.engaged:
                row[reaction_column(outcome.reaction)] += 1
                row[COL_COMMENTS] += outcome.comment_text is not None
                row[COL_SHARES] += outcome.shared
                row[COL_REQUESTS] += outcome.friend_requested
        for post, src, outcome in sorted(zip(plan.selected, plan.sources, plan.outcomes), key=lambda t: t[0].post_id):
            records.append(Interaction(day, plan.agent_id, post.post_id, src, outcome, plan.F,
                                       plan.polarization, plan.engagement))

    # Requests are auto-accepted, so every edge lands on both sides.
    for plan in plans:
        for target in plan.requests:
            if target in state.agents and target != plan.agent_id and target not in friends[plan.agent_id]:
                friends[plan.agent_id].add(target)
                friends[target].add(plan.agent_id)
    for aid, fs in friends.items():
        if fs != state.agents[aid].friends:
            state.agents[aid] = dataclasses.replace(state.agents[aid], friends=frozenset(fs))

    for plan in plans:
        for post, outcome in zip(plan.selected, plan.outcomes):
            if outcome.engaged:
                post.reaction_counts[outcome.reaction.value] += 1
            if outcome.comment_text is not None:
                post.comments.append(Comment(plan.agent_id, outcome.comment_text, day))

    for plan in plans:
        if plan.posts_today:
            author = state.agents[plan.agent_id]
            add_agent_post(
                state.pool, author, own_post_text(author, day), author.dynamic.political_attitude,
                author.interests, day, config.trending_threshold,
            )

    if state.keep_transcript:
        state.transcript.extend(records)
    state.day += 1
    return records
