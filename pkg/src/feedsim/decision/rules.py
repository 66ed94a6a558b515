"""Rule-based interaction decisions.

All probabilities and thresholds live in :class:`DecisionParams`; the fast
engine kernel reads the same fields.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..agents import AgentPrompt, clamp
from ..content import Post
from ..recommender import DEFAULT_WEIGHTS, AffinityWeights, affinity
from ..rng import Stream
from .outcome import InteractionOutcome, ReactionKind, SKIP

DRAW_ENGAGE, DRAW_COMMENT = 0, 1


@dataclass(frozen=True)
class DecisionParams:
    base: float = 0.5
    affinity_gain: float = 0.35
    extraversion_gain: float = 0.1
    emotive_gain: float = 0.05
    p_min: float = 0.05
    p_max: float = 0.95
    love_at: float = 0.6
    warm_at: float = 0.25
    neutral_band: float = 0.25
    care_min_cognitive_style: int = 4
    angry_min_emotive: float = 4.0
    comment_factor: float = 0.5
    share_min_agreeableness: int = 5
    friend_min_connectivity: float = 5.0


DEFAULT_DECISION = DecisionParams()


def engage_probability(aff: float, extraversion: int, emotive: float, params: DecisionParams = DEFAULT_DECISION) -> float:
    p = (
        params.base
        + params.affinity_gain * abs(aff)
        + params.extraversion_gain * (extraversion - 4) / 3.0
        + params.emotive_gain * (emotive - 4.0) / 3.0
    )
    return clamp(p, params.p_min, params.p_max)


def reaction_for(aff: float, cognitive_style: int, emotive: float, params: DecisionParams = DEFAULT_DECISION) -> ReactionKind:
    if aff >= params.love_at:
        return ReactionKind.LOVE
    if aff >= params.warm_at:
        return ReactionKind.CARE if cognitive_style >= params.care_min_cognitive_style else ReactionKind.LIKE
    if aff > -params.neutral_band:
        return ReactionKind.WOW
    return ReactionKind.ANGRY if emotive >= params.angry_min_emotive else ReactionKind.SAD


def stance_direction(stance: float) -> str:
    if stance < 4.0:
        return "liberal-leaning"
    if stance > 4.0:
        return "conservative-leaning"
    return "centrist"


def template_comment(agent: AgentPrompt, post: Post, reaction: ReactionKind) -> str:
    verdict = "disagree with" if reaction.is_negative else "agree with" if reaction is not ReactionKind.WOW else "am thinking about"
    return f"{agent.nickname} on {post.post_id}: I {verdict} this {stance_direction(post.stance)} take."


def decide_deterministic(
    agent: AgentPrompt,
    post: Post,
    rng: Stream,
    params: DecisionParams = DEFAULT_DECISION,
    weights: AffinityWeights = DEFAULT_WEIGHTS,
) -> InteractionOutcome:
    """Decide one interaction from ``rng``, the agent's stream for the current day."""
    aff = affinity(agent, post, weights)
    emotive = agent.dynamic.emotive_reaction
    p = engage_probability(aff, agent.static.extraversion, emotive, params)
    if not rng.uniform(post.key, DRAW_ENGAGE) < p:
        return SKIP
    reaction = reaction_for(aff, agent.static.cognitive_style, emotive, params)
    u_comment = rng.uniform(post.key, DRAW_COMMENT)
    comment = u_comment < params.comment_factor * p
    shared = reaction in (ReactionKind.LOVE, ReactionKind.CARE) and agent.static.agreeableness >= params.share_min_agreeableness
    befriend = (
        post.trending
        and reaction.is_positive
        and agent.dynamic.social_connectivity >= params.friend_min_connectivity
        and post.author_id is not None
        and post.author_id != agent.agent_id
        and post.author_id not in agent.friends
    )
    return InteractionOutcome(
        reaction=reaction,
        read_comments=u_comment < p,
        comment_text=template_comment(agent, post, reaction) if comment else None,
        shared=shared,
        friend_requested=befriend,
    )
