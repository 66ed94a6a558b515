"""Score recurrences for polarization and engagement, and dynamic-trait drift."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .agents import AgentPrompt, DynamicTraits, clamp
from .content import Post
from .errors import EmptyConsumption, RangeError


@dataclass(frozen=True)
class DynamicsParams:
    alpha: float = 0.9
    beta: float = 0.9
    drift_rate: float = 0.05

    def __post_init__(self):
        for name in ("alpha", "beta", "drift_rate"):
            _require(name, getattr(self, name), 0.0, 1.0)


def _require(name: str, value: float, lo: float, hi: float) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value) or not lo <= value <= hi:
        raise RangeError(name, value)


def update_polarization(score: float, alpha: float, impact: float) -> float:
    """Next polarization score: ``alpha * score + (1 - alpha) * impact``."""
    _require("P_s", score, -1.0, 1.0)
    _require("alpha", alpha, 0.0, 1.0)
    _require("F", impact, -1.0, 1.0)
    return alpha * score + (1 - alpha) * impact


def update_engagement(score: float, beta: float, activity: float, impact: float) -> float:
    """Next engagement score: ``beta * score + (1 - beta) * activity * impact``."""
    _require("E_s", score, -1.0, 1.0)
    _require("beta", beta, 0.0, 1.0)
    _require("T", activity, 0.0, 1.0)
    _require("F", impact, -1.0, 1.0)
    return beta * score + (1 - beta) * activity * impact


def drift_dynamic_traits(
    agent: AgentPrompt,
    consumed: Sequence[Post],
    params: DynamicsParams,
    negative: int = 0,
    positive: int = 0,
    friend_requests: int = 0,
) -> DynamicTraits:
    """Move pa, er and sc after a session.

    ``negative``/``positive`` count the agent's own Sad/Angry and positive
    reactions over ``consumed``; ``friend_requests`` is how many it sent.
    """
    if not consumed:
        raise EmptyConsumption(f"{agent.agent_id}: drift needs at least one consumed post")
    n = len(consumed)
    stance_sum = 0.0
    for post in consumed:
        stance_sum += post.stance
    return drift_values(
        agent.dynamic.political_attitude,
        agent.dynamic.social_connectivity,
        agent.dynamic.emotive_reaction,
        agent.static.open_mindedness,
        agent.static.neuroticism,
        stance_sum / n,
        negative / n,
        positive / n,
        friend_requests,
        params.drift_rate,
    )


def drift_values(
    pa: float, sc: float, er: float, om: int, neuroticism: int,
    mean_stance: float, neg_fraction: float, pos_fraction: float,
    friend_requests: int, rate: float,
) -> DynamicTraits:
    pa_next = clamp(pa + rate * (om / 7.0) * (mean_stance - pa), 1.0, 7.0)
    er_next = clamp(er + rate * (neg_fraction - pos_fraction) * (neuroticism / 7.0), 1.0, 7.0)
    sc_next = clamp(sc + rate * friend_requests, 1.0, 7.0)
    return DynamicTraits(pa_next, sc_next, er_next)
