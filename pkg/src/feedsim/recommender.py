"""Agent-post affinity and the three recommender setups."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .agents import AgentPrompt, clamp
from .content import Post, round_half_up
from .errors import EmptySelection, InsufficientCandidates, RangeError


class ScenarioKind(str, enum.Enum):
    PLURALITY = "Plurality"
    BALANCED = "Balanced"
    SIMILARITY = "Similarity"

    @classmethod
    def parse(cls, name: str) -> "ScenarioKind":
        for kind in cls:
            if kind.value.lower() == str(name).strip().lower():
                return kind
        raise ValueError(f"unknown scenario {name!r}; expected one of {[k.value for k in cls]}")


@dataclass(frozen=True)
class AffinityWeights:
    stance: float = 0.6
    interest: float = 0.4

    def __post_init__(self):
        if not 0.0 <= self.stance <= 1.0 or not 0.0 <= self.interest <= 1.0:
            raise RangeError("w_s", self.stance)
        if abs(self.stance + self.interest - 1.0) > 1e-12:
            raise ValueError("affinity weights must sum to 1")

    @classmethod
    def from_stance_weight(cls, w_s: float) -> "AffinityWeights":
        return cls(w_s, 1.0 - w_s)


DEFAULT_WEIGHTS = AffinityWeights()


def affinity_value(pa: float, stance: float, shared: int, n_tags: int, weights: AffinityWeights = DEFAULT_WEIGHTS) -> float:
    overlap = shared / n_tags
    value = weights.stance * (1.0 - 2.0 * abs(pa - stance) / 6.0) + weights.interest * (2.0 * overlap - 1.0)
    return clamp(value, -1.0, 1.0)


def affinity(agent: AgentPrompt, post: Post, weights: AffinityWeights = DEFAULT_WEIGHTS) -> float:
    """Political closeness plus interest overlap, in [-1, 1]."""
    shared = len(post.tags & agent.interests)
    return affinity_value(agent.dynamic.political_attitude, post.stance, shared, len(post.tags), weights)


def select(
    kind: ScenarioKind,
    agent: AgentPrompt,
    candidates: Sequence[Post],
    k: int,
    balance_ratio: float = 0.5,
    weights: AffinityWeights = DEFAULT_WEIGHTS,
) -> list[Post]:
    """Pick ``k`` posts: most aligned (Similarity), least aligned (Plurality) or a mix.

    Ties go to the smaller post id. The result is ordered by descending
    affinity, then post id.
    """
    if k > len(candidates):
        raise InsufficientCandidates(f"k={k} exceeds {len(candidates)} candidates")
    if not 0.0 <= balance_ratio <= 1.0:
        raise RangeError("balance_ratio", balance_ratio)
    scored = {}
    for post in candidates:
        scored[post.post_id] = (affinity(agent, post, weights), post)
    ids = list(scored)
    descending = sorted(ids, key=lambda pid: (-scored[pid][0], pid))
    ascending = sorted(ids, key=lambda pid: (scored[pid][0], pid))

    if kind is ScenarioKind.SIMILARITY:
        n_top = k
    elif kind is ScenarioKind.PLURALITY:
        n_top = 0
    else:
        n_top = round_half_up(balance_ratio * k)
    chosen = set(descending[:n_top])
    for pid in ascending:
        if len(chosen) >= k:
            break
        chosen.add(pid)
    return [scored[pid][1] for pid in descending if pid in chosen]


def impact(
    kind: ScenarioKind,
    agent: AgentPrompt,
    selected: Sequence[Post],
    weights: AffinityWeights = DEFAULT_WEIGHTS,
) -> float:
    """Scalar effect of a consumed selection: the mean affinity, in [-1, 1].

    ``kind`` only shaped which posts were selected; the same value feeds
    both the polarization and the engagement update.
    """
    if not selected:
        raise EmptySelection(f"{kind.value}: nothing selected for {agent.agent_id}")
    total = 0.0
    for post in selected:
        total += affinity(agent, post, weights)
    return clamp(total / len(selected), -1.0, 1.0)
