"""Decision backends: the rule engine and the chat-model backend."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol, Sequence

from ..agents import AgentPrompt, DynamicTraits
from ..content import Post
from ..errors import ParseError
from ..recommender import DEFAULT_WEIGHTS, AffinityWeights, ScenarioKind
from ..rng import Stream, key_of
from .llm import Chat
from .outcome import InteractionOutcome
from .parsing import parse_completion, parse_self_report
from .prompts import decision_messages, profile_message, retry_message, self_report_message
from .rules import DEFAULT_DECISION, DecisionParams, decide_deterministic


@dataclass(frozen=True)
class DecisionContext:
    day: int
    scenario: ScenarioKind
    seed: int


@dataclass(frozen=True)
class SessionSummary:
    consumed: int
    reactions: int
    positive: int
    negative: int
    comments: int
    shares: int
    friend_requests: int

    def describe(self) -> str:
        return (
            f"you saw {self.consumed} posts, reacted to {self.reactions} "
            f"({self.positive} positive, {self.negative} negative), wrote {self.comments} comments, "
            f"shared {self.shares} posts and sent {self.friend_requests} friend requests."
        )


class DecisionBackend(Protocol):
    name: str

    def decide(self, agent: AgentPrompt, post: Post, context: DecisionContext) -> InteractionOutcome: ...

    def decide_many(
        self, items: Sequence[tuple[AgentPrompt, Post]], context: DecisionContext
    ) -> list[InteractionOutcome]: ...

    def report_trait_deltas(self, agent: AgentPrompt, summary: SessionSummary) -> DynamicTraits | None: ...


def decision_stream(seed: int, agent_id: str, day: int) -> Stream:
    return Stream.root(seed, "decide").child(key_of(agent_id), day)


class DeterministicBackend:
    name = "deterministic"

    def __init__(self, params: DecisionParams = DEFAULT_DECISION, weights: AffinityWeights = DEFAULT_WEIGHTS):
        self.params = params
        self.weights = weights

    def decide(self, agent: AgentPrompt, post: Post, context: DecisionContext) -> InteractionOutcome:
        rng = decision_stream(context.seed, agent.agent_id, context.day)
        return decide_deterministic(agent, post, rng, self.params, self.weights)

    def decide_many(self, items, context):
        return [self.decide(agent, post, context) for agent, post in items]

    def report_trait_deltas(self, agent, summary):
        return None


def decide_llm(agent: AgentPrompt, post: Post, client: Chat, retries: int = 2) -> InteractionOutcome:
    """Ask the chat model how ``agent`` reacts to ``post``.

    The prompt carries the profile and the post only, never the recommender
    setup. Unparseable replies are retried ``retries`` times with a
    correction message before :class:`ParseError` propagates.
    """
    messages = decision_messages(agent, post)
    for attempt in range(retries + 1):
        reply = client.complete(messages)
        try:
            return parse_completion(reply)
        except ParseError:
            if attempt == retries:
                raise
            messages = messages + [
                {"role": "assistant", "content": reply},
                {"role": "user", "content": retry_message()},
            ]
    raise AssertionError("unreachable")


class LLMBackend:
    name = "llm"

    def __init__(self, client: Chat, max_in_flight: int = 4, retries: int = 2):
        if max_in_flight < 1:
            raise ValueError("max_in_flight must be at least 1")
        self.client = client
        self.max_in_flight = max_in_flight
        self.retries = retries

    def decide(self, agent, post, context):
        return decide_llm(agent, post, self.client, self.retries)

    def decide_many(self, items, context):
        if self.max_in_flight == 1 or len(items) <= 1:
            return [self.decide(agent, post, context) for agent, post in items]
        # map() yields in submission order, so outputs do not depend on completion order.
        with ThreadPoolExecutor(max_workers=self.max_in_flight) as pool:
            return list(pool.map(lambda item: self.decide(item[0], item[1], context), items))

    def report_trait_deltas(self, agent, summary):
        return report_trait_deltas(agent, summary, self)


def report_trait_deltas(agent: AgentPrompt, summary: SessionSummary, backend) -> DynamicTraits | None:
    """Post-session self-reported pa/sc/er; ``None`` for backends without self-report."""
    client = getattr(backend, "client", None)
    if client is None:
        return None
    messages = [
        {"role": "system", "content": profile_message(agent)},
        {"role": "user", "content": self_report_message(summary.describe())},
    ]
    return parse_self_report(client.complete(messages))
