"""Interaction decisions: what an agent does with each recommended post."""

from .backends import (
    DecisionBackend,
    DecisionContext,
    DeterministicBackend,
    LLMBackend,
    SessionSummary,
    decide_llm,
    decision_stream,
    report_trait_deltas,
)
from .llm import CassetteChat, CassetteStore, ChatClient, prompt_key
from .outcome import NEGATIVE, POSITIVE, InteractionOutcome, ReactionKind
from .parsing import parse_completion, parse_self_report, render_outcome
from .rules import DecisionParams, decide_deterministic, engage_probability, reaction_for

__all__ = [
    "CassetteChat", "CassetteStore", "ChatClient", "DecisionBackend", "DecisionContext",
    "DecisionParams", "DeterministicBackend", "InteractionOutcome", "LLMBackend", "NEGATIVE",
    "POSITIVE", "ReactionKind", "SessionSummary", "decide_deterministic", "decide_llm",
    "decision_stream", "engage_probability", "parse_completion", "parse_self_report",
    "prompt_key", "reaction_for", "render_outcome", "report_trait_deltas",
]
