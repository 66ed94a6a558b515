"""Reaction vocabulary and the per-post interaction record."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class ReactionKind(str, enum.Enum):
    NONE = "None"
    LIKE = "Like"
    LOVE = "Love"
    CARE = "Care"
    HAHA = "Haha"
    WOW = "Wow"
    ANGRY = "Angry"
    SAD = "Sad"

    @property
    def is_positive(self) -> bool:
        return self in POSITIVE

    @property
    def is_negative(self) -> bool:
        return self in NEGATIVE


POSITIVE = frozenset({ReactionKind.HAHA, ReactionKind.LIKE, ReactionKind.WOW, ReactionKind.CARE, ReactionKind.LOVE})
NEGATIVE = frozenset({ReactionKind.SAD, ReactionKind.ANGRY})

# Column order of the reaction tables; also the integer codes used by the fast engine.
TABLE_REACTIONS = (
    ReactionKind.HAHA, ReactionKind.LIKE, ReactionKind.WOW, ReactionKind.CARE,
    ReactionKind.LOVE, ReactionKind.SAD, ReactionKind.ANGRY,
)
REACTION_CODES = {ReactionKind.NONE: 0, **{kind: i + 1 for i, kind in enumerate(TABLE_REACTIONS)}}
REACTION_BY_CODE = {code: kind for kind, code in REACTION_CODES.items()}


@dataclass(frozen=True)
class InteractionOutcome:
    reaction: ReactionKind = ReactionKind.NONE
    read_comments: bool = False
    comment_text: str | None = None
    shared: bool = False
    friend_requested: bool = False

    def __post_init__(self):
        if self.reaction is ReactionKind.NONE and (
            self.comment_text is not None or self.shared or self.friend_requested
        ):
            raise ValueError("a skipped post cannot carry a comment, share or friend request")
        if self.comment_text is not None and not self.read_comments:
            raise ValueError("commenting implies reading the comments")

    @property
    def engaged(self) -> bool:
        return self.reaction is not ReactionKind.NONE


SKIP = InteractionOutcome()
