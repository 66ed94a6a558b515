"""Mapping free-text completions onto the closed reaction option set."""

from __future__ import annotations

import re

from ..agents import DynamicTraits, clamp
from ..errors import ParseError
from .outcome import InteractionOutcome, ReactionKind

_OPTIONS = {
    "nothing": ReactionKind.NONE,
    "none": ReactionKind.NONE,
    "skip": ReactionKind.NONE,
    "like": ReactionKind.LIKE,
    "love": ReactionKind.LOVE,
    "care": ReactionKind.CARE,
    "haha": ReactionKind.HAHA,
    "wow": ReactionKind.WOW,
    "angry": ReactionKind.ANGRY,
    "sad": ReactionKind.SAD,
}
_OPTION_RE = re.compile(r"\b(" + "|".join(_OPTIONS) + r")\b", re.IGNORECASE)
_COMMENT_RE = re.compile(
    r"\bcomment\s*:\s*(?:'(?P<sq>[^']*)'|\"(?P<dq>[^\"]*)\"|(?P<bare>[^+\n]*))",
    re.IGNORECASE,
)
_SHARE_RE = re.compile(r"\bshare[ds]?\b", re.IGNORECASE)
_FRIEND_RE = re.compile(r"\bfriend[\s-]*request(?:ed|s)?\b", re.IGNORECASE)
_READ_RE = re.compile(r"\bread\s+comments\b", re.IGNORECASE)
_TRAIT_RE = {
    name: re.compile(rf"\b{name}\s*[:=]\s*(-?\d+(?:\.\d+)?)", re.IGNORECASE)
    for name in ("pa", "sc", "er")
}


def parse_completion(text: str) -> InteractionOutcome:
    """Parse a reply such as ``"Love + comment: 'Nice!' + share"``.

    The earliest option token outside the comment wins; "nothing" maps to a
    skipped post and discards any extras.
    """
    if not text or not text.strip():
        raise ParseError("empty completion", text or "")
    comment = None
    rest = text
    match = _COMMENT_RE.search(text)
    if match:
        raw = match.group("sq")
        if raw is None:
            raw = match.group("dq")
        if raw is None:
            raw = match.group("bare").strip()
        comment = raw
        rest = text[: match.start()] + " " + text[match.end():]
    option = _OPTION_RE.search(rest)
    if option is None:
        raise ParseError("no recognised reaction option", text)
    reaction = _OPTIONS[option.group(1).lower()]
    if reaction is ReactionKind.NONE:
        return InteractionOutcome()
    return InteractionOutcome(
        reaction=reaction,
        read_comments=comment is not None or bool(_READ_RE.search(rest)),
        comment_text=comment,
        shared=bool(_SHARE_RE.search(rest)),
        friend_requested=bool(_FRIEND_RE.search(rest)),
    )


def render_outcome(outcome: InteractionOutcome) -> str:
    """Canonical reply text; ``parse_completion(render_outcome(o)) == o`` for quote-free comments."""
    if not outcome.engaged:
        return "nothing"
    parts = [outcome.reaction.value]
    if outcome.comment_text is not None:
        parts.append(f"comment: '{outcome.comment_text}'")
    elif outcome.read_comments:
        parts.append("read comments")
    if outcome.shared:
        parts.append("share")
    if outcome.friend_requested:
        parts.append("friend request")
    return " + ".join(parts)


def parse_self_report(text: str) -> DynamicTraits:
    """Parse ``"pa: 6, sc: 7, er: 7"``, clamping each value to 1..7."""
    values = {}
    for name, pattern in _TRAIT_RE.items():
        match = pattern.search(text or "")
        if match is None:
            raise ParseError(f"missing numeric {name}", text or "")
        values[name] = clamp(float(match.group(1)), 1.0, 7.0)
    return DynamicTraits(values["pa"], values["sc"], values["er"])
