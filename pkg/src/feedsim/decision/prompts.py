"""Chat prompts describing an AgentPrompt and a post."""

from __future__ import annotations

from importlib import resources

from ..agents import AgentPrompt
from ..content import Post

_LEVELS = {1: "very low", 2: "low", 3: "somewhat low", 4: "moderate", 5: "somewhat high", 6: "high", 7: "very high"}


def _template(name: str) -> str:
    text = (resources.files("feedsim") / "decision" / "templates" / name).read_text(encoding="utf-8")
    # Header lines starting with '#' document the template and are not sent.
    return "\n".join(line for line in text.splitlines() if not line.startswith("#")).strip() + "\n"


def _fmt(value: float) -> str:
    return f"{value:g}"


def profile_message(agent: AgentPrompt) -> str:
    s, d = agent.static, agent.dynamic
    return _template("profile_system.txt").format(
        nickname=agent.nickname,
        bio=agent.bio,
        interests=", ".join(sorted(agent.interests)),
        o=s.openness, o_label=_LEVELS[s.openness],
        c=s.conscientiousness, c_label=_LEVELS[s.conscientiousness],
        e=s.extraversion, e_label=_LEVELS[s.extraversion],
        a=s.agreeableness, a_label=_LEVELS[s.agreeableness],
        n=s.neuroticism, n_label=_LEVELS[s.neuroticism],
        cs=s.cognitive_style,
        om=s.open_mindedness,
        pa=_fmt(d.political_attitude),
        sc=_fmt(d.social_connectivity),
        er=_fmt(d.emotive_reaction),
    )


def post_message(post: Post, max_comments: int = 3) -> str:
    visible = post.comments[-max_comments:]
    if visible:
        comments_block = "\nComments so far:\n" + "\n".join(f"- {c.text}" for c in visible) + "\n"
    else:
        comments_block = ""
    return _template("post_user.txt").format(
        author_line=" from someone in your network" if post.author_id else "",
        text=post.text,
        tags=", ".join(sorted(post.tags)),
        comments_block=comments_block,
    )


def retry_message() -> str:
    return _template("retry_user.txt")


def self_report_message(summary: str) -> str:
    return _template("self_report_user.txt").format(summary=summary)


def decision_messages(agent: AgentPrompt, post: Post) -> list[dict[str, str]]:
    return [
        {"role": "system", "content": profile_message(agent)},
        {"role": "user", "content": post_message(post)},
    ]
