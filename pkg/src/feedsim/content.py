"""PrimaryContent: issues, news, annotated posts and the daily candidate feed."""

from __future__ import annotations

import enum
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

from .agents import AgentPrompt, posts_per_day
from .errors import EmptyPool, FixtureCorrupt, RangeError
from .rng import Stream, key_of

DEFAULT_TRENDING_THRESHOLD = 6.0


class SourceKind(str, enum.Enum):
    FRIEND = "Friend"
    TRENDING = "Trending"
    IMPOSED = "Imposed"


@dataclass(frozen=True)
class Issue:
    issue_id: str
    name: str


@dataclass(frozen=True)
class NewsArticle:
    news_id: str
    issue_id: str
    headline: str
    body: str


@dataclass(frozen=True)
class Comment:
    agent_id: str
    text: str
    day: int


@dataclass(eq=False)
class Post:
    post_id: str
    origin: str
    source_kind: SourceKind
    stance: float
    tags: frozenset[str]
    text: str
    issue_id: str | None = None
    author_id: str | None = None
    day: int | None = None
    trending: bool = False
    comments: list[Comment] = field(default_factory=list)
    reaction_counts: Counter = field(default_factory=Counter)

    def __post_init__(self):
        if isinstance(self.stance, bool) or not 1.0 <= self.stance <= 7.0:
            raise RangeError("stance", self.stance)
        self.stance = float(self.stance)
        if not self.tags:
            raise ValueError(f"post {self.post_id}: tags must be non-empty")
        if self.source_kind is SourceKind.FRIEND and self.author_id is None:
            raise ValueError(f"post {self.post_id}: friend posts need an author")

    @cached_property
    def key(self) -> int:
        return key_of(self.post_id)


def agent_post_id(day: int, agent_id: str) -> str:
    # Sorts after uppercase fixture ids and in creation order within a run.
    return f"d{day:04d}-{agent_id}"


class ContentPool:
    """Posts plus the issue, trending and friend-feed indices over them."""

    def __init__(self, issues: Iterable[Issue] = (), news: Iterable[NewsArticle] = ()):
        self.issues = {i.issue_id: i for i in issues}
        self.news = {n.news_id: n for n in news}
        self.posts: dict[str, Post] = {}
        self.by_issue: dict[str, list[str]] = {}
        self.imposed: list[str] = []
        self.trending: list[str] = []
        self.friend_feed: dict[str, list[str]] = {}

    def __len__(self) -> int:
        return len(self.posts)

    def add_imposed(self, post: Post) -> None:
        if post.post_id in self.posts:
            raise ValueError(f"duplicate post id {post.post_id}")
        if post.issue_id is not None and post.issue_id not in self.issues:
            raise FixtureCorrupt(f"post {post.post_id}: unknown issue {post.issue_id}")
        self.posts[post.post_id] = post
        self.imposed.append(post.post_id)
        self.imposed.sort()
        if post.issue_id is not None:
            self.by_issue.setdefault(post.issue_id, []).append(post.post_id)

    def _index_agent_post(self, post: Post, friends: Iterable[str]) -> None:
        for friend in sorted(friends):
            self.friend_feed.setdefault(friend, []).append(post.post_id)
        if post.trending:
            self.trending.append(post.post_id)

    def rebuild_indices(self, friends_of: dict[str, frozenset[str]]) -> "ContentPool":
        """A fresh pool with every index rebuilt from the post set alone.

        Friend feeds are reconstructed from ``friends_of``, which must hold
        the friend lists that were current when each post was created.
        """
        fresh = ContentPool(self.issues.values(), self.news.values())
        for pid in sorted(self.posts):
            post = self.posts[pid]
            if post.source_kind is SourceKind.IMPOSED:
                fresh.add_imposed(post)
            else:
                fresh.posts[pid] = post
                fresh._index_agent_post(post, friends_of.get(post.author_id, ()))
        return fresh

    def index_snapshot(self) -> dict[str, Any]:
        return {
            "posts": sorted(self.posts),
            "by_issue": {k: sorted(v) for k, v in self.by_issue.items()},
            "imposed": list(self.imposed),
            "trending": list(self.trending),
            "friend_feed": {k: list(v) for k, v in self.friend_feed.items() if v},
        }

    def imposed_posts(self) -> list[Post]:
        return [self.posts[pid] for pid in self.imposed]


def load_pool(path: str | Path) -> ContentPool:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FixtureCorrupt(f"{path}: {exc}") from exc
    return pool_from_document(raw, source=str(path))


def pool_from_document(raw: Any, source: str = "<memory>") -> ContentPool:
    try:
        issues = [Issue(i["id"], i["name"]) for i in raw["issues"]]
        news = [NewsArticle(n["id"], n["issue_id"], n["headline"], n["body"]) for n in raw["news"]]
        pool = ContentPool(issues, news)
        for n in news:
            if n.issue_id not in pool.issues:
                raise FixtureCorrupt(f"{source}: news {n.news_id} references unknown issue {n.issue_id}")
        for p in raw["posts"]:
            if set(p) != {"id", "news_id", "issue_id", "stance", "tags", "text"}:
                raise FixtureCorrupt(f"{source}: post keys {sorted(p)} do not match the schema")
            if p["news_id"] not in pool.news or pool.news[p["news_id"]].issue_id != p["issue_id"]:
                raise FixtureCorrupt(f"{source}: post {p['id']} has inconsistent news/issue references")
            pool.add_imposed(
                Post(
                    post_id=p["id"],
                    origin=p["news_id"],
                    source_kind=SourceKind.IMPOSED,
                    stance=p["stance"],
                    tags=frozenset(p["tags"]),
                    text=p["text"],
                    issue_id=p["issue_id"],
                )
            )
    except FixtureCorrupt:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FixtureCorrupt(f"{source}: {exc}") from exc
    return pool


def build_fixture_pool() -> ContentPool:
    with resources.as_file(resources.files("feedsim") / "fixtures" / "content_150.json") as path:
        return load_pool(path)


def add_agent_post(
    pool: ContentPool,
    author: AgentPrompt,
    text: str,
    stance: float,
    tags: Iterable[str],
    day: int,
    trending_threshold: float = DEFAULT_TRENDING_THRESHOLD,
) -> str:
    """Publish an agent's own post to its friends' feeds, and to trending when well connected."""
    if isinstance(stance, bool) or not 1.0 <= stance <= 7.0:
        raise RangeError("stance", stance)
    post = Post(
        post_id=agent_post_id(day, author.agent_id),
        origin=author.agent_id,
        source_kind=SourceKind.FRIEND,
        stance=stance,
        tags=frozenset(tags),
        text=text,
        author_id=author.agent_id,
        day=day,
        trending=author.dynamic.social_connectivity >= trending_threshold,
    )
    if post.post_id in pool.posts:
        raise ValueError(f"duplicate post id {post.post_id}")
    pool.posts[post.post_id] = post
    pool._index_agent_post(post, author.friends)
    return post.post_id


@dataclass(frozen=True)
class FeedParams:
    friend: float = 0.4
    trending: float = 0.3
    imposed: float = 0.3
    oversample: int = 3
    min_posts: int = 5
    max_posts: int = 30

    def __post_init__(self):
        for name in ("friend", "trending", "imposed"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise RangeError(name, getattr(self, name))
        if abs(self.friend + self.trending + self.imposed - 1.0) > 1e-9:
            raise ValueError("source mix ratios must sum to 1")
        if self.oversample < 1:
            raise RangeError("oversample", self.oversample)
        if not 1 <= self.min_posts <= self.max_posts:
            raise ValueError("need 1 <= min_posts <= max_posts")

    def quotas(self, size: int) -> tuple[int, int, int]:
        n_friend = round_half_up(self.friend * size)
        n_trending = min(round_half_up(self.trending * size), size - n_friend)
        return n_friend, n_trending, size - n_friend - n_trending


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def fisher_yates_sample(
    items: Sequence[str],
    m: int,
    uniform: Callable[[int], float],
    eligible: Callable[[str], bool] = lambda _: True,
) -> list[str]:
    """Take up to ``m`` eligible items by a partial Fisher-Yates shuffle.

    Ineligible items are passed over without using up a slot.  Draw ``j``
    comes from ``uniform(j)``.
    """
    arr = list(items)
    out: list[str] = []
    j = 0
    while len(out) < m and j < len(arr):
        r = j + int(uniform(j) * (len(arr) - j))
        arr[j], arr[r] = arr[r], arr[j]
        if eligible(arr[j]):
            out.append(arr[j])
        j += 1
    return out


SOURCE_FRIEND, SOURCE_TRENDING, SOURCE_IMPOSED = 0, 1, 2


def daily_candidates(
    pool: ContentPool,
    agent: AgentPrompt,
    day: int,
    seed: int,
    params: FeedParams = FeedParams(),
    exclude: frozenset[str] | set[str] = frozenset(),
) -> list[Post]:
    """Candidate superset for one agent-day, before recommender selection.

    Friend and trending posts are those published the previous day; imposed
    posts are the fixture posts the agent has not consumed yet (``exclude``).
    Shortfalls in the friend or trending quota are filled from imposed posts.
    """
    return [post for post, _ in sourced_candidates(pool, agent, day, seed, params, exclude)]


def sourced_candidates(
    pool: ContentPool,
    agent: AgentPrompt,
    day: int,
    seed: int,
    params: FeedParams = FeedParams(),
    exclude: frozenset[str] | set[str] = frozenset(),
) -> list[tuple[Post, SourceKind]]:
    """Like :func:`daily_candidates`, pairing each post with the feed it came from."""
    size = params.oversample * posts_per_day(agent, params.min_posts, params.max_posts)
    n_friend, n_trending, n_imposed = params.quotas(size)
    stream = Stream.root(seed, "candidates").child(key_of(agent.agent_id), day)

    def draws(source: int) -> Callable[[int], float]:
        return lambda j: stream.uniform(source, j)

    friend_items = [
        pid
        for pid in pool.friend_feed.get(agent.agent_id, ())
        if pool.posts[pid].day == day - 1 and pid not in exclude
    ]
    trending_items = [
        pid
        for pid in pool.trending
        if pool.posts[pid].day == day - 1
        and pool.posts[pid].author_id != agent.agent_id
        and pid not in exclude
    ]
    imposed_items = [pid for pid in pool.imposed if pid not in exclude]
    if not (friend_items or trending_items or imposed_items):
        raise EmptyPool(f"no content available for {agent.agent_id} on day {day}")

    picked_friend = fisher_yates_sample(friend_items, n_friend, draws(SOURCE_FRIEND))
    taken = set(picked_friend)
    picked_trending = fisher_yates_sample(
        trending_items, n_trending, draws(SOURCE_TRENDING), lambda pid: pid not in taken
    )
    shortfall = (n_friend - len(picked_friend)) + (n_trending - len(picked_trending))
    picked_imposed = fisher_yates_sample(imposed_items, n_imposed + shortfall, draws(SOURCE_IMPOSED))
    return (
        [(pool.posts[pid], SourceKind.FRIEND) for pid in picked_friend]
        + [(pool.posts[pid], SourceKind.TRENDING) for pid in picked_trending]
        + [(pool.posts[pid], SourceKind.IMPOSED) for pid in picked_imposed]
    )
