"""AgentPrompt profiles: validation, random populations and the 22-profile fixture."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import EmptyInterests, FixtureCorrupt, RangeError
from .rng import Stream

LIKERT_MIN, LIKERT_MAX = 1, 7

FIXTURE_KEYS = frozenset(
    {"id", "nickname", "bio", "interests", "o", "c", "e", "a", "n", "cs", "om", "pa", "sc", "er", "T"}
)

# Short descriptor keys -> attribute names.
STATIC_KEYS = {
    "o": "openness",
    "c": "conscientiousness",
    "e": "extraversion",
    "a": "agreeableness",
    "n": "neuroticism",
    "cs": "cognitive_style",
    "om": "open_mindedness",
}
DYNAMIC_KEYS = {
    "pa": "political_attitude",
    "sc": "social_connectivity",
    "er": "emotive_reaction",
}

TAG_VOCABULARY = (
    "activism", "art", "books", "border-security", "business", "climate",
    "conspiracy", "economy", "education", "energy", "environment", "family",
    "fashion", "fitness", "food", "freedom", "gaming", "guns", "healthcare", "history",
    "human-rights", "immigration", "law", "movies", "museums", "music",
    "nationalism", "nature", "painting", "photography", "politics", "religion",
    "science", "social-justice", "sports", "technology", "travel",
)

_NICK_HEADS = (
    "Art", "Book", "Eco", "Tech", "Truth", "Sun", "River", "Urban", "Quiet",
    "Bold", "Free", "Wild", "Data", "Food", "Jazz", "Trail", "Star", "Civic",
)
_NICK_TAILS = (
    "Lover", "Seeker", "Fan", "Walker", "Maker", "Voice", "Wanderer", "Reader",
    "Watcher", "Builder", "Dreamer", "Thinker",
)


@dataclass(frozen=True)
class StaticTraits:
    openness: int
    conscientiousness: int
    extraversion: int
    agreeableness: int
    neuroticism: int
    cognitive_style: int
    open_mindedness: int

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, int):
                if isinstance(value, float) and value.is_integer():
                    object.__setattr__(self, f.name, int(value))
                    value = int(value)
                else:
                    raise RangeError(f.name, value, f"{f.name}: {value!r} is not an integer Likert value")
            if not LIKERT_MIN <= value <= LIKERT_MAX:
                raise RangeError(f.name, value)


@dataclass(frozen=True)
class DynamicTraits:
    political_attitude: float
    social_connectivity: float
    emotive_reaction: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value):
                raise RangeError(f.name, value)
            if not LIKERT_MIN <= value <= LIKERT_MAX:
                raise RangeError(f.name, value)
            object.__setattr__(self, f.name, float(value))

    @classmethod
    def clamped(cls, pa: float, sc: float, er: float) -> "DynamicTraits":
        return cls(clamp(pa, 1.0, 7.0), clamp(sc, 1.0, 7.0), clamp(er, 1.0, 7.0))


@dataclass(frozen=True)
class AgentPrompt:
    agent_id: str
    nickname: str
    bio: str
    interests: frozenset[str]
    static: StaticTraits
    dynamic: DynamicTraits
    polarization: float = 0.0
    engagement: float = 0.0
    friends: frozenset[str] = field(default_factory=frozenset)
    activity: float = 1.0

    def __post_init__(self):
        if not self.interests:
            raise EmptyInterests(f"{self.agent_id}: interests must be non-empty")
        _check_unit("polarization_score", self.polarization, -1.0, 1.0)
        _check_unit("engagement_score", self.engagement, -1.0, 1.0)
        _check_unit("activity_factor", self.activity, 0.0, 1.0)
        if self.agent_id in self.friends:
            raise ValueError(f"{self.agent_id}: an agent cannot befriend itself")

    def vector(self) -> tuple[float, ...]:
        """The ten scaled dimensions ``(o, c, e, a, n, cs, om, pa, sc, er)``."""
        s, d = self.static, self.dynamic
        return (
            s.openness, s.conscientiousness, s.extraversion, s.agreeableness,
            s.neuroticism, s.cognitive_style, s.open_mindedness,
            d.political_attitude, d.social_connectivity, d.emotive_reaction,
        )

    def to_descriptor(self) -> dict[str, Any]:
        """Inverse of :func:`new_agent` in the fixture's key layout."""
        out: dict[str, Any] = {
            "id": self.agent_id,
            "nickname": self.nickname,
            "bio": self.bio,
            "interests": sorted(self.interests),
        }
        for short, name in STATIC_KEYS.items():
            out[short] = getattr(self.static, name)
        for short, name in DYNAMIC_KEYS.items():
            out[short] = getattr(self.dynamic, name)
        out["T"] = self.activity
        return out


def clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


def _check_unit(name: str, value: float, lo: float, hi: float) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value):
        raise RangeError(name, value)
    if not lo <= value <= hi:
        raise RangeError(name, value)


def new_agent(descriptor: Mapping[str, Any]) -> AgentPrompt:
    """Build a validated :class:`AgentPrompt` from a flat descriptor.

    Accepts the fixture layout (``id``, ``nickname``, ``bio``, ``interests``,
    the ten short trait keys and ``T``) plus optional ``P_s``, ``E_s`` and
    ``friends``.  Missing scores default to 0.0.
    """
    try:
        static = StaticTraits(**{name: descriptor[short] for short, name in STATIC_KEYS.items()})
        dynamic = DynamicTraits(**{name: descriptor[short] for short, name in DYNAMIC_KEYS.items()})
        interests = frozenset(str(t).strip().lower() for t in descriptor["interests"])
        return AgentPrompt(
            agent_id=str(descriptor["id"]),
            nickname=str(descriptor["nickname"]),
            bio=str(descriptor.get("bio", "")),
            interests=frozenset(t for t in interests if t),
            static=static,
            dynamic=dynamic,
            polarization=descriptor.get("P_s", 0.0),
            engagement=descriptor.get("E_s", 0.0),
            friends=frozenset(descriptor.get("friends", ())),
            activity=descriptor.get("T", 1.0),
        )
    except KeyError as exc:
        raise RangeError(str(exc.args[0]), None, f"missing descriptor key {exc.args[0]!r}") from None


def posts_per_day(agent: AgentPrompt, min_posts: int = 5, max_posts: int = 30) -> int:
    """Daily browsing capacity, rounding half up."""
    if not 1 <= min_posts <= max_posts:
        raise ValueError(f"need 1 <= min_posts <= max_posts, got {min_posts}, {max_posts}")
    return int(math.floor(min_posts + agent.activity * (max_posts - min_posts) + 0.5))


def agent_id_for(index: int, n: int) -> str:
    width = max(5, len(str(n - 1)))
    return f"A{index:0{width}d}"


def generate_population(n: int, seed: int) -> list[AgentPrompt]:
    """Uniformly random AgentPrompts; agent ``i`` depends only on ``(seed, i)``."""
    if n < 1:
        raise ValueError("population size must be at least 1")
    root = Stream.root(seed, "population")
    return [_random_agent(root.child(i), agent_id_for(i, n)) for i in range(n)]


def _random_agent(stream: Stream, agent_id: str) -> AgentPrompt:
    draw = iter(range(64))

    def likert() -> int:
        return stream.randint(1, 7, next(draw))

    static = StaticTraits(*(likert() for _ in range(7)))
    dynamic = DynamicTraits(*(float(likert()) for _ in range(3)))
    activity = 0.2 + 0.8 * stream.uniform(next(draw))

    count = stream.randint(2, 6, next(draw))
    vocab = list(TAG_VOCABULARY)
    for j in range(count):
        r = j + int(stream.uniform(next(draw)) * (len(vocab) - j))
        vocab[j], vocab[r] = vocab[r], vocab[j]
    interests = frozenset(vocab[:count])

    nickname = (
        _NICK_HEADS[stream.randint(0, len(_NICK_HEADS) - 1, next(draw))]
        + _NICK_TAILS[stream.randint(0, len(_NICK_TAILS) - 1, next(draw))]
        + agent_id[1:]
    )
    bio = "Posts about " + ", ".join(sorted(interests)) + "."
    return AgentPrompt(
        agent_id=agent_id,
        nickname=nickname,
        bio=bio,
        interests=interests,
        static=static,
        dynamic=dynamic,
        activity=activity,
    )


def load_agents(path: str | Path) -> list[AgentPrompt]:
    """Load and validate a fixture-format agent file."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FixtureCorrupt(f"{path}: {exc}") from exc
    return agents_from_descriptors(raw, source=str(path))


def agents_from_descriptors(raw: Any, source: str = "<memory>") -> list[AgentPrompt]:
    if not isinstance(raw, list):
        raise FixtureCorrupt(f"{source}: expected a JSON array of agent descriptors")
    agents = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict) or set(item) != FIXTURE_KEYS:
            got = sorted(item) if isinstance(item, dict) else type(item).__name__
            raise FixtureCorrupt(f"{source}[{i}]: keys {got} do not match {sorted(FIXTURE_KEYS)}")
        try:
            agents.append(new_agent(item))
        except (RangeError, EmptyInterests) as exc:
            raise FixtureCorrupt(f"{source}[{i}]: {exc}") from exc
    ids = [a.agent_id for a in agents]
    if len(set(ids)) != len(ids):
        raise FixtureCorrupt(f"{source}: duplicate agent ids")
    return agents


def load_fixture_profiles() -> list[AgentPrompt]:
    with resources.as_file(resources.files("feedsim") / "fixtures" / "agents_22.json") as path:
        return load_agents(path)


def dump_agents(agents: Iterable[AgentPrompt]) -> str:
    return json.dumps([a.to_descriptor() for a in agents], indent=2, ensure_ascii=False) + "\n"
