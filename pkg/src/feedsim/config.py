"""Run configuration: one JSON document, validated up front."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .content import FeedParams
from .dynamics import DynamicsParams
from .errors import ConfigError
from .recommender import AffinityWeights, ScenarioKind


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class PopulationConfig(_Strict):
    source: Literal["fixture", "generated", "file"] = "fixture"
    n: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    path: Optional[str] = None

    @model_validator(mode="after")
    def _check(self):
        if self.source == "generated" and self.n is None:
            raise ValueError("n: required for generated populations")
        if self.source == "file" and not self.path:
            raise ValueError("path: required for file populations")
        return self


class SourceMix(_Strict):
    friend: float = Field(default=0.4, ge=0.0, le=1.0)
    trending: float = Field(default=0.3, ge=0.0, le=1.0)
    imposed: float = Field(default=0.3, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _sums_to_one(self):
        if abs(self.friend + self.trending + self.imposed - 1.0) > 1e-9:
            raise ValueError("friend + trending + imposed must equal 1")
        return self


class LLMConfig(_Strict):
    endpoint: str = "https://api.openai.com/v1/chat/completions"
    model: str = "gpt-4o-mini"
    timeout: float = Field(default=60.0, gt=0)
    max_retries: int = Field(default=3, ge=0)
    max_in_flight: int = Field(default=4, ge=1)
    parse_retries: int = Field(default=2, ge=0)
    cassette_dir: Optional[str] = None
    record: bool = False


class RunConfig(_Strict):
    scenario: ScenarioKind
    days: int = Field(default=365, ge=1)
    seed: int = 42
    population: PopulationConfig = PopulationConfig()
    content_path: Optional[str] = None
    alpha: float = Field(default=0.9, ge=0.0, le=1.0)
    beta: float = Field(default=0.9, ge=0.0, le=1.0)
    drift_rate: float = Field(default=0.05, ge=0.0, le=1.0)
    min_posts: int = Field(default=5, ge=1)
    max_posts: int = Field(default=30, ge=1)
    oversample: int = Field(default=3, ge=1)
    source_mix: SourceMix = SourceMix()
    balance_ratio: float = Field(default=0.5, ge=0.0, le=1.0)
    w_s: float = Field(default=0.6, ge=0.0, le=1.0)
    trending_threshold: float = Field(default=6.0, ge=1.0, le=7.0)
    initial_polarization: float = Field(default=0.0, ge=-1.0, le=1.0)
    initial_engagement: float = Field(default=0.0, ge=-1.0, le=1.0)
    backend: Literal["deterministic", "llm", "replay"] = "deterministic"
    llm: LLMConfig = LLMConfig()
    engine: Literal["auto", "fast", "reference"] = "auto"
    record_transcript: bool = True
    out_dir: Optional[str] = None

    @field_validator("scenario", mode="before")
    @classmethod
    def _scenario(cls, value):
        if isinstance(value, str):
            return ScenarioKind.parse(value)
        return value

    @model_validator(mode="after")
    def _caps(self):
        if self.min_posts > self.max_posts:
            raise ValueError("min_posts must not exceed max_posts")
        return self

    @property
    def dynamics(self) -> DynamicsParams:
        return DynamicsParams(self.alpha, self.beta, self.drift_rate)

    @property
    def feed(self) -> FeedParams:
        m = self.source_mix
        return FeedParams(m.friend, m.trending, m.imposed, self.oversample, self.min_posts, self.max_posts)

    @property
    def weights(self) -> AffinityWeights:
        return AffinityWeights.from_stance_weight(self.w_s)

    def with_overrides(self, **changes: Any) -> "RunConfig":
        data = self.to_dict()
        data.update({k: v for k, v in changes.items() if v is not None})
        return config_from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json")

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _describe(err: ValidationError) -> str:
    parts = []
    for e in err.errors():
        loc = ".".join(str(p) for p in e["loc"]) or "config"
        if e["type"] == "missing":
            parts.append(f"{loc}: required")
        elif e["type"] == "extra_forbidden":
            parts.append(f"{loc}: unknown key")
        else:
            msg = e["msg"].removeprefix("Value error, ")
            parts.append(f"{loc}: {msg} (got {e.get('input')!r})")
    return "; ".join(parts)


def config_from_dict(data: Any) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config: expected a JSON object, got {type(data).__name__}")
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_describe(exc)) from None


def parse_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from exc
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: not valid UTF-8 JSON ({exc})") from exc
    return config_from_dict(data)
