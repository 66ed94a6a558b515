"""Chat-completions transport with record/replay cassettes."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
from pathlib import Path
from typing import Callable, Protocol

import httpx

from ..errors import CassetteMiss, RateLimited, TransportError

log = logging.getLogger(__name__)

API_KEY_ENV = "RECSYS_LLM_API_KEY"
DEFAULT_ENDPOINT = "https://api.openai.com/v1/chat/completions"
DEFAULT_MODEL = "gpt-4o-mini"

Messages = list[dict[str, str]]


class Chat(Protocol):
    model: str

    def complete(self, messages: Messages) -> str: ...


class ChatClient:
    """Blocking client for an OpenAI-style ``/chat/completions`` endpoint.

    Connection failures and 5xx responses are retried with exponential
    backoff; HTTP 429 is raised immediately as :class:`RateLimited`.
    """

    def __init__(
        self,
        endpoint: str = DEFAULT_ENDPOINT,
        model: str = DEFAULT_MODEL,
        api_key: str | None = None,
        timeout: float = 60.0,
        max_retries: int = 3,
        backoff: float = 1.0,
        temperature: float | None = None,
        transport: httpx.BaseTransport | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.endpoint = endpoint
        self.model = model
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV, "")
        self.max_retries = max_retries
        self.backoff = backoff
        self.temperature = temperature
        self._sleep = sleep
        self._http = httpx.Client(timeout=timeout, transport=transport)
        self.requests_sent = 0

    def close(self) -> None:
        self._http.close()

    def request_body(self, messages: Messages) -> dict:
        body: dict = {"model": self.model, "messages": messages}
        if self.temperature is not None:
            body["temperature"] = self.temperature
        return body

    def complete(self, messages: Messages) -> str:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        body = self.request_body(messages)
        last: Exception | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                self._sleep(self.backoff * 2 ** (attempt - 1))
            try:
                self.requests_sent += 1
                resp = self._http.post(self.endpoint, json=body, headers=headers)
            except httpx.HTTPError as exc:
                last = exc
                log.warning("chat request failed (attempt %d): %s", attempt + 1, exc)
                continue
            if resp.status_code == 429:
                retry_after = resp.headers.get("retry-after")
                raise RateLimited(float(retry_after) if retry_after else None)
            if resp.status_code >= 500:
                last = TransportError(f"HTTP {resp.status_code}: {resp.text[:200]}")
                log.warning("chat endpoint returned %d (attempt %d)", resp.status_code, attempt + 1)
                continue
            if resp.status_code >= 400:
                raise TransportError(f"HTTP {resp.status_code}: {resp.text[:200]}")
            try:
                return resp.json()["choices"][0]["message"]["content"] or ""
            except (ValueError, KeyError, IndexError, TypeError) as exc:
                raise TransportError(f"malformed completion payload: {resp.text[:200]}") from exc
        raise TransportError(f"giving up after {self.max_retries + 1} attempts: {last}")


def prompt_key(model: str, messages: Messages) -> str:
    canonical = json.dumps({"model": model, "messages": messages}, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class CassetteStore:
    """One JSON file per prompt, named by the prompt's content hash."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> str | None:
        path = self.path_for(key)
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))["completion"]

    def put(self, key: str, model: str, messages: Messages, completion: str) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        doc = {"key": key, "model": model, "messages": messages, "completion": completion}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, ensure_ascii=False, indent=1, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, self.path_for(key))

    def __len__(self) -> int:
        return len(list(self.directory.glob("*.json"))) if self.directory.exists() else 0


class CassetteChat:
    """Wraps a :class:`Chat` with a cassette.

    ``mode="replay"`` never touches the network and raises
    :class:`CassetteMiss` for unknown prompts; ``mode="record"`` serves hits
    from the store and records misses.
    """

    def __init__(self, store: CassetteStore, mode: str = "replay", inner: Chat | None = None, model: str = DEFAULT_MODEL):
        if mode not in ("replay", "record"):
            raise ValueError(f"unknown cassette mode {mode!r}")
        if mode == "record" and inner is None:
            raise ValueError("record mode needs an inner chat client")
        self.store = store
        self.mode = mode
        self.inner = inner
        self.model = inner.model if inner is not None else model
        self.hits = 0
        self.misses = 0

    def complete(self, messages: Messages) -> str:
        key = prompt_key(self.model, messages)
        stored = self.store.get(key)
        if stored is not None:
            self.hits += 1
            return stored
        self.misses += 1
        if self.mode == "replay":
            raise CassetteMiss(f"no stored completion for prompt {key} in {self.store.directory}")
        completion = self.inner.complete(messages)
        self.store.put(key, self.model, messages, completion)
        return completion
