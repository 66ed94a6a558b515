import json
import threading
import time

import httpx
import pytest

from feedsim.content import Post, SourceKind
from feedsim.decision import (
    CassetteChat, CassetteStore, ChatClient, DecisionContext, InteractionOutcome, LLMBackend,
    ReactionKind, SessionSummary, decide_llm, prompt_key,
)
from feedsim.errors import CassetteMiss, ParseError, RateLimited, TransportError
from feedsim.recommender import ScenarioKind

from conftest import make_agent

MESSAGES = [{"role": "user", "content": "hi"}]
CTX = DecisionContext(1, ScenarioKind.SIMILARITY, 42)


def reply(text):
    return httpx.Response(200, json={"choices": [{"message": {"role": "assistant", "content": text}}]})


def client(handler, **kw):
    return ChatClient("http://llm.test/v1/chat/completions", "m1", api_key="k", transport=httpx.MockTransport(handler),
                      sleep=lambda s: None, **kw)


def test_chat_success_sends_model_and_auth():
    seen = {}

    def handler(request):
        seen["auth"] = request.headers["authorization"]
        seen["body"] = json.loads(request.content)
        return reply("Love")

    assert client(handler).complete(MESSAGES) == "Love"
    assert seen["auth"] == "Bearer k"
    assert seen["body"] == {"model": "m1", "messages": MESSAGES}


def test_chat_retries_server_errors():
    calls = []

    def handler(request):
        calls.append(1)
        return httpx.Response(503, text="busy") if len(calls) < 3 else reply("Wow")

    c = client(handler, max_retries=3)
    assert c.complete(MESSAGES) == "Wow"
    assert c.requests_sent == 3


def test_chat_gives_up():
    c = client(lambda r: httpx.Response(500), max_retries=2)
    with pytest.raises(TransportError, match="3 attempts"):
        c.complete(MESSAGES)


def test_chat_connection_errors_retry():
    def handler(request):
        raise httpx.ConnectError("down", request=request)

    with pytest.raises(TransportError):
        client(handler, max_retries=1).complete(MESSAGES)


def test_chat_rate_limited():
    with pytest.raises(RateLimited) as info:
        client(lambda r: httpx.Response(429, headers={"retry-after": "2"})).complete(MESSAGES)
    assert info.value.retry_after == 2.0


def test_chat_client_errors_are_not_retried():
    calls = []

    def handler(request):
        calls.append(1)
        return httpx.Response(401, text="bad key")

    with pytest.raises(TransportError, match="401"):
        client(handler).complete(MESSAGES)
    assert len(calls) == 1


def test_chat_malformed_payload():
    with pytest.raises(TransportError, match="malformed"):
        client(lambda r: httpx.Response(200, json={"nope": 1})).complete(MESSAGES)


class Scripted:
    model = "m1"

    def __init__(self, answers):
        self.answers = list(answers)
        self.prompts = []

    def complete(self, messages):
        self.prompts.append(messages)
        return self.answers.pop(0)


def test_prompt_key_is_stable():
    assert prompt_key("m", MESSAGES) == prompt_key("m", [dict(MESSAGES[0])])
    assert prompt_key("m", MESSAGES) != prompt_key("n", MESSAGES)


def test_cassette_record_then_replay(tmp_path):
    store = CassetteStore(tmp_path / "c")
    inner = Scripted(["Like + share"])
    rec = CassetteChat(store, "record", inner=inner)
    assert rec.complete(MESSAGES) == "Like + share"
    assert rec.complete(MESSAGES) == "Like + share"
    assert (rec.misses, rec.hits, len(store)) == (1, 1, 1)
    doc = json.loads(store.path_for(prompt_key("m1", MESSAGES)).read_text())
    assert doc["messages"] == MESSAGES and doc["model"] == "m1"
    replay = CassetteChat(store, "replay", model="m1")
    assert replay.complete(MESSAGES) == "Like + share"
    with pytest.raises(CassetteMiss):
        replay.complete([{"role": "user", "content": "other"}])


def test_cassette_modes():
    with pytest.raises(ValueError):
        CassetteChat(CassetteStore("x"), "record")
    with pytest.raises(ValueError):
        CassetteChat(CassetteStore("x"), "live")


def post(pid="P1"):
    return Post(pid, "N", SourceKind.IMPOSED, 3.0, frozenset({"art"}), f"text of {pid}")


def test_decide_llm_retries_then_parses():
    chat = Scripted(["hmm, not sure", "Care + comment: 'fair'"])
    out = decide_llm(make_agent(), post(), chat, retries=2)
    assert out == InteractionOutcome(ReactionKind.CARE, True, "fair")
    retry = chat.prompts[1]
    assert retry[-2] == {"role": "assistant", "content": "hmm, not sure"}
    assert retry[-1]["role"] == "user"


def test_decide_llm_raises_after_retries():
    with pytest.raises(ParseError):
        decide_llm(make_agent(), post(), Scripted(["?", "??", "???"]), retries=2)


class Echo:
    """Answers by post id after a random-ish delay so completions finish out of order."""

    model = "m1"

    def __init__(self):
        self.lock = threading.Lock()
        self.active = self.peak = 0

    def complete(self, messages):
        with self.lock:
            self.active += 1
            self.peak = max(self.peak, self.active)
        n = int(messages[1]["content"].split("text of P")[1].split('"')[0])
        time.sleep(0.002 * (7 - n % 7))
        with self.lock:
            self.active -= 1
        return ["Like", "Love", "Wow", "Sad", "Angry", "nothing", "Care"][n % 7]


def test_llm_backend_preserves_order_and_bounds_concurrency():
    echo = Echo()
    backend = LLMBackend(echo, max_in_flight=3)
    items = [(make_agent(), post(f"P{i}")) for i in range(21)]
    outs = backend.decide_many(items, CTX)
    names = ["Like", "Love", "Wow", "Sad", "Angry", "None", "Care"]
    assert [o.reaction.value for o in outs] == [names[i % 7] for i in range(21)]
    assert 1 < echo.peak <= 3
    with pytest.raises(ValueError):
        LLMBackend(echo, max_in_flight=0)


def test_self_report_through_backend():
    chat = Scripted(["pa: 5, sc: 3, er: 8"])
    summary = SessionSummary(10, 6, 4, 2, 1, 0, 0)
    traits = LLMBackend(chat).report_trait_deltas(make_agent(), summary)
    assert (traits.political_attitude, traits.social_connectivity, traits.emotive_reaction) == (5.0, 3.0, 7.0)
    assert "you saw 10 posts" in chat.prompts[0][1]["content"]
