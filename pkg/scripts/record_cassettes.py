"""Record the replication prompts into a cassette directory without any network.

The stand-in chat model answers every decision prompt with what the rule
engine would decide for the same (agent, post) pair, phrased in a few
different ways so the parser sees some variety.  Replaying the cassettes
therefore reproduces the deterministic replication tallies exactly.

Usage:
    python scripts/record_cassettes.py [OUT_DIR]   (default: tests/data/cassettes)
"""

import json
import shutil
import sys
from pathlib import Path

from feedsim.agents import load_fixture_profiles
from feedsim.content import build_fixture_pool
from feedsim.decision import LLMBackend
from feedsim.decision.backends import decision_stream
from feedsim.decision.llm import DEFAULT_MODEL, CassetteChat, CassetteStore, prompt_key
from feedsim.decision.parsing import render_outcome
from feedsim.decision.prompts import decision_messages
from feedsim.decision.rules import decide_deterministic
from feedsim.engine import PROFILES, replicate_experiment

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "cassettes"
SEED = 42
PHRASINGS = ("{}", "My reaction: {}", "{}.", "Final answer: {}")


class ScriptedChat:
    model = DEFAULT_MODEL

    def __init__(self, seed: int = SEED):
        self.answers = {}
        agents = {a.agent_id: a for a in load_fixture_profiles()}
        posts = build_fixture_pool().imposed_posts()
        for pid in PROFILES:
            agent = agents[pid]
            rng = decision_stream(seed, pid, 0)
            for n, post in enumerate(posts):
                outcome = decide_deterministic(agent, post, rng)
                text = PHRASINGS[n % len(PHRASINGS)].format(render_outcome(outcome))
                self.answers[prompt_key(self.model, decision_messages(agent, post))] = text
        self.calls = 0

    def complete(self, messages):
        self.calls += 1
        return self.answers[prompt_key(self.model, messages)]


def record(out: Path) -> int:
    if out.exists():
        shutil.rmtree(out)
    chat = CassetteChat(CassetteStore(out), "record", inner=ScriptedChat())
    replicate_experiment(LLMBackend(chat, max_in_flight=1), seed=SEED)
    manifest = {"model": chat.model, "seed": SEED, "profiles": list(PROFILES), "cassettes": len(CassetteStore(out))}
    (out / "MANIFEST").write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
    return manifest["cassettes"]


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_OUT
    print(f"recorded {record(target)} cassettes in {target}")
