import pytest
from hypothesis import given
from hypothesis import strategies as st

from feedsim.content import Post, SourceKind
from feedsim.decision import (
    DecisionContext, DecisionParams, DeterministicBackend, InteractionOutcome, ReactionKind,
    decide_deterministic, decision_stream, engage_probability, parse_completion, parse_self_report,
    reaction_for, render_outcome,
)
from feedsim.decision.prompts import decision_messages, post_message, profile_message, retry_message
from feedsim.errors import ParseError
from feedsim.recommender import ScenarioKind, affinity

from conftest import make_agent


def post(pid="P1", stance=4.0, tags=("art",), **kw):
    return Post(pid, "N", kw.pop("source_kind", SourceKind.IMPOSED), stance, frozenset(tags), "some text", **kw)


def test_engage_probability_formula():
    assert engage_probability(0.0, 4, 4.0) == 0.5
    assert engage_probability(1.0, 7, 7.0) == 0.95
    assert engage_probability(-1.0, 4, 4.0) == pytest.approx(0.85)
    assert engage_probability(0.0, 1, 1.0) == pytest.approx(0.35)
    assert engage_probability(0.0, 1, 1.0, DecisionParams(base=0.0)) == 0.05


@pytest.mark.parametrize("aff,cs,er,expected", [
    (0.6, 1, 4.0, ReactionKind.LOVE),
    (0.59, 4, 4.0, ReactionKind.CARE),
    (0.25, 3, 4.0, ReactionKind.LIKE),
    (0.2, 7, 7.0, ReactionKind.WOW),
    (-0.24, 4, 7.0, ReactionKind.WOW),
    (-0.25, 4, 4.0, ReactionKind.ANGRY),
    (-0.9, 4, 3.9, ReactionKind.SAD),
])
def test_reaction_thresholds(aff, cs, er, expected):
    assert reaction_for(aff, cs, er) is expected


def test_engagement_rate_matches_probability():
    agent = make_agent(pa=4.0, interests=["art"])
    target = post(stance=4.0, tags=("art", "law"))  # affinity 0.6
    p = engage_probability(affinity(agent, target), 4, 4.0)
    assert p == pytest.approx(0.71)
    n = 10_000
    engaged = sum(decide_deterministic(agent, target, decision_stream(7, agent.agent_id, day)).engaged for day in range(n))
    assert abs(engaged / n - p) < 0.02


def test_comment_rate_matches_half_probability():
    agent = make_agent(pa=4.0, interests=["art"])
    target = post(stance=4.0, tags=("art", "law"))
    n = 10_000
    outs = [decide_deterministic(agent, target, decision_stream(11, agent.agent_id, day)) for day in range(n)]
    commented = sum(o.comment_text is not None for o in outs)
    # Comment needs an engaged draw below p and a second draw below p/2.
    assert abs(commented / n - 0.71 * 0.355) < 0.02


def test_hostile_agent_reacts_angry():
    # Conservative, easily riled agent facing a liberal post on a topic it ignores.
    agent = make_agent(pa=7.0, interests=["guns"], er=6.0, n=6, e=6)
    target = post(stance=1.0, tags=("climate",))
    assert affinity(agent, target) == -1.0
    reactions = {decide_deterministic(agent, target, decision_stream(s, agent.agent_id, 1)).reaction for s in range(50)}
    assert reactions <= {ReactionKind.ANGRY, ReactionKind.NONE}
    assert ReactionKind.ANGRY in reactions


def test_backend_is_deterministic():
    agent = make_agent(pa=2.0, interests=["art", "law"], a=6, cs=5)
    items = [(agent, post(f"P{i}", 1 + i % 7, ("art",))) for i in range(40)]
    ctx = DecisionContext(3, ScenarioKind.BALANCED, 42)
    first = DeterministicBackend().decide_many(items, ctx)
    assert first == DeterministicBackend().decide_many(items, ctx)
    assert first != DeterministicBackend().decide_many(items, DecisionContext(3, ScenarioKind.BALANCED, 43))
    # The scenario is not an input to the decision.
    assert first == DeterministicBackend().decide_many(items, DecisionContext(3, ScenarioKind.PLURALITY, 42))


def test_share_and_friend_rules():
    author = "A9"
    agent = make_agent(pa=4.0, interests=["art"], a=5, sc=6.0, cs=5)
    trending = post(stance=4.0, tags=("art",), author_id=author, trending=True, source_kind=SourceKind.TRENDING)
    outs = [decide_deterministic(agent, trending, decision_stream(s, agent.agent_id, 1)) for s in range(40)]
    engaged = [o for o in outs if o.engaged]
    assert engaged and all(o.reaction is ReactionKind.LOVE and o.shared and o.friend_requested for o in engaged)
    friend = make_agent(pa=4.0, interests=["art"], a=5, sc=6.0, friends=[author])
    assert not any(decide_deterministic(friend, trending, decision_stream(s, "X1", 1)).friend_requested for s in range(40))
    shy = make_agent(pa=4.0, interests=["art"], a=4, sc=4.0)
    assert not any(decide_deterministic(shy, trending, decision_stream(s, "X1", 1)).shared for s in range(40))


@given(st.floats(1, 7), st.floats(1, 7), st.integers(0, 10**6))
def test_outcome_invariants(pa, stance, seed):
    agent = make_agent(pa=pa, interests=["art"], a=6, sc=6.0)
    out = decide_deterministic(agent, post(stance=stance, author_id="B", trending=True), decision_stream(seed, "X1", 1))
    if not out.engaged:
        assert out == InteractionOutcome()
    if out.comment_text is not None:
        assert out.read_comments
    if out.shared:
        assert out.reaction in (ReactionKind.LOVE, ReactionKind.CARE)
    if out.friend_requested:
        assert out.reaction.is_positive


def test_outcome_validation():
    with pytest.raises(ValueError):
        InteractionOutcome(comment_text="x", read_comments=True)
    with pytest.raises(ValueError):
        InteractionOutcome(ReactionKind.LIKE, comment_text="x")


@pytest.mark.parametrize("text,expected", [
    ("ANGRY. comment: outrageous.", InteractionOutcome(ReactionKind.ANGRY, True, "outrageous.")),
    ("like", InteractionOutcome(ReactionKind.LIKE)),
    ("nothing", InteractionOutcome()),
    ("Love + comment: 'So true, love it' + share", InteractionOutcome(ReactionKind.LOVE, True, "So true, love it", True)),
    ("I would pick Wow and read comments", InteractionOutcome(ReactionKind.WOW, True)),
    ("Care + friend request", InteractionOutcome(ReactionKind.CARE, friend_requested=True)),
    ("Final answer: Sad.", InteractionOutcome(ReactionKind.SAD)),
])
def test_parse_examples(text, expected):
    assert parse_completion(text) == expected


@pytest.mark.parametrize("text", ["", "   ", "Meh", "comment: 'love it'"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_completion(text)


comment_text = st.text(alphabet=st.characters(whitelist_categories=("L", "N", "Zs"), blacklist_characters="'\"\n"),
                       min_size=1, max_size=40).filter(lambda s: s.strip() == s and s)


@st.composite
def outcomes(draw):
    reaction = draw(st.sampled_from([k for k in ReactionKind if k is not ReactionKind.NONE]))
    comment = draw(st.none() | comment_text)
    return InteractionOutcome(
        reaction=reaction,
        read_comments=comment is not None or draw(st.booleans()),
        comment_text=comment,
        shared=draw(st.booleans()),
        friend_requested=draw(st.booleans()),
    )


@given(outcomes() | st.just(InteractionOutcome()))
def test_render_parse_round_trip(outcome):
    assert parse_completion(render_outcome(outcome)) == outcome


def test_self_report():
    t = parse_self_report("pa: 9, sc: 7, er: 0.5")
    assert (t.political_attitude, t.social_connectivity, t.emotive_reaction) == (7.0, 7.0, 1.0)
    assert parse_self_report("Sure. PA = 3.5; SC: 2, ER: 6").political_attitude == 3.5
    with pytest.raises(ParseError):
        parse_self_report("pa: high, sc: 7, er: 7")


def test_prompts_never_mention_scenario():
    agent = make_agent(pa=3.0, interests=["art", "law"])
    text = " ".join(m["content"] for m in decision_messages(agent, post())) + retry_message()
    for word in ("plurality", "balanced", "similarity", "recommender", "scenario"):
        assert word not in text.lower()


def test_prompt_contents():
    agent = make_agent(pa=3.5, interests=["law", "art"], e=6)
    system = profile_message(agent)
    assert "nickX1" in system and "art, law" in system and "extraversion: 6 (high)" in system
    assert "political attitude: 3.5" in system
    assert not any(line.startswith("#") for line in system.splitlines())
    assert "from someone in your network" in post_message(post(author_id="B"))
    assert "from someone" not in post_message(post())
