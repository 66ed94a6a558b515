from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from feedsim.agents import posts_per_day
from feedsim.content import (
    ContentPool, FeedParams, Issue, Post, SourceKind, add_agent_post, agent_post_id,
    build_fixture_pool, daily_candidates, fisher_yates_sample, load_pool, round_half_up,
    sourced_candidates,
)
from feedsim.errors import EmptyPool, FixtureCorrupt, RangeError

from conftest import make_agent


def test_fixture_counts(pool):
    assert len(pool) == 150
    assert len(pool.news) == 15
    assert len(pool.issues) == 3
    assert Counter(len(v) for v in pool.by_issue.values()) == Counter({50: 3})
    assert Counter(n.issue_id for n in pool.news.values()) == Counter({i: 5 for i in pool.issues})
    per_news = Counter(p.origin for p in pool.posts.values())
    assert set(per_news.values()) == {10}


def test_fixture_issue_names(pool):
    names = {i.name for i in pool.issues.values()}
    assert "Immigration Policies and Border Control" in names
    assert any("Climate" in n for n in names) and any("Healthcare" in n for n in names)


def test_fixture_referential_integrity(pool):
    for p in pool.posts.values():
        assert p.issue_id in pool.issues
        assert pool.news[p.origin].issue_id == p.issue_id
        assert p.source_kind is SourceKind.IMPOSED
        assert 1 <= p.stance <= 7 and p.tags


def test_fixture_stances_span_axis(pool):
    for issue, pids in pool.by_issue.items():
        stances = [pool.posts[p].stance for p in pids]
        assert min(stances) <= 2 and max(stances) >= 6, issue


def test_fixture_texts_unique(pool):
    texts = [p.text for p in pool.posts.values()]
    assert len(set(texts)) == len(texts)


def test_fixture_corrupt(tmp_path, pool):
    src = tmp_path / "c.json"
    src.write_text('{"issues": [], "news": [], "posts": [{"id": "x"}]}')
    with pytest.raises(FixtureCorrupt):
        load_pool(src)
    with pytest.raises(FixtureCorrupt):
        load_pool(tmp_path / "nope.json")
    src.write_text('{"issues": [{"id": "I", "name": "n"}], "news": [{"id": "N", "issue_id": "I", "headline": "h", "body": "b"}],'
                   ' "posts": [{"id": "P", "news_id": "N", "issue_id": "I", "stance": 9, "tags": ["t"], "text": "x"}]}')
    with pytest.raises(FixtureCorrupt):
        load_pool(src)


def test_post_invariants():
    with pytest.raises(RangeError):
        Post("p", "o", SourceKind.IMPOSED, 0.5, frozenset({"t"}), "x")
    with pytest.raises(ValueError):
        Post("p", "o", SourceKind.IMPOSED, 4, frozenset(), "x")
    with pytest.raises(ValueError):
        Post("p", "o", SourceKind.FRIEND, 4, frozenset({"t"}), "x")


def test_add_agent_post_trending_rule(pool):
    hub = make_agent("H", sc=7.0, friends=["F"])
    loner = make_agent("L", sc=2.0, friends=["F"])
    a = add_agent_post(pool, hub, "hi", 3.0, hub.interests, 1)
    b = add_agent_post(pool, loner, "hi", 3.0, loner.interests, 1)
    assert a in pool.trending and b not in pool.trending
    assert pool.friend_feed["F"] == [a, b]
    assert pool.posts[b].source_kind is SourceKind.FRIEND and pool.posts[b].author_id == "L"
    with pytest.raises(RangeError):
        add_agent_post(pool, loner, "x", 0.5, loner.interests, 2)


def test_agent_post_ids_sort_after_fixture_and_by_day(pool):
    ids = [agent_post_id(d, a) for d in (1, 2, 10) for a in ("A00001", "A00002")]
    assert ids == sorted(ids)
    assert max(pool.posts) < min(ids)


def test_quotas():
    f = FeedParams()
    assert f.quotas(30) == (12, 9, 9)
    assert f.quotas(15) == (6, 5, 4)
    assert sum(f.quotas(17)) == 17
    with pytest.raises(ValueError):
        FeedParams(0.5, 0.5, 0.5)


def test_round_half_up():
    assert [round_half_up(x) for x in (0.5, 1.5, 2.5, 17.5, 2.49)] == [1, 2, 3, 18, 2]


@given(st.lists(st.integers(0, 50), unique=True, max_size=40), st.integers(0, 45), st.integers(0, 2**32))
def test_fisher_yates_sample_properties(items, m, seed):
    from feedsim.rng import Stream

    s = Stream.root(seed, "candidates")
    out = fisher_yates_sample([str(i) for i in items], m, lambda j: s.uniform(j))
    assert len(out) == min(m, len(items))
    assert len(set(out)) == len(out)
    assert set(out) <= {str(i) for i in items}
    assert out == fisher_yates_sample([str(i) for i in items], m, lambda j: s.uniform(j))


def test_fisher_yates_skips_ineligible_without_using_slots():
    out = fisher_yates_sample(list("abcdef"), 3, lambda j: 0.0, eligible=lambda x: x not in "ab")
    assert out == ["c", "d", "e"]


def test_candidates_only_imposed_without_friends_or_trending(pool):
    agent = make_agent("A", T=0.2)
    sourced = sourced_candidates(pool, agent, 1, 42)
    assert len(sourced) == 3 * posts_per_day(agent)
    assert {s for _, s in sourced} == {SourceKind.IMPOSED}


def test_candidates_size_and_determinism(pool):
    agent = make_agent("A", T=0.2)  # 10 posts per day
    assert posts_per_day(agent) == 10
    a = daily_candidates(pool, agent, 3, 42)
    assert len(a) == 30
    assert [p.post_id for p in a] == [p.post_id for p in daily_candidates(pool, agent, 3, 42)]
    assert [p.post_id for p in a] != [p.post_id for p in daily_candidates(pool, agent, 4, 42)]


def test_candidates_mix_and_no_own_posts(pool):
    authors = [make_agent(f"F{i:02d}", sc=7.0, friends=["A"]) for i in range(20)]
    me = make_agent("A", T=0.2, sc=7.0, friends=[a.agent_id for a in authors])
    for a in authors:
        add_agent_post(pool, a, "x", 4.0, a.interests, 1)
    add_agent_post(pool, me, "mine", 4.0, me.interests, 1)
    sourced = sourced_candidates(pool, me, 2, 42)
    kinds = Counter(s for _, s in sourced)
    assert kinds == {SourceKind.FRIEND: 12, SourceKind.TRENDING: 8, SourceKind.IMPOSED: 10}
    ids = [p.post_id for p, _ in sourced]
    assert len(set(ids)) == len(ids)
    assert all(p.author_id != "A" for p, _ in sourced)
    # Day 3 no longer sees day-1 posts.
    assert {s for _, s in sourced_candidates(pool, me, 3, 42)} == {SourceKind.IMPOSED}


def test_candidates_exclude_consumed_and_empty_pool():
    pool = ContentPool([Issue("I", "i")])
    with pytest.raises(EmptyPool):
        daily_candidates(pool, make_agent("A"), 1, 1)
    full = build_fixture_pool()
    with pytest.raises(EmptyPool):
        daily_candidates(full, make_agent("A"), 1, 1, exclude=set(full.imposed))
    few = daily_candidates(full, make_agent("A"), 1, 1, exclude=set(full.imposed[3:]))
    assert len(few) == 3


def test_rebuild_indices_matches_incremental(pool):
    import random

    rng = random.Random(5)
    ids = [f"A{i}" for i in range(8)]
    agents = [
        make_agent(aid, sc=float(rng.randint(1, 7)),
                   friends=[b for b in ids if b != aid and rng.random() < 0.4])
        for aid in ids
    ]
    for day in range(1, 4):
        for a in agents:
            add_agent_post(pool, a, "t", float(rng.randint(1, 7)), a.interests, day)
    rebuilt = pool.rebuild_indices({a.agent_id: a.friends for a in agents})
    assert rebuilt.index_snapshot() == pool.index_snapshot()
    assert len(pool.trending) > 0 and len(pool.friend_feed) > 0
