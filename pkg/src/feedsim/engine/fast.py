"""Array engine for the deterministic backend, compiled with numba.

Mirrors :mod:`feedsim.engine.reference` operation for operation: the same
counter-based draws, the same float expressions in the same order, the same
tie-breaks.  Posts are numbered so that index order equals post-id order
(fixture posts first, then agent posts by day and author), which lets the
kernel compare integers where the reference compares strings.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ..agents import AgentPrompt
from ..config import RunConfig
from ..content import SourceKind, agent_post_id
from ..decision.outcome import REACTION_BY_CODE, InteractionOutcome
from ..decision.rules import DEFAULT_DECISION, template_comment
from ..rng import Stream, key_of
from .state import COUNT_COLUMNS, SimulationState
from .transcript import Interaction

MAX_TAGS = 64

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31, _S11 = np.uint64(30), np.uint64(27), np.uint64(31), np.uint64(11)
_UNIT = 1.0 / 9007199254740992.0

SOURCE_NAMES = (SourceKind.FRIEND.value, SourceKind.TRENDING.value, SourceKind.IMPOSED.value)

# Reaction codes (see decision.outcome.REACTION_CODES).
R_NONE, R_HAHA, R_LIKE, R_WOW, R_CARE, R_LOVE, R_SAD, R_ANGRY = 0, 1, 2, 3, 4, 5, 6, 7


class FastEngineUnavailable(Exception):
    pass


@njit(cache=True)
def _mix64(z):
    z = z + _GOLDEN
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True)
def _chain2(h, a, b):
    return _mix64(_mix64(h ^ a) ^ b)


@njit(cache=True)
def _unit(h):
    return np.float64(h >> _S11) * _UNIT


@njit(cache=True)
def _popcount(x):
    n = 0
    while x:
        x &= x - np.uint64(1)
        n += 1
    return n


@njit(cache=True)
def _clamp(x, lo, hi):
    if x < lo:
        return lo
    if x > hi:
        return hi
    return x


@njit(cache=True)
def _sample(items, n_items, m, stream, source, eligible_stamp, stamp, out, n_out):
    """Partial Fisher-Yates over ``items[:n_items]`` (copied); skips stamped items."""
    arr = items[:n_items].copy()
    taken = 0
    j = 0
    src = np.uint64(source)
    while taken < m and j < n_items:
        r = j + np.int64(_unit(_chain2(stream, src, np.uint64(j))) * (n_items - j))
        tmp = arr[j]
        arr[j] = arr[r]
        arr[r] = tmp
        if eligible_stamp[arr[j]] != stamp:
            out[n_out + taken] = arr[j]
            taken += 1
        j += 1
    return taken


@njit(cache=True)
def _less_desc(aff, idx, a, b):
    # Descending affinity, then ascending post index.
    if aff[a] != aff[b]:
        return aff[a] > aff[b]
    return idx[a] < idx[b]


@njit(cache=True)
def _less_asc(aff, idx, a, b):
    if aff[a] != aff[b]:
        return aff[a] < aff[b]
    return idx[a] < idx[b]


@njit(cache=True)
def _sort_positions(aff, idx, n, descending):
    order = np.arange(n)
    for i in range(1, n):
        cur = order[i]
        j = i - 1
        while j >= 0:
            if descending:
                before = _less_desc(aff, idx, cur, order[j])
            else:
                before = _less_asc(aff, idx, cur, order[j])
            if not before:
                break
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = cur
    return order


@njit(cache=True)
def _day_kernel(
    day, kind, k_top_ratio, alpha, beta, drift_rate, w_s, w_i,
    mix_friend, mix_trending, oversample, min_posts, max_posts,
    dp,  # decision params as float array
    cand_root, decide_root, post_root,
    a_key, a_mask, a_e, a_a, a_n, a_cs, a_om, a_T, a_pa, a_sc, a_er, a_P, a_E,
    consumed, n_fixture, adj, fr_start, fr_len, fr_pool,
    posted_yesterday, trend_list, n_trend,
    p_stance, p_mask, p_ntags, p_author, p_key, p_trending,
    # outputs
    o_active, o_F, o_P, o_E, o_pa, o_sc, o_er, o_post,
    o_n, o_post_idx, o_source, o_code, o_read, o_comment, o_shared, o_request,
):
    n_agents = a_key.shape[0]
    stamp_arr = np.zeros(p_stance.shape[0], dtype=np.int64)
    stamp = 0
    cand = np.empty(oversample * max_posts + 1, dtype=np.int64)
    cand_src = np.empty(oversample * max_posts + 1, dtype=np.int64)
    friend_items = np.empty(max(n_agents, 1), dtype=np.int64)
    trend_items = np.empty(max(n_trend, 1), dtype=np.int64)
    imposed_items = np.empty(max(n_fixture, 1), dtype=np.int64)
    aff = np.empty(oversample * max_posts + 1, dtype=np.float64)
    chosen = np.zeros(oversample * max_posts + 1, dtype=np.uint8)
    uday = np.uint64(day)

    (base, gain_aff, gain_e, gain_er, p_min, p_max, love_at, warm_at, neutral_band,
     care_cs, angry_er, comment_factor, share_a, friend_sc) = (
        dp[0], dp[1], dp[2], dp[3], dp[4], dp[5], dp[6], dp[7], dp[8], dp[9], dp[10], dp[11], dp[12], dp[13])

    for i in range(n_agents):
        akey = a_key[i]
        ppd = np.int64(np.floor(min_posts + a_T[i] * (max_posts - min_posts) + 0.5))

        u_post = _unit(_mix64(_mix64(_mix64(post_root ^ akey) ^ uday) ^ np.uint64(0)))
        o_post[i] = u_post < (a_e[i] / 7.0) * a_T[i]

        # Candidate sources, each in post-id order.
        n_friend_items = 0
        s = fr_start[i]
        for q in range(fr_len[i]):
            pid = posted_yesterday[fr_pool[s + q]]
            if pid >= 0:
                friend_items[n_friend_items] = pid
                n_friend_items += 1
        friend_items[:n_friend_items].sort()
        n_trend_items = 0
        for q in range(n_trend):
            pid = trend_list[q]
            if p_author[pid] != i:
                trend_items[n_trend_items] = pid
                n_trend_items += 1
        n_imposed_items = 0
        for q in range(n_fixture):
            if consumed[i, q] == 0:
                imposed_items[n_imposed_items] = q
                n_imposed_items += 1

        o_n[i] = 0
        if n_friend_items == 0 and n_trend_items == 0 and n_imposed_items == 0:
            o_active[i] = 0
            o_F[i] = np.nan
            o_P[i] = a_P[i]
            o_E[i] = a_E[i]
            o_pa[i] = a_pa[i]
            o_sc[i] = a_sc[i]
            o_er[i] = a_er[i]
            continue
        o_active[i] = 1

        size = oversample * ppd
        q_friend = np.int64(np.floor(mix_friend * size + 0.5))
        q_trend = min(np.int64(np.floor(mix_trending * size + 0.5)), size - q_friend)
        q_imposed = size - q_friend - q_trend
        stream = _mix64(_mix64(cand_root ^ akey) ^ uday)

        stamp += 1
        got_f = _sample(friend_items, n_friend_items, q_friend, stream, 0, stamp_arr, stamp, cand, 0)
        for q in range(got_f):
            cand_src[q] = 0
            stamp_arr[cand[q]] = stamp
        got_t = _sample(trend_items, n_trend_items, q_trend, stream, 1, stamp_arr, stamp, cand, got_f)
        for q in range(got_f, got_f + got_t):
            cand_src[q] = 1
        shortfall = (q_friend - got_f) + (q_trend - got_t)
        stamp += 1  # imposed draws have no eligibility filter
        got_i = _sample(imposed_items, n_imposed_items, q_imposed + shortfall, stream, 2, stamp_arr, stamp,
                        cand, got_f + got_t)
        n_cand = got_f + got_t + got_i
        for q in range(got_f + got_t, n_cand):
            cand_src[q] = 2

        # Recommender selection.
        pa = a_pa[i]
        for q in range(n_cand):
            pid = cand[q]
            shared = _popcount(p_mask[pid] & a_mask[i])
            overlap = shared / p_ntags[pid]
            value = w_s * (1.0 - 2.0 * abs(pa - p_stance[pid]) / 6.0) + w_i * (2.0 * overlap - 1.0)
            aff[q] = _clamp(value, -1.0, 1.0)
            chosen[q] = 0
        k = min(ppd, n_cand)
        desc = _sort_positions(aff, cand, n_cand, True)
        asc = _sort_positions(aff, cand, n_cand, False)
        if kind == 2:
            n_top = k
        elif kind == 0:
            n_top = 0
        else:
            n_top = np.int64(np.floor(k_top_ratio * k + 0.5))
        n_chosen = 0
        for q in range(min(n_top, n_cand)):
            chosen[desc[q]] = 1
            n_chosen += 1
        for q in range(n_cand):
            if n_chosen >= k:
                break
            if chosen[asc[q]] == 0:
                chosen[asc[q]] = 1
                n_chosen += 1

        # Decisions, impact and drift over the selection in descending order.
        dstream = _mix64(_mix64(decide_root ^ akey) ^ uday)
        total = 0.0
        stance_sum = 0.0
        n_sel = 0
        n_neg = 0
        n_pos = 0
        n_req = 0
        er = a_er[i]
        sc = a_sc[i]
        for q in range(n_cand):
            pos = desc[q]
            if chosen[pos] == 0:
                continue
            pid = cand[pos]
            a = aff[pos]
            total += a
            stance_sum += p_stance[pid]
            slot = n_sel
            n_sel += 1
            o_post_idx[i, slot] = pid
            o_source[i, slot] = cand_src[pos]
            o_code[i, slot] = R_NONE
            o_read[i, slot] = 0
            o_comment[i, slot] = 0
            o_shared[i, slot] = 0
            o_request[i, slot] = 0

            p = (
                base
                + gain_aff * abs(a)
                + gain_e * (a_e[i] - 4) / 3.0
                + gain_er * (er - 4.0) / 3.0
            )
            p = _clamp(p, p_min, p_max)
            h = _mix64(dstream ^ p_key[pid])
            if not _unit(_mix64(h ^ np.uint64(0))) < p:
                continue
            if a >= love_at:
                code = R_LOVE
            elif a >= warm_at:
                code = R_CARE if a_cs[i] >= care_cs else R_LIKE
            elif a > -neutral_band:
                code = R_WOW
            else:
                code = R_ANGRY if er >= angry_er else R_SAD
            o_code[i, slot] = code
            u_comment = _unit(_mix64(h ^ np.uint64(1)))
            o_comment[i, slot] = u_comment < comment_factor * p
            o_read[i, slot] = u_comment < p
            o_shared[i, slot] = (code == R_LOVE or code == R_CARE) and a_a[i] >= share_a
            positive = code != R_SAD and code != R_ANGRY
            if positive:
                n_pos += 1
            else:
                n_neg += 1
            author = p_author[pid]
            if (p_trending[pid] and positive and sc >= friend_sc and author >= 0 and author != i
                    and adj[i, author] == 0):
                o_request[i, slot] = 1
                n_req += 1
        o_n[i] = n_sel

        F = _clamp(total / n_sel, -1.0, 1.0)
        o_F[i] = F
        o_P[i] = alpha * a_P[i] + (1 - alpha) * F
        o_E[i] = beta * a_E[i] + (1 - beta) * a_T[i] * F

        mean_stance = stance_sum / n_sel
        neg_fraction = n_neg / n_sel
        pos_fraction = n_pos / n_sel
        o_pa[i] = _clamp(pa + drift_rate * (a_om[i] / 7.0) * (mean_stance - pa), 1.0, 7.0)
        o_er[i] = _clamp(er + drift_rate * (neg_fraction - pos_fraction) * (a_n[i] / 7.0), 1.0, 7.0)
        o_sc[i] = _clamp(sc + drift_rate * n_req, 1.0, 7.0)


@njit(cache=True)
def _add_friend(i, j, adj, fr_start, fr_len, fr_cap, fr_pool, used):
    if fr_len[i] == fr_cap[i]:
        new_cap = max(8, 2 * fr_cap[i])
        if used + new_cap > fr_pool.shape[0]:
            grown = np.empty(max(2 * fr_pool.shape[0], used + new_cap), dtype=fr_pool.dtype)
            grown[:used] = fr_pool[:used]
            fr_pool = grown
        fr_pool[used:used + fr_len[i]] = fr_pool[fr_start[i]:fr_start[i] + fr_len[i]]
        fr_start[i] = used
        fr_cap[i] = new_cap
        used += new_cap
    fr_pool[fr_start[i] + fr_len[i]] = j
    fr_len[i] += 1
    adj[i, j] = 1
    return fr_pool, used


@njit(cache=True)
def _apply_requests(o_n, o_post_idx, o_request, p_author, adj, fr_start, fr_len, fr_cap, fr_pool, used):
    for i in range(o_n.shape[0]):
        for q in range(o_n[i]):
            if o_request[i, q]:
                j = p_author[o_post_idx[i, q]]
                if adj[i, j] == 0:
                    fr_pool, used = _add_friend(i, j, adj, fr_start, fr_len, fr_cap, fr_pool, used)
                    fr_pool, used = _add_friend(j, i, adj, fr_start, fr_len, fr_cap, fr_pool, used)
    return fr_pool, used


@njit(cache=True)
def _mark_consumed(o_n, o_post_idx, o_source, consumed):
    for i in range(o_n.shape[0]):
        for q in range(o_n[i]):
            if o_source[i, q] == 2:
                consumed[i, o_post_idx[i, q]] = 1


@njit(cache=True)
def _tally(o_n, o_code, o_comment, o_shared, o_request, counts):
    for i in range(o_n.shape[0]):
        for q in range(o_n[i]):
            c = o_code[i, q]
            if c:
                counts[i, c - 1] += 1
                counts[i, 7] += o_comment[i, q]
                counts[i, 8] += o_shared[i, q]
                counts[i, 9] += o_request[i, q]


def _decision_vector(params=DEFAULT_DECISION) -> np.ndarray:
    return np.array([
        params.base, params.affinity_gain, params.extraversion_gain, params.emotive_gain,
        params.p_min, params.p_max, params.love_at, params.warm_at, params.neutral_band,
        params.care_min_cognitive_style, params.angry_min_emotive, params.comment_factor,
        params.share_min_agreeableness, params.friend_min_connectivity,
    ], dtype=np.float64)


class FastWorld:
    """Array image of a :class:`SimulationState` at day start."""

    def __init__(self, state: SimulationState, config: RunConfig):
        if any(p.source_kind is not SourceKind.IMPOSED for p in state.pool.posts.values()):
            raise FastEngineUnavailable("fast engine starts from a pool of fixture posts only")
        if state.day != 1:
            raise FastEngineUnavailable("fast engine starts on day 1")
        self.config = config
        self.state = state
        ids = state.order
        self.agent_ids = ids
        self.agents: list[AgentPrompt] = [state.agents[a] for a in ids]
        index = {a: i for i, a in enumerate(ids)}
        n = len(ids)
        fixture = list(state.pool.imposed)
        self.fixture_ids = fixture
        self.n_fixture = len(fixture)

        vocab = sorted(set().union(*(a.interests for a in self.agents),
                                   *(state.pool.posts[p].tags for p in fixture)))
        if len(vocab) > MAX_TAGS:
            raise FastEngineUnavailable(f"{len(vocab)} distinct tags exceed the {MAX_TAGS}-bit mask")
        bit = {t: np.uint64(1) << np.uint64(b) for b, t in enumerate(vocab)}

        def mask(tags) -> np.uint64:
            m = np.uint64(0)
            for t in tags:
                m |= bit[t]
            return m

        a = self.agents
        self.a_key = np.array([key_of(x) for x in ids], dtype=np.uint64)
        self.a_mask = np.array([mask(x.interests) for x in a], dtype=np.uint64)
        self.a_ntags = np.array([len(x.interests) for x in a], dtype=np.int64)
        self.a_e = np.array([x.static.extraversion for x in a], dtype=np.int64)
        self.a_a = np.array([x.static.agreeableness for x in a], dtype=np.int64)
        self.a_n = np.array([x.static.neuroticism for x in a], dtype=np.int64)
        self.a_cs = np.array([x.static.cognitive_style for x in a], dtype=np.int64)
        self.a_om = np.array([x.static.open_mindedness for x in a], dtype=np.int64)
        self.a_T = np.array([x.activity for x in a], dtype=np.float64)
        self.a_pa = np.array([x.dynamic.political_attitude for x in a], dtype=np.float64)
        self.a_sc = np.array([x.dynamic.social_connectivity for x in a], dtype=np.float64)
        self.a_er = np.array([x.dynamic.emotive_reaction for x in a], dtype=np.float64)
        self.a_P = np.array([x.polarization for x in a], dtype=np.float64)
        self.a_E = np.array([x.engagement for x in a], dtype=np.float64)

        self.consumed = np.zeros((n, max(self.n_fixture, 1)), dtype=np.uint8)
        fix_index = {pid: q for q, pid in enumerate(fixture)}
        for aid, seen in state.consumed.items():
            for pid in seen:
                self.consumed[index[aid], fix_index[pid]] = 1

        self.adj = np.zeros((n, n), dtype=np.uint8)
        self.fr_start = np.zeros(n, dtype=np.int64)
        self.fr_len = np.zeros(n, dtype=np.int64)
        self.fr_cap = np.zeros(n, dtype=np.int64)
        self.fr_pool = np.empty(max(16, 8 * n), dtype=np.int32)
        self.fr_used = 0
        for aid in ids:
            for f in sorted(state.agents[aid].friends, key=index.__getitem__):
                self.fr_pool, self.fr_used = _add_friend(
                    index[aid], index[f], self.adj, self.fr_start, self.fr_len, self.fr_cap,
                    self.fr_pool, self.fr_used)

        cap = self.n_fixture + 4 * n
        self.n_posts = self.n_fixture
        self.p_stance = np.empty(cap, dtype=np.float64)
        self.p_mask = np.empty(cap, dtype=np.uint64)
        self.p_ntags = np.empty(cap, dtype=np.int64)
        self.p_author = np.empty(cap, dtype=np.int64)
        self.p_key = np.empty(cap, dtype=np.uint64)
        self.p_trending = np.empty(cap, dtype=np.uint8)
        self.p_day = np.empty(cap, dtype=np.int64)
        for q, pid in enumerate(fixture):
            post = state.pool.posts[pid]
            self.p_stance[q] = post.stance
            self.p_mask[q] = mask(post.tags)
            self.p_ntags[q] = len(post.tags)
            self.p_author[q] = -1
            self.p_key[q] = post.key
            self.p_trending[q] = 0
            self.p_day[q] = -1
        self.posted_yesterday = np.full(n, -1, dtype=np.int64)
        self.trend_list = np.empty(max(n, 1), dtype=np.int64)
        self.n_trend = 0

        seed = config.seed
        self.cand_root = np.uint64(Stream.root(seed, "candidates").key)
        self.decide_root = np.uint64(Stream.root(seed, "decide").key)
        self.post_root = np.uint64(Stream.root(seed, "post").key)
        self.dp = _decision_vector()
        self.kind = {"Plurality": 0, "Balanced": 1, "Similarity": 2}[config.scenario.value]
        width = config.max_posts
        self.o_active = np.zeros(n, dtype=np.uint8)
        self.o_F = np.zeros(n)
        self.o_P = np.zeros(n)
        self.o_E = np.zeros(n)
        self.o_pa = np.zeros(n)
        self.o_sc = np.zeros(n)
        self.o_er = np.zeros(n)
        self.o_post = np.zeros(n, dtype=np.uint8)
        self.o_n = np.zeros(n, dtype=np.int64)
        self.o_post_idx = np.zeros((n, width), dtype=np.int64)
        self.o_source = np.zeros((n, width), dtype=np.int64)
        self.o_code = np.zeros((n, width), dtype=np.int64)
        self.o_read = np.zeros((n, width), dtype=np.uint8)
        self.o_comment = np.zeros((n, width), dtype=np.uint8)
        self.o_shared = np.zeros((n, width), dtype=np.uint8)
        self.o_request = np.zeros((n, width), dtype=np.uint8)
        self.day = 1

    def _grow_posts(self, extra: int) -> None:
        need = self.n_posts + extra
        if need <= self.p_stance.shape[0]:
            return
        cap = max(need, 2 * self.p_stance.shape[0])
        for name in ("p_stance", "p_mask", "p_ntags", "p_author", "p_key", "p_trending", "p_day"):
            old = getattr(self, name)
            new = np.empty(cap, dtype=old.dtype)
            new[: self.n_posts] = old[: self.n_posts]
            setattr(self, name, new)

    def step(self, counts: np.ndarray | None = None) -> None:
        c = self.config
        _day_kernel(
            self.day, self.kind, c.balance_ratio, c.alpha, c.beta, c.drift_rate, c.weights.stance,
            c.weights.interest, c.source_mix.friend, c.source_mix.trending, c.oversample, c.min_posts,
            c.max_posts, self.dp, self.cand_root, self.decide_root, self.post_root,
            self.a_key, self.a_mask, self.a_e, self.a_a, self.a_n, self.a_cs, self.a_om, self.a_T,
            self.a_pa, self.a_sc, self.a_er, self.a_P, self.a_E,
            self.consumed, self.n_fixture, self.adj, self.fr_start, self.fr_len, self.fr_pool,
            self.posted_yesterday, self.trend_list, self.n_trend,
            self.p_stance, self.p_mask, self.p_ntags, self.p_author, self.p_key, self.p_trending,
            self.o_active, self.o_F, self.o_P, self.o_E, self.o_pa, self.o_sc, self.o_er, self.o_post,
            self.o_n, self.o_post_idx, self.o_source, self.o_code, self.o_read, self.o_comment,
            self.o_shared, self.o_request,
        )
        if counts is not None:
            _tally(self.o_n, self.o_code, self.o_comment, self.o_shared, self.o_request, counts)

    def close(self) -> None:
        """Day close: scores and traits, consumption, friendships, then new posts."""
        self.a_P[:] = self.o_P
        self.a_E[:] = self.o_E
        self.a_pa[:] = self.o_pa
        self.a_sc[:] = self.o_sc
        self.a_er[:] = self.o_er
        _mark_consumed(self.o_n, self.o_post_idx, self.o_source, self.consumed)
        self.fr_pool, self.fr_used = _apply_requests(
            self.o_n, self.o_post_idx, self.o_request, self.p_author, self.adj,
            self.fr_start, self.fr_len, self.fr_cap, self.fr_pool, self.fr_used)

        authors = np.flatnonzero(self.o_post)
        self._grow_posts(len(authors))
        lo, hi = self.n_posts, self.n_posts + len(authors)
        self.p_stance[lo:hi] = self.a_pa[authors]
        self.p_mask[lo:hi] = self.a_mask[authors]
        self.p_ntags[lo:hi] = self.a_ntags[authors]
        self.p_author[lo:hi] = authors
        self.p_key[lo:hi] = [key_of(agent_post_id(self.day, self.agent_ids[i])) for i in authors]
        trending = self.a_sc[authors] >= self.config.trending_threshold
        self.p_trending[lo:hi] = trending
        self.p_day[lo:hi] = self.day
        self.posted_yesterday[:] = -1
        self.posted_yesterday[authors] = np.arange(lo, hi)
        self.trend_list = np.arange(lo, hi)[trending]
        self.n_trend = len(self.trend_list)
        self.n_posts = hi
        self.day += 1

    def post_id(self, q: int) -> str:
        if q < self.n_fixture:
            return self.fixture_ids[q]
        return agent_post_id(int(self.p_day[q]), self.agent_ids[int(self.p_author[q])])

    def interactions(self) -> list[Interaction]:
        """The day just stepped, as reference-engine records (before :meth:`close`)."""
        out: list[Interaction] = []
        for i in np.flatnonzero(self.o_n):
            agent = self.agents[i]
            rows = []
            for q in range(self.o_n[i]):
                pid = int(self.o_post_idx[i, q])
                post_id = self.post_id(pid)
                code = int(self.o_code[i, q])
                reaction = REACTION_BY_CODE[code]
                text = None
                if self.o_comment[i, q]:
                    text = _comment_text(agent, post_id, float(self.p_stance[pid]), reaction)
                outcome = InteractionOutcome(
                    reaction=reaction,
                    read_comments=bool(self.o_read[i, q]),
                    comment_text=text,
                    shared=bool(self.o_shared[i, q]),
                    friend_requested=bool(self.o_request[i, q]),
                )
                rows.append(Interaction(self.day, self.agent_ids[i], post_id, SOURCE_NAMES[self.o_source[i, q]],
                                        outcome, float(self.o_F[i]), float(self.o_P[i]), float(self.o_E[i])))
            rows.sort(key=lambda r: r.post_id)
            out.extend(rows)
        return out

    def friends_of(self, i: int) -> list[int]:
        s = self.fr_start[i]
        return sorted(int(x) for x in self.fr_pool[s:s + self.fr_len[i]])

    def edge_count(self) -> int:
        return int(self.fr_len.sum()) // 2


class _StubPost:
    __slots__ = ("post_id", "stance")

    def __init__(self, post_id: str, stance: float):
        self.post_id = post_id
        self.stance = stance


def _comment_text(agent: AgentPrompt, post_id: str, stance: float, reaction) -> str:
    return template_comment(agent, _StubPost(post_id, stance), reaction)


assert len(COUNT_COLUMNS) == 10
